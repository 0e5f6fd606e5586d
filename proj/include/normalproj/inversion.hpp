#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "normalproj/syzygy.hpp"

namespace normalproj {

struct InversionOptions {
    double rank_tol = kDefaultRankTol;
    double imag_tol = 1e-6;
    double verify_tol = 1e-6;
    ParamDomain domain;
    int max_degree_bumps = 2;
    /// Corank above the class ED degree plus this slack is reported as a
    /// non-finite fiber.
    int fiber_slack = 0;
    /// (u, v) distance under which two candidates are merged.
    double dedup_tol = 1e-6;

    void validate() const;
};

struct ProjectionResult {
    double u = 0.0;
    double v = 0.0;
    Eigen::Vector3d point = Eigen::Vector3d::Zero();
    double distance = 0.0;
    double residual = 0.0;
    std::complex<double> eigenvalue;
    /// Number of eigenpairs merged into this result.
    int multiplicity = 1;
    /// The u-ratio from different monomial pairs disagreed beyond 1e-4.
    bool low_confidence = false;
};

/// Affine point p -> homogeneous (1, p1, p2, p3).
Eigen::Vector4d lift(const Eigen::Vector3d& p);

/// sum_i p_i M_i.
Eigen::MatrixXd evaluate_at(const MatrixRep& m, const Eigen::Vector4d& p);
int corank_at(const MatrixRep& m, const Eigen::Vector4d& p, double rank_tol = kDefaultRankTol);
/// Rows span the left null space of M(p) (left singular vectors of the
/// smallest singular values); columns are indexed by m.row_basis. Empty
/// (0 rows) when M(p) has full row rank.
Eigen::MatrixXd cokernel_basis(const MatrixRep& m, const Eigen::Vector4d& p, double rank_tol = kDefaultRankTol);

enum class ShiftVar { U, V };

/// Monomial obtained by multiplying with the affine variable, keeping the
/// degree (one homogenizing exponent is traded); nullopt if impossible.
std::optional<Monomial> shift_monomial(SpaceKind kind, const Monomial& m, ShiftVar var);

struct MultiplicationPencil {
    Eigen::MatrixXd M1;
    Eigen::MatrixXd M2;
    std::vector<Monomial> b_prime;
    /// Indices into the row basis of B' and of var * B'.
    std::vector<std::size_t> rows;
    std::vector<std::size_t> shifted_rows;
};

/// Picks k rows B' of K^T with var * B' inside the basis by column-pivoted QR;
/// throws NeedsDegreeBump when no full-rank choice exists.
MultiplicationPencil select_multiplication_pencil(const Eigen::MatrixXd& K, SpaceKind kind,
                                                  const std::vector<Monomial>& row_basis, ShiftVar var = ShiftVar::V);
/// Pencil for the linear form a*u + b*v: rows of B' need every shift with a
/// nonzero weight inside the basis.
MultiplicationPencil select_linear_form_pencil(const Eigen::MatrixXd& K, SpaceKind kind, const std::vector<Monomial>& row_basis,
                                               double a, double b);

struct EigenPair {
    /// Generalized eigenvalue of M2 x = value * M1 x (infinite ones are dropped).
    std::complex<double> value;
    /// M1 x, normalized: coordinates in the B' frame.
    Eigen::VectorXcd vector;
    /// x itself, scaled consistently with `vector`.
    Eigen::VectorXcd coeffs;
};

std::vector<EigenPair> pencil_eigenvalues(const Eigen::MatrixXd& M1, const Eigen::MatrixXd& M2);

/// Closed form of the Euclidean distance degree of a general surface
/// of this class.
int class_ed_degree(SpaceKind kind, const MultiDegree& degree_d, bool rational);

std::vector<ProjectionResult> project(const MatrixRep& m, const SurfaceParam& s, const Eigen::Vector3d& p,
                                      const InversionOptions& opts = {});
/// Same with a homogeneous query point (p0 != 0).
std::vector<ProjectionResult> project(const MatrixRep& m, const SurfaceParam& s, const Eigen::Vector4d& p,
                                      const InversionOptions& opts = {});

/// Minimum corank of M(p) at `trials` points uniform in [-1, 1]^3.
int eddegree(const MatrixRep& m, int trials, std::uint64_t seed, double rank_tol = kDefaultRankTol);
/// Builds the matrix at the lowest admissible degree first.
int eddegree(const SurfaceParam& s, int trials, std::uint64_t seed, double rank_tol = kDefaultRankTol);

}  // namespace normalproj
