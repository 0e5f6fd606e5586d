#pragma once

#include <string>

#include <Eigen/Core>

#include "normalproj/congruence.hpp"

namespace normalproj {

inline constexpr double kDefaultRankTol = 1e-8;

struct MatrixRepMeta {
    std::string surface_hash;
    MultiDegree delta_degree;
    double rank_tolerance_used = kDefaultRankTol;
};

/// Elimination matrix M = x0 M0 + x1 M1 + x2 M2 + x3 M3. Column j of the
/// stacked [M0; M1; M2; M3] is a syzygy (g0, g1, g2, g3) of the congruence
/// in degree `mu_nu`, with rows indexed by `row_basis`.
struct MatrixRep {
    SpaceKind kind = SpaceKind::Triangular;
    MultiDegree mu_nu;
    std::vector<Monomial> row_basis;
    std::array<Eigen::MatrixXd, 4> M;
    MatrixRepMeta meta;
    /// Set when built below the class's lowest admissible degree.
    bool below_admissible = false;

    Eigen::Index rows() const noexcept { return M[0].rows(); }
    Eigen::Index cols() const noexcept { return M[0].cols(); }
};

/// Linear map (g0..g3) -> sum g_i Psi_i restricted to one degree slice.
struct SyzygySystem {
    SpaceKind kind = SpaceKind::Triangular;
    MultiDegree degree;
    MultiDegree target_degree;
    Eigen::MatrixXd S;
};

/// Lowest admissible build degree (mu0, 0). For tensor-product surfaces
/// `mirrored` selects the second of the two symmetric choices.
MultiDegree admissible_degree(const SurfaceParam& s, bool mirrored = false);

SyzygySystem assemble_system(const CongruenceMap& c, const MultiDegree& deg);

MatrixRep build_matrix_rep(const CongruenceMap& c, const MultiDegree& deg, double rank_tol = kDefaultRankTol);

/// ||sum_i g_i Psi_i|| / (||g|| ||Psi||) for column `col`, computed by direct
/// polynomial multiplication.
double syzygy_residual(const MatrixRep& m, const CongruenceMap& c, Eigen::Index col);

}  // namespace normalproj
