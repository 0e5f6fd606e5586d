#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Core>

#include "normalproj/polynomial.hpp"

namespace normalproj {

/// Parameter box; `unbounded` accepts every real (u, v).
struct ParamDomain {
    double u_min = 0.0;
    double u_max = 1.0;
    double v_min = 0.0;
    double v_max = 1.0;
    bool unbounded = false;

    static ParamDomain everywhere() { return {0.0, 0.0, 0.0, 0.0, true}; }
    bool contains_u(double u, double tol = 1e-9) const;
    bool contains_v(double v, double tol = 1e-9) const;
};

/// Homogeneous parameterization (F0:F1:F2:F3) of a triangular (over P^2) or
/// tensor-product (over P^1 x P^1) surface. Each F_i has X-degree
/// `degree_d` and t-degree zero.
struct SurfaceParam {
    SpaceKind kind = SpaceKind::Triangular;
    MultiDegree degree_d;
    std::array<MultiHomogPoly, 4> F;
    /// F0 is the pure power w^d (resp. ubar^d1 vbar^d2): a polynomial patch.
    bool is_non_rational = false;

    /// Degree of the F_i including the trailing zero t-component.
    MultiDegree full_degree() const;
};

/// w^d for triangular, ubar^d1 vbar^d2 for tensor-product.
Monomial homogenizing_monomial(SpaceKind kind, const MultiDegree& degree_d);

/// Throws DomainError when the surface violates its invariants.
void validate(const SurfaceParam& s);

SurfaceParam make_surface(SpaceKind kind, const MultiDegree& degree_d, std::array<MultiHomogPoly, 4> F,
                          bool is_non_rational);

/// Surface with coefficients drawn uniformly from [-1, 1].
SurfaceParam random_surface(SpaceKind kind, const MultiDegree& degree_d, bool rational, std::uint64_t seed);

/// Bilinear patch (ubar vbar : u vbar : ubar v : u v), affinely (u, v, uv).
SurfaceParam segre_surface();
/// Unit sphere (2u, 2v, u^2 + v^2 - 1) / (1 + u^2 + v^2).
SurfaceParam unit_sphere();

/// Signed (and, for tensor-product, vbar-reduced) Jacobian minors.
struct NormalField {
    std::array<MultiHomogPoly, 4> deltas;
};

NormalField reduced_minors(const SurfaceParam& s);

/// Position and first partials of the affine map phi(u, v).
struct AffineJet {
    Eigen::Vector3d point;
    Eigen::Vector3d du;
    Eigen::Vector3d dv;
};

Eigen::Vector3d eval_affine(const SurfaceParam& s, double u, double v);
AffineJet affine_jet(const SurfaceParam& s, double u, double v);

/// max over {u, v} of |r . dphi| / ((1 + |r|)(1 + |dphi|)) with r = p - phi.
/// Zero exactly at critical points of the squared distance to p.
double orthogonality_residual(const SurfaceParam& s, const Eigen::Vector3d& p, double u, double v);

}  // namespace normalproj
