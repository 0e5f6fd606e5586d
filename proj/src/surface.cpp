#include "normalproj/surface.hpp"

#include <cmath>
#include <random>

#include "normalproj/errors.hpp"

namespace normalproj {

bool ParamDomain::contains_u(double u, double tol) const {
    return unbounded || (u >= u_min - tol && u <= u_max + tol);
}

bool ParamDomain::contains_v(double v, double tol) const {
    return unbounded || (v >= v_min - tol && v <= v_max + tol);
}

namespace {

constexpr double kPruneTol = 1e-12;
constexpr double kPoleTol = 1e-13;

std::array<double, kMaxVars> affine_point(SpaceKind kind, double u, double v) {
    if (kind == SpaceKind::Triangular) return {1.0, u, v, 1.0, 1.0, 0.0};
    return {1.0, u, 1.0, v, 1.0, 1.0};
}

MultiHomogPoly det3(const std::array<std::array<const MultiHomogPoly*, 3>, 3>& m) {
    auto minor2 = [&](std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2) {
        return multiply(*m[r1][c1], *m[r2][c2]) - multiply(*m[r1][c2], *m[r2][c1]);
    };
    MultiHomogPoly out = multiply(*m[0][0], minor2(1, 1, 2, 2));
    out -= multiply(*m[0][1], minor2(1, 0, 2, 2));
    out += multiply(*m[0][2], minor2(1, 0, 2, 1));
    return out;
}

}  // namespace

MultiDegree SurfaceParam::full_degree() const {
    std::vector<int> parts = degree_d.to_vector();
    parts.push_back(0);
    return MultiDegree(parts);
}

Monomial homogenizing_monomial(SpaceKind kind, const MultiDegree& degree_d) {
    Monomial m;
    if (kind == SpaceKind::Triangular) {
        m.exps[0] = degree_d[0];
    } else {
        m.exps[0] = degree_d[0];
        m.exps[2] = degree_d[1];
    }
    return m;
}

void validate(const SurfaceParam& s) {
    if (s.degree_d.size() != num_x_blocks(s.kind)) throw DomainError("surface degree has wrong arity");
    if (s.kind == SpaceKind::Triangular) {
        if (s.degree_d[0] < 2) throw DomainError("triangular surfaces require degree d >= 2");
    } else if (s.degree_d[0] < 1 || s.degree_d[1] < 1) {
        throw DomainError("tensor-product surfaces require bidegree >= (1,1)");
    }
    const MultiDegree full = s.full_degree();
    for (const auto& f : s.F) {
        if (f.kind() != s.kind) throw DomainError("surface polynomial has the wrong space kind");
        if (!(f.degree() == full)) {
            throw DomainError("surface polynomial degree " + f.degree().str() + " differs from " + full.str());
        }
    }
    if (s.is_non_rational) {
        const auto expected = MultiHomogPoly::monomial(s.kind, homogenizing_monomial(s.kind, s.degree_d));
        if (!(s.F[0] == expected)) throw DomainError("non-rational surface requires F0 to be the pure power monomial");
    }
}

SurfaceParam make_surface(SpaceKind kind, const MultiDegree& degree_d, std::array<MultiHomogPoly, 4> F,
                          bool is_non_rational) {
    SurfaceParam s{kind, degree_d, std::move(F), is_non_rational};
    validate(s);
    return s;
}

SurfaceParam random_surface(SpaceKind kind, const MultiDegree& degree_d, bool rational, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    SurfaceParam s;
    s.kind = kind;
    s.degree_d = degree_d;
    s.is_non_rational = !rational;
    const MultiDegree full = s.full_degree();
    for (std::size_t i = 0; i < 4; ++i) {
        MultiHomogPoly f(kind, full);
        for (double& c : f.coeffs()) c = coeff(rng);
        s.F[i] = std::move(f);
    }
    if (!rational) s.F[0] = MultiHomogPoly::monomial(kind, homogenizing_monomial(kind, degree_d));
    validate(s);
    return s;
}

SurfaceParam segre_surface() {
    const SpaceKind kind = SpaceKind::TensorProduct;
    auto mono = [&](int ub, int u, int vb, int v) {
        Monomial m;
        m.exps = {ub, u, vb, v, 0, 0};
        return MultiHomogPoly::monomial(kind, m);
    };
    return make_surface(kind, {1, 1}, {mono(1, 0, 1, 0), mono(0, 1, 1, 0), mono(1, 0, 0, 1), mono(0, 1, 0, 1)},
                        true);
}

SurfaceParam unit_sphere() {
    const SpaceKind kind = SpaceKind::Triangular;
    auto mono = [&](int w, int u, int v) {
        Monomial m;
        m.exps = {w, u, v, 0, 0, 0};
        return m;
    };
    const MultiDegree deg{2, 0};
    MultiHomogPoly f0(kind, deg), f1(kind, deg), f2(kind, deg), f3(kind, deg);
    f0.set_coeff(mono(2, 0, 0), 1.0);
    f0.set_coeff(mono(0, 2, 0), 1.0);
    f0.set_coeff(mono(0, 0, 2), 1.0);
    f1.set_coeff(mono(1, 1, 0), 2.0);
    f2.set_coeff(mono(1, 0, 1), 2.0);
    f3.set_coeff(mono(2, 0, 0), -1.0);
    f3.set_coeff(mono(0, 2, 0), 1.0);
    f3.set_coeff(mono(0, 0, 2), 1.0);
    return make_surface(kind, {2}, {f0, f1, f2, f3}, false);
}

// ---------------------------------------------------------------------------

NormalField reduced_minors(const SurfaceParam& s) {
    validate(s);
    const SpaceKind kind = s.kind;
    // Rows of the 3x4 Jacobian block: (d_u, d_v, d_w) or (d_u, d_ubar, d_v).
    const std::array<Var, 3> row_vars = kind == SpaceKind::Triangular ? std::array<Var, 3>{Var::U, Var::V, Var::W}
                                                                       : std::array<Var, 3>{Var::U, Var::UBar, Var::V};
    std::array<std::array<MultiHomogPoly, 4>, 3> jac;
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 4; ++c) jac[r][c] = partial_derivative(s.F[c], row_vars[r]).poly;
    }

    NormalField field;
    for (std::size_t i = 0; i < 4; ++i) {
        std::array<std::array<const MultiHomogPoly*, 3>, 3> sub{};
        for (std::size_t r = 0; r < 3; ++r) {
            std::size_t k = 0;
            for (std::size_t c = 0; c < 4; ++c) {
                if (c != i) sub[r][k++] = &jac[r][c];
            }
        }
        // Cofactor of x_i in the 4x4 determinant whose last row is (x0..x3).
        MultiHomogPoly delta = det3(sub);
        if ((3 + i) % 2 == 1) delta *= -1.0;
        field.deltas[i] = std::move(delta);
    }

    // Rounding residue would otherwise hide exact zeros (and the vbar factor).
    double scale = 0.0;
    for (const auto& d : field.deltas) scale = std::max(scale, d.max_abs());
    for (auto& d : field.deltas) {
        for (double& c : d.coeffs()) {
            if (std::abs(c) < kPruneTol * scale) c = 0.0;
        }
    }

    if (kind == SpaceKind::TensorProduct) {
        Monomial vbar;
        vbar.exps[2] = 1;
        for (auto& d : field.deltas) {
            try {
                d = exact_divide_by_monomial(d, vbar);
            } catch (const DivisibilityError& e) {
                throw DivisibilityError(std::string("tangent determinant is not divisible by vbar: ") + e.what());
            }
        }
    }
    return field;
}

Eigen::Vector3d eval_affine(const SurfaceParam& s, double u, double v) { return affine_jet(s, u, v).point; }

AffineJet affine_jet(const SurfaceParam& s, double u, double v) {
    const auto pt = affine_point(s.kind, u, v);
    const std::span<const double> point(pt.data(), num_vars(s.kind));
    std::array<double, 4> f{}, fu{}, fv{};
    for (std::size_t i = 0; i < 4; ++i) {
        f[i] = evaluate(s.F[i], point);
        fu[i] = evaluate(partial_derivative(s.F[i], Var::U).poly, point);
        fv[i] = evaluate(partial_derivative(s.F[i], Var::V).poly, point);
    }
    const double scale = std::max(s.F[0].max_abs(), 1.0);
    if (!std::isfinite(f[0]) || std::abs(f[0]) <= kPoleTol * scale) {
        throw PoleError("denominator vanishes at (u, v) = (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
    AffineJet jet;
    const double f0sq = f[0] * f[0];
    for (int k = 0; k < 3; ++k) {
        const auto i = static_cast<std::size_t>(k + 1);
        jet.point[k] = f[i] / f[0];
        jet.du[k] = (fu[i] * f[0] - f[i] * fu[0]) / f0sq;
        jet.dv[k] = (fv[i] * f[0] - f[i] * fv[0]) / f0sq;
    }
    return jet;
}

double orthogonality_residual(const SurfaceParam& s, const Eigen::Vector3d& p, double u, double v) {
    const AffineJet jet = affine_jet(s, u, v);
    const Eigen::Vector3d r = p - jet.point;
    const double rn = r.norm();
    const double ru = std::abs(r.dot(jet.du)) / ((1.0 + rn) * (1.0 + jet.du.norm()));
    const double rv = std::abs(r.dot(jet.dv)) / ((1.0 + rn) * (1.0 + jet.dv.norm()));
    return std::max(ru, rv);
}

}  // namespace normalproj
