#include "normalproj/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/LU>

#include "normalproj/errors.hpp"
#include "normalproj/parallel.hpp"

namespace normalproj {

namespace {

// Value and partials up to order two of a scalar function of (u, v).
struct Jet2 {
    double f = 0.0, fu = 0.0, fv = 0.0, fuu = 0.0, fuv = 0.0, fvv = 0.0;
};

double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

Jet2 jet(const std::vector<AffineTerm>& terms, double u, double v) {
    Jet2 j;
    for (const auto& t : terms) {
        const int a = t.exps.u;
        const int b = t.exps.v;
        const double ua = ipow(u, a), vb = ipow(v, b);
        const double ua1 = a >= 1 ? a * ipow(u, a - 1) : 0.0;
        const double vb1 = b >= 1 ? b * ipow(v, b - 1) : 0.0;
        const double ua2 = a >= 2 ? a * (a - 1) * ipow(u, a - 2) : 0.0;
        const double vb2 = b >= 2 ? b * (b - 1) * ipow(v, b - 2) : 0.0;
        j.f += t.coeff * ua * vb;
        j.fu += t.coeff * ua1 * vb;
        j.fv += t.coeff * ua * vb1;
        j.fuu += t.coeff * ua2 * vb;
        j.fuv += t.coeff * ua1 * vb1;
        j.fvv += t.coeff * ua * vb2;
    }
    return j;
}

struct SurfaceJet {
    Eigen::Vector3d x, xu, xv, xuu, xuv, xvv;
};

class Evaluator {
public:
    explicit Evaluator(const SurfaceParam& s) {
        for (std::size_t i = 0; i < 4; ++i) terms_[i] = dehomogenize(s.F[i]);
        scale_ = 1.0;
        for (const auto& t : terms_[0]) scale_ = std::max(scale_, std::abs(t.coeff));
    }

    std::optional<SurfaceJet> operator()(double u, double v) const {
        const Jet2 f = jet(terms_[0], u, v);
        if (!(std::abs(f.f) > 1e-13 * scale_)) return std::nullopt;
        // g = 1 / f0 and its partials.
        const double g = 1.0 / f.f;
        const double gu = -f.fu * g * g;
        const double gv = -f.fv * g * g;
        const double g3 = g * g * g;
        const double guu = (2.0 * f.fu * f.fu - f.f * f.fuu) * g3;
        const double guv = (2.0 * f.fu * f.fv - f.f * f.fuv) * g3;
        const double gvv = (2.0 * f.fv * f.fv - f.f * f.fvv) * g3;
        SurfaceJet s;
        for (int i = 0; i < 3; ++i) {
            const Jet2 n = jet(terms_[static_cast<std::size_t>(i) + 1], u, v);
            s.x(i) = n.f * g;
            s.xu(i) = n.fu * g + n.f * gu;
            s.xv(i) = n.fv * g + n.f * gv;
            s.xuu(i) = n.fuu * g + 2.0 * n.fu * gu + n.f * guu;
            s.xuv(i) = n.fuv * g + n.fu * gv + n.fv * gu + n.f * guv;
            s.xvv(i) = n.fvv * g + 2.0 * n.fv * gv + n.f * gvv;
        }
        return s;
    }

private:
    std::array<std::vector<AffineTerm>, 4> terms_;
    double scale_ = 1.0;
};

Eigen::Vector2d gradient(const SurfaceJet& j, const Eigen::Vector3d& p) {
    const Eigen::Vector3d r = j.x - p;
    return {2.0 * r.dot(j.xu), 2.0 * r.dot(j.xv)};
}

Eigen::Matrix2d hessian(const SurfaceJet& j, const Eigen::Vector3d& p) {
    const Eigen::Vector3d r = j.x - p;
    Eigen::Matrix2d h;
    h(0, 0) = 2.0 * (j.xu.dot(j.xu) + r.dot(j.xuu));
    h(0, 1) = 2.0 * (j.xu.dot(j.xv) + r.dot(j.xuv));
    h(1, 0) = h(0, 1);
    h(1, 1) = 2.0 * (j.xv.dot(j.xv) + r.dot(j.xvv));
    return h;
}

SurfaceJet require(const Evaluator& eval, double u, double v) {
    auto j = eval(u, v);
    if (!j) throw PoleError("f0 vanishes at (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    return *j;
}

// Damped Newton on grad D = 0; nullopt when the run diverges or stalls.
std::optional<Eigen::Vector2d> newton(const Evaluator& eval, const Eigen::Vector3d& p, Eigen::Vector2d x,
                                      const OracleOptions& opts) {
    auto j = eval(x(0), x(1));
    if (!j) return std::nullopt;
    Eigen::Vector2d g = gradient(*j, p);
    for (int it = 0; it < opts.newton_iters; ++it) {
        const Eigen::Matrix2d h = hessian(*j, p);
        Eigen::FullPivLU<Eigen::Matrix2d> lu(h);
        if (!lu.isInvertible()) return std::nullopt;
        const Eigen::Vector2d step = lu.solve(g);
        if (!step.allFinite()) return std::nullopt;

        double lambda = 1.0;
        bool accepted = false;
        for (int half = 0; half <= 30; ++half, lambda *= 0.5) {
            const Eigen::Vector2d y = x - lambda * step;
            auto jy = eval(y(0), y(1));
            if (!jy) continue;
            const Eigen::Vector2d gy = gradient(*jy, p);
            if (gy.norm() < g.norm() || half == 30) {
                x = y;
                j = jy;
                g = gy;
                accepted = true;
                break;
            }
        }
        if (!accepted) return std::nullopt;
        if (x.norm() > 1e8) return std::nullopt;
        if (lambda * step.norm() <= opts.newton_tol * (1.0 + x.norm())) return x;
    }
    return std::nullopt;
}

}  // namespace

void OracleOptions::validate() const {
    if (grid_n < 2) throw DomainError("oracle grid needs at least 2 points per axis");
    if (newton_iters < 1 || !(newton_tol > 0.0) || !(merge_tol > 0.0) || !(unbounded_extent > 0.0)) {
        throw DomainError("oracle iteration counts and tolerances must be positive");
    }
    if (!domain.unbounded && (domain.u_min > domain.u_max || domain.v_min > domain.v_max)) {
        throw DomainError("empty parameter domain");
    }
}

Eigen::Vector2d gradient_D(const SurfaceParam& s, const Eigen::Vector3d& p, double u, double v) {
    const Evaluator eval(s);
    return gradient(require(eval, u, v), p);
}

Eigen::Matrix2d hessian_D(const SurfaceParam& s, const Eigen::Vector3d& p, double u, double v) {
    const Evaluator eval(s);
    return hessian(require(eval, u, v), p);
}

std::vector<CriticalPoint> oracle_project(const SurfaceParam& s, const Eigen::Vector3d& p, const OracleOptions& opts) {
    opts.validate();
    validate(s);
    const Evaluator eval(s);

    double u0 = -opts.unbounded_extent, u1 = opts.unbounded_extent;
    double v0 = u0, v1 = u1;
    if (!opts.domain.unbounded) {
        // Seeds overshoot the box so that boundary roots are reached from both sides.
        const double pu = 0.25 * (opts.domain.u_max - opts.domain.u_min);
        const double pv = 0.25 * (opts.domain.v_max - opts.domain.v_min);
        u0 = opts.domain.u_min - pu;
        u1 = opts.domain.u_max + pu;
        v0 = opts.domain.v_min - pv;
        v1 = opts.domain.v_max + pv;
    }

    const auto n = static_cast<std::size_t>(opts.grid_n);
    std::vector<std::optional<Eigen::Vector2d>> found(n * n);
    parallel_for(n * n, [&](std::size_t k) {
        const double a = (static_cast<double>(k / n) + 0.5) / static_cast<double>(n);
        const double b = (static_cast<double>(k % n) + 0.5) / static_cast<double>(n);
        const Eigen::Vector2d seed(u0 + a * (u1 - u0), v0 + b * (v1 - v0));
        auto x = newton(eval, p, seed, opts);
        if (!x || !opts.domain.contains_u((*x)(0)) || !opts.domain.contains_v((*x)(1))) return;
        if (orthogonality_residual(s, p, (*x)(0), (*x)(1)) >= 1e-8) return;
        found[k] = x;
    });

    std::vector<Eigen::Vector2d> roots;
    for (const auto& x : found) {
        if (x) roots.push_back(*x);
    }
    std::sort(roots.begin(), roots.end(), [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
        return a(0) != b(0) ? a(0) < b(0) : a(1) < b(1);
    });
    std::vector<CriticalPoint> out;
    for (const auto& x : roots) {
        const bool dup = std::any_of(out.begin(), out.end(), [&](const CriticalPoint& c) {
            return std::hypot(c.u - x(0), c.v - x(1)) < opts.merge_tol;
        });
        if (dup) continue;
        const auto j = require(eval, x(0), x(1));
        out.push_back({x(0), x(1), (j.x - p).norm()});
    }
    std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return out;
}

}  // namespace normalproj
