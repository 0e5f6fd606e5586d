#include "normalproj/congruence.hpp"

#include <cmath>
#include <random>

#include "normalproj/errors.hpp"

namespace normalproj {

namespace {

Monomial var_monomial(SpaceKind kind, Var var, int power = 1) {
    Monomial m;
    m.exps[*var_index(kind, var)] = power;
    return m;
}

}  // namespace

CongruenceMap build_congruence(const SurfaceParam& s) {
    const NormalField field = reduced_minors(s);
    if (field.deltas[1].is_zero() && field.deltas[2].is_zero() && field.deltas[3].is_zero()) {
        throw DegeneracyError("normal field vanishes identically; the surface is degenerate");
    }
    const SpaceKind kind = s.kind;

    // Multiplier that brings F_i up to the degree of the minors.
    Monomial lift;
    if (kind == SpaceKind::Triangular) {
        lift = var_monomial(kind, Var::W, 2 * s.degree_d[0] - 3);
    } else {
        lift = var_monomial(kind, Var::UBar, 2 * s.degree_d[0] - 2) * var_monomial(kind, Var::VBar, 2 * s.degree_d[1] - 2);
    }
    const auto lifted = MultiHomogPoly::monomial(kind, lift * var_monomial(kind, Var::TBar));
    const auto t = MultiHomogPoly::monomial(kind, var_monomial(kind, Var::T));

    std::array<MultiHomogPoly, 4> psi;
    psi[0] = multiply(lifted, s.F[0]);
    for (std::size_t i = 1; i < 4; ++i) psi[i] = multiply(lifted, s.F[i]) + multiply(t, field.deltas[i]);

    CongruenceMap c;
    c.kind = kind;
    c.content_removed = monomial_content(psi);
    for (std::size_t i = 0; i < 4; ++i) c.psi[i] = exact_divide_by_monomial(psi[i], c.content_removed);
    c.degree_delta = c.psi[0].degree();
    c.source = s;
    return c;
}

MultiDegree expected_congruence_degree(SpaceKind kind, const MultiDegree& degree_d, bool rational) {
    if (kind == SpaceKind::Triangular) {
        const int d = degree_d[0];
        return rational ? MultiDegree{3 * d - 3, 1} : MultiDegree{2 * d - 2, 1};
    }
    const int d1 = degree_d[0];
    const int d2 = degree_d[1];
    return rational ? MultiDegree{3 * d1 - 2, 3 * d2 - 2, 1} : MultiDegree{2 * d1 - 1, 2 * d2 - 1, 1};
}

std::optional<CompleteIntersectionCurve> expected_base_curve(const SurfaceParam& s) {
    validate(s);
    const bool rational = !s.is_non_rational;
    MultiDegree g1;
    if (s.kind == SpaceKind::Triangular) {
        const int d = s.degree_d[0];
        g1 = MultiDegree{rational ? 2 * d - 3 : d - 2};
    } else {
        const int d1 = s.degree_d[0];
        const int d2 = s.degree_d[1];
        g1 = rational ? MultiDegree{2 * d1 - 2, 2 * d2 - 2} : MultiDegree{d1 - 1, d2 - 1};
    }
    bool trivial = true;
    for (std::size_t i = 0; i < g1.size(); ++i) trivial = trivial && g1[i] == 0;
    if (trivial) return std::nullopt;
    CompleteIntersectionCurve curve;
    curve.g1 = {g1, 0};
    curve.g2 = {MultiDegree(std::vector<int>(g1.size(), 0)), 1};
    return curve;
}

BaseLocusReport base_locus_diagnostic(const CongruenceMap& c, std::size_t samples, std::uint64_t seed) {
    if (samples < 1) throw DomainError("base locus diagnostic needs at least one sample");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> magnitude(0.5, 1.5);
    std::bernoulli_distribution sign(0.5);
    const std::size_t nv = num_vars(c.kind);

    double scale = 0.0;
    for (const auto& p : c.psi) {
        for (double x : p.coeffs()) scale += std::abs(x);
    }

    BaseLocusReport report;
    report.samples = samples;
    report.content_removed = c.content_removed;
    std::array<double, kMaxVars> pt{};
    for (std::size_t k = 0; k < samples; ++k) {
        for (std::size_t v = 0; v < nv; ++v) pt[v] = (sign(rng) ? -1.0 : 1.0) * magnitude(rng);
        bool all_zero = true;
        for (const auto& p : c.psi) {
            if (std::abs(evaluate(p, std::span<const double>(pt.data(), nv))) > 1e-10 * scale) {
                all_zero = false;
                break;
            }
        }
        if (all_zero) ++report.common_zero_samples;
    }
    return report;
}

}  // namespace normalproj
