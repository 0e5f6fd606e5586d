#include <gtest/gtest.h>

#include <random>

#include "normalproj/errors.hpp"
#include "normalproj/polynomial.hpp"

using namespace normalproj;

namespace {

constexpr auto Tri = SpaceKind::Triangular;
constexpr auto Ten = SpaceKind::TensorProduct;

// Exponent vectors: Triangular (w, u, v, tbar, t); Tensor (ubar, u, vbar, v, tbar, t).
Monomial mono(std::initializer_list<int> e) {
    Monomial m;
    std::size_t i = 0;
    for (int x : e) m.exps[i++] = x;
    return m;
}

MultiHomogPoly random_poly(SpaceKind kind, const MultiDegree& deg, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    std::vector<double> coeffs(basis_size(kind, deg));
    for (auto& x : coeffs) x = c(rng);
    return MultiHomogPoly(kind, deg, coeffs);
}

double max_diff(const MultiHomogPoly& a, const MultiHomogPoly& b) { return (a - b).max_abs(); }

}  // namespace

TEST(Polynomial, MultiplyByOne) {
    std::mt19937_64 rng(1);
    const auto p = random_poly(Ten, {2, 1, 1}, rng);
    EXPECT_EQ(multiply(p, MultiHomogPoly::constant(Ten, 1.0)), p);
}

TEST(Polynomial, MultiplyMonomials) {
    const auto u = MultiHomogPoly::monomial(Tri, mono({0, 1, 0, 0, 0}));
    const auto v = MultiHomogPoly::monomial(Tri, mono({0, 0, 1, 0, 0}));
    const auto uv = multiply(u, v);
    EXPECT_EQ(uv.degree(), (MultiDegree{2, 0}));
    EXPECT_EQ(uv.coeff(mono({0, 1, 1, 0, 0})), 1.0);
    EXPECT_EQ(uv.max_abs(), 1.0);
}

TEST(Polynomial, MultiplyTensorHand) {
    auto a = MultiHomogPoly::monomial(Ten, mono({1, 0, 1, 0, 0, 0}));
    a += MultiHomogPoly::monomial(Ten, mono({0, 1, 0, 1, 0, 0}));
    const auto tbar = MultiHomogPoly::monomial(Ten, mono({0, 0, 0, 0, 1, 0}));
    const auto r = multiply(a, tbar);
    EXPECT_EQ(r.degree(), (MultiDegree{1, 1, 1}));
    EXPECT_EQ(r.coeff(mono({1, 0, 1, 0, 1, 0})), 1.0);
    EXPECT_EQ(r.coeff(mono({0, 1, 0, 1, 1, 0})), 1.0);
    EXPECT_NEAR(r.norm(), std::sqrt(2.0), 1e-15);
}

TEST(Polynomial, MultiplyKindMismatch) {
    EXPECT_THROW(multiply(MultiHomogPoly::constant(Tri, 1.0), MultiHomogPoly::constant(Ten, 1.0)), DomainError);
}

TEST(Polynomial, CommutativeAssociative) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 20; ++i) {
        const auto a = random_poly(Ten, {1, 2, 0}, rng);
        const auto b = random_poly(Ten, {2, 1, 1}, rng);
        const auto c = random_poly(Ten, {1, 1, 0}, rng);
        const auto ab = multiply(a, b);
        EXPECT_LT(max_diff(ab, multiply(b, a)), 1e-12 * ab.max_abs());
        const auto l = multiply(ab, c);
        EXPECT_LT(max_diff(l, multiply(a, multiply(b, c))), 1e-12 * l.max_abs());
    }
}

TEST(Polynomial, PartialDerivativeExamples) {
    // u^2 v in degree 3 over P^2.
    const auto p = MultiHomogPoly::monomial(Tri, mono({0, 2, 1, 0, 0}));
    const auto du = partial_derivative(p, Var::U);
    EXPECT_FALSE(du.clamped);
    EXPECT_EQ(du.poly.coeff(mono({0, 1, 1, 0, 0})), 2.0);
    EXPECT_EQ(du.poly.max_abs(), 2.0);

    const auto u2 = MultiHomogPoly::monomial(Tri, mono({0, 2, 0, 0, 0}));
    EXPECT_TRUE(partial_derivative(u2, Var::W).poly.is_zero());

    auto f = MultiHomogPoly::monomial(Ten, mono({1, 0, 1, 0, 0, 0}));
    f += MultiHomogPoly::monomial(Ten, mono({0, 1, 0, 1, 0, 0}));
    const auto fu = partial_derivative(f, Var::U).poly;
    EXPECT_EQ(fu.degree(), (MultiDegree{0, 1, 0}));
    EXPECT_EQ(fu.coeff(mono({0, 0, 0, 1, 0, 0})), 1.0);
    EXPECT_EQ(fu.max_abs(), 1.0);
}

TEST(Polynomial, DerivativeOfDegreeZeroBlockIsClamped) {
    const auto p = MultiHomogPoly::monomial(Tri, mono({2, 0, 0, 0, 0}));
    const auto d = partial_derivative(p, Var::T);
    EXPECT_TRUE(d.clamped);
    EXPECT_TRUE(d.poly.is_zero());
    EXPECT_THROW(partial_derivative(p, Var::UBar), DomainError);
}

TEST(Polynomial, Evaluate) {
    const std::vector<double> pt{0.3, -1.2, 2.0, 0.7, 5.0};
    EXPECT_EQ(evaluate(MultiHomogPoly::constant(Tri, 1.0), pt), 1.0);
    const auto uv = MultiHomogPoly::monomial(Tri, mono({0, 1, 1, 0, 0}));
    EXPECT_EQ(evaluate(uv, std::vector<double>{1, 2, 3, 1, 1}), 6.0);

    auto psi1 = MultiHomogPoly::monomial(Ten, mono({0, 1, 1, 0, 1, 0}));
    psi1 += MultiHomogPoly::monomial(Ten, mono({1, 0, 0, 1, 0, 1}));
    EXPECT_EQ(evaluate(psi1, std::vector<double>(6, 1.0)), 2.0);
    EXPECT_THROW(evaluate(uv, std::vector<double>{1, 2, 3}), DomainError);
}

TEST(Polynomial, EulerRelations) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const bool tri = trial % 2 == 0;
        const SpaceKind kind = tri ? Tri : Ten;
        const MultiDegree deg = tri ? MultiDegree{2 + trial % 4, 1} : MultiDegree{1 + trial % 3, 2, 1};
        const auto f = random_poly(kind, deg, rng);
        for (std::size_t block = 0; block < num_blocks(kind); ++block) {
            MultiHomogPoly sum(kind, deg);
            for (std::size_t i = 0; i < num_vars(kind); ++i) {
                if (block_of(kind, i) != block) continue;
                const auto d = partial_derivative(f, i);
                if (d.clamped) continue;
                Monomial xi;
                xi.exps[i] = 1;
                sum += multiply(MultiHomogPoly::monomial(kind, xi), d.poly);
            }
            const auto expect = static_cast<double>(deg[block]) * f;
            EXPECT_LT(max_diff(sum, expect), 1e-10 * (1.0 + f.max_abs()));
        }
    }
}

TEST(Polynomial, MonomialContent) {
    const std::vector<MultiHomogPoly> a = {MultiHomogPoly::monomial(Tri, mono({2, 1, 0, 0, 0})),
                                           MultiHomogPoly::monomial(Tri, mono({2, 0, 1, 0, 0})),
                                           MultiHomogPoly::monomial(Tri, mono({3, 0, 0, 0, 0}))};
    EXPECT_EQ(monomial_content(a), mono({2, 0, 0, 0, 0}));

    const std::vector<MultiHomogPoly> b = {MultiHomogPoly::monomial(Ten, mono({1, 0, 0, 1, 0, 0})),
                                           MultiHomogPoly::monomial(Ten, mono({1, 0, 1, 0, 0, 0}))};
    EXPECT_EQ(monomial_content(b), mono({1, 0, 0, 0, 0, 0}));

    const std::vector<MultiHomogPoly> zero = {MultiHomogPoly(Tri, {2, 0})};
    EXPECT_THROW(monomial_content(zero), DomainError);
}

TEST(Polynomial, ExactDivide) {
    const auto vbar = mono({0, 0, 1, 0, 0, 0});
    const auto p = MultiHomogPoly::monomial(Ten, mono({1, 0, 1, 1, 0, 0}), 3.0);
    const auto q = exact_divide_by_monomial(p, vbar);
    EXPECT_EQ(q, MultiHomogPoly::monomial(Ten, mono({1, 0, 0, 1, 0, 0}), 3.0));
    EXPECT_TRUE(exact_divide_by_monomial(MultiHomogPoly(Ten, {1, 2, 0}), vbar).is_zero());
    EXPECT_THROW(exact_divide_by_monomial(MultiHomogPoly::monomial(Ten, mono({1, 0, 0, 1, 0, 0})), vbar), DivisibilityError);
}

TEST(Polynomial, DivideInvertsMultiply) {
    std::mt19937_64 rng(4);
    const Monomial m = mono({1, 0, 2, 0, 1});
    for (int i = 0; i < 10; ++i) {
        const auto p = random_poly(Tri, {3, 1}, rng);
        const auto q = exact_divide_by_monomial(multiply(p, MultiHomogPoly::monomial(Tri, m)), m);
        EXPECT_EQ(q, p);
    }
}

TEST(Polynomial, Dehomogenize) {
    auto p = MultiHomogPoly::monomial(Tri, mono({2, 1, 0, 0, 0}));
    p += MultiHomogPoly::monomial(Tri, mono({2, 0, 1, 0, 0}));
    const auto terms = dehomogenize(p);
    ASSERT_EQ(terms.size(), 2u);
    for (const auto& t : terms) {
        EXPECT_EQ(t.coeff, 1.0);
        EXPECT_EQ(t.exps.u + t.exps.v, 1);
        EXPECT_EQ(t.exps.t, 0);
    }
    EXPECT_THROW(p += MultiHomogPoly::monomial(Tri, mono({1, 0, 1, 0, 0})), DomainError);
}

TEST(Polynomial, DehomogenizeTensor) {
    EXPECT_EQ(dehomogenize(MultiHomogPoly::monomial(Ten, mono({1, 0, 1, 0, 1, 0}))).size(), 1u);
    const auto one = dehomogenize(MultiHomogPoly::monomial(Ten, mono({1, 0, 1, 0, 1, 0})));
    EXPECT_EQ(one[0].exps.u, 0);
    EXPECT_EQ(one[0].exps.v, 0);
    EXPECT_EQ(one[0].exps.t, 0);

    auto p = MultiHomogPoly::monomial(Ten, mono({0, 1, 0, 1, 1, 0}));
    p -= MultiHomogPoly::monomial(Ten, mono({1, 0, 1, 0, 0, 1}));
    const auto terms = dehomogenize(p);
    ASSERT_EQ(terms.size(), 2u);
    for (const auto& t : terms) {
        if (t.exps.t == 1) {
            EXPECT_EQ(t.coeff, -1.0);
            EXPECT_EQ(t.exps.u + t.exps.v, 0);
        } else {
            EXPECT_EQ(t.coeff, 1.0);
            EXPECT_EQ(t.exps.u, 1);
            EXPECT_EQ(t.exps.v, 1);
        }
    }
}

TEST(Polynomial, PruneAndNorms) {
    MultiHomogPoly p(Tri, {1, 0}, {1.0, 1e-14, -2.0});
    EXPECT_EQ(p.max_abs(), 2.0);
    p.prune(1e-12);
    EXPECT_EQ(p.coeffs()[1], 0.0);
    EXPECT_NEAR(p.norm(), std::sqrt(5.0), 1e-15);
    EXPECT_THROW(MultiHomogPoly(Tri, {1, 0}, {1.0}), DomainError);
}
