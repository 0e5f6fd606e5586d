#include <gtest/gtest.h>

#include <random>

#include <Eigen/Geometry>

#include "normalproj/congruence.hpp"
#include "normalproj/errors.hpp"
#include "test_support.hpp"

using namespace normalproj;
using normalproj::testing::affine_point;
using normalproj::testing::mono;

namespace {

constexpr auto Tri = SpaceKind::Triangular;
constexpr auto Ten = SpaceKind::TensorProduct;

struct ClassCase {
    SpaceKind kind;
    MultiDegree d;
    bool rational;
};

const std::vector<ClassCase> kClasses = {
    {Tri, {2}, false}, {Tri, {3}, false}, {Tri, {2}, true},        {Tri, {3}, true},        {Ten, {1, 1}, false},
    {Ten, {1, 2}, false}, {Ten, {2, 2}, false}, {Ten, {1, 1}, true}, {Ten, {1, 2}, true}, {Ten, {2, 2}, true},
};

}  // namespace

TEST(Congruence, SegrePsi) {
    const auto c = build_congruence(segre_surface());
    EXPECT_EQ(c.degree_delta, (MultiDegree{1, 1, 1}));
    // Tensor exponents (ubar, u, vbar, v, tbar, t).
    EXPECT_EQ(c.psi[0], MultiHomogPoly::monomial(Ten, mono({1, 0, 1, 0, 1, 0})));
    const double s = c.psi[1].coeff(mono({1, 0, 0, 1, 0, 1}));
    ASSERT_EQ(std::abs(s), 1.0);
    auto p1 = MultiHomogPoly::monomial(Ten, mono({0, 1, 1, 0, 1, 0}));
    p1 += MultiHomogPoly::monomial(Ten, mono({1, 0, 0, 1, 0, 1}), s);
    auto p2 = MultiHomogPoly::monomial(Ten, mono({1, 0, 0, 1, 1, 0}));
    p2 += MultiHomogPoly::monomial(Ten, mono({0, 1, 1, 0, 0, 1}), s);
    auto p3 = MultiHomogPoly::monomial(Ten, mono({0, 1, 0, 1, 1, 0}));
    p3 += MultiHomogPoly::monomial(Ten, mono({1, 0, 1, 0, 0, 1}), -s);
    EXPECT_EQ(c.psi[1], p1);
    EXPECT_EQ(c.psi[2], p2);
    EXPECT_EQ(c.psi[3], p3);
}

TEST(Congruence, DegreesMatchTable) {
    for (const auto& cc : kClasses) {
        const auto s = random_surface(cc.kind, cc.d, cc.rational, 21);
        const auto c = build_congruence(s);
        EXPECT_EQ(c.degree_delta, expected_congruence_degree(cc.kind, cc.d, cc.rational)) << cc.d.str() << cc.rational;
        for (const auto& p : c.psi) EXPECT_EQ(p.degree(), c.degree_delta);
        EXPECT_EQ(monomial_content(c.psi), Monomial{});
    }
    EXPECT_EQ(expected_congruence_degree(Tri, {2}, false), (MultiDegree{2, 1}));
    EXPECT_EQ(expected_congruence_degree(Tri, {2}, true), (MultiDegree{3, 1}));
    EXPECT_EQ(expected_congruence_degree(Ten, {2, 3}, false), (MultiDegree{3, 5, 1}));
    EXPECT_EQ(expected_congruence_degree(Ten, {2, 3}, true), (MultiDegree{4, 7, 1}));
}

TEST(Congruence, ContentRemovedNonRational) {
    for (int d : {2, 3, 4}) {
        const auto c = build_congruence(random_surface(Tri, {d}, false, 8));
        Monomial w;
        w.exps[0] = d - 1;
        EXPECT_EQ(c.content_removed, w) << d;
    }
    EXPECT_EQ(build_congruence(random_surface(Tri, {2}, true, 8)).content_removed, Monomial{});
}

TEST(Congruence, IncidenceIdentity) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    for (const auto& cc : kClasses) {
        const auto s = random_surface(cc.kind, cc.d, cc.rational, 31);
        const auto cong = build_congruence(s);
        const auto n = reduced_minors(s);
        for (int i = 0; i < 10; ++i) {
            const double u = c(rng), v = c(rng), t = c(rng);
            const auto pt = affine_point(cc.kind, u, v, t);
            const double p0 = evaluate(cong.psi[0], pt);
            const Eigen::Vector3d x(evaluate(cong.psi[1], pt) / p0, evaluate(cong.psi[2], pt) / p0,
                                    evaluate(cong.psi[3], pt) / p0);
            const auto x_pt = affine_point(cc.kind, u, v);
            const Eigen::Vector3d delta(evaluate(n.deltas[1], x_pt), evaluate(n.deltas[2], x_pt), evaluate(n.deltas[3], x_pt));
            const Eigen::Vector3d off = x - eval_affine(s, u, v);
            if (off.norm() < 1e-12) continue;
            EXPECT_LT(off.normalized().cross(delta.normalized()).norm(), 1e-8);
        }
    }
}

TEST(Congruence, RecoversSurfaceAtTZero) {
    for (const auto& cc : kClasses) {
        const auto s = random_surface(cc.kind, cc.d, cc.rational, 41);
        const auto cong = build_congruence(s);
        const auto pt = affine_point(cc.kind, 0.37, -0.61, 0.0);
        Eigen::Vector4d a, b;
        for (std::size_t i = 0; i < 4; ++i) {
            a(static_cast<Eigen::Index>(i)) = evaluate(cong.psi[i], pt);
            b(static_cast<Eigen::Index>(i)) = evaluate(s.F[i], pt);
        }
        const double cosang = std::abs(a.normalized().dot(b.normalized()));
        EXPECT_NEAR(cosang, 1.0, 1e-12);
    }
}

TEST(Congruence, ExpectedBaseCurve) {
    const auto r2 = expected_base_curve(random_surface(Tri, {2}, true, 1));
    ASSERT_TRUE(r2.has_value());
    EXPECT_EQ(r2->g1.x_degree, (MultiDegree{1}));
    EXPECT_EQ(r2->g1.t_degree, 0);
    EXPECT_EQ(r2->g2.x_degree, (MultiDegree{0}));
    EXPECT_EQ(r2->g2.t_degree, 1);

    EXPECT_FALSE(expected_base_curve(segre_surface()).has_value());
    EXPECT_FALSE(expected_base_curve(random_surface(Tri, {2}, false, 1)).has_value());

    const auto n3 = expected_base_curve(random_surface(Tri, {3}, false, 1));
    ASSERT_TRUE(n3.has_value());
    EXPECT_EQ(n3->g1.x_degree, (MultiDegree{1}));

    const auto t22 = expected_base_curve(random_surface(Ten, {2, 2}, true, 1));
    ASSERT_TRUE(t22.has_value());
    EXPECT_EQ(t22->g1.x_degree, (MultiDegree{2, 2}));
}

TEST(Congruence, BaseLocusDiagnostic) {
    const auto c = build_congruence(segre_surface());
    const auto r = base_locus_diagnostic(c, 100);
    EXPECT_EQ(r.samples, 100u);
    EXPECT_EQ(r.common_zero_samples, 0u);
    EXPECT_EQ(r.content_removed, Monomial{});

    const auto d2 = base_locus_diagnostic(build_congruence(random_surface(Tri, {2}, false, 2)), 50);
    Monomial w;
    w.exps[0] = 1;
    EXPECT_EQ(d2.content_removed, w);
    EXPECT_EQ(d2.common_zero_samples, 0u);
}

TEST(Congruence, DegenerateSurface) {
    // A surface whose image is a line: F = (w^2, u^2, u^2, u^2).
    const auto u2 = MultiHomogPoly::monomial(Tri, mono({0, 2, 0, 0, 0}));
    const std::array<MultiHomogPoly, 4> F = {MultiHomogPoly::monomial(Tri, mono({2, 0, 0, 0, 0})), u2, u2, u2};
    const auto s = make_surface(Tri, {2}, F, true);
    EXPECT_THROW(build_congruence(s), DegeneracyError);
}
