#include <gtest/gtest.h>

#include <random>
#include <set>

#include "normalproj/errors.hpp"
#include "normalproj/grading.hpp"

using namespace normalproj;

namespace {

std::vector<std::pair<int, int>> affine(SpaceKind kind, const MultiDegree& deg) {
    std::vector<std::pair<int, int>> out;
    for (const auto& m : enumerate_basis(kind, deg)) {
        const auto a = dehomogenized(kind, m);
        out.emplace_back(a.u, a.v);
    }
    return out;
}

}  // namespace

TEST(Grading, BasisSizeExamples) {
    EXPECT_EQ(basis_size(SpaceKind::Triangular, {4, 0}), 15u);
    EXPECT_EQ(basis_size(SpaceKind::TensorProduct, {2, 2, 0}), 9u);
    EXPECT_EQ(basis_size(SpaceKind::Triangular, {0, 0}), 1u);
    EXPECT_EQ(basis_size(SpaceKind::TensorProduct, {0, 0, 0}), 1u);
    EXPECT_EQ(basis_size(SpaceKind::TensorProduct, {3, 3, 1}), 32u);
}

TEST(Grading, NegativeDegreeRejected) {
    EXPECT_THROW(basis_size(SpaceKind::Triangular, {-1, 0}), DomainError);
    EXPECT_THROW(basis_size(SpaceKind::TensorProduct, {1, 0}), DomainError);
}

TEST(Grading, TensorBasisMatchesListing) {
    const std::vector<std::pair<int, int>> expected = {{2, 2}, {2, 1}, {2, 0}, {1, 2}, {1, 1}, {1, 0}, {0, 2}, {0, 1}, {0, 0}};
    EXPECT_EQ(affine(SpaceKind::TensorProduct, {2, 2, 0}), expected);
}

TEST(Grading, TriangularDegreeOne) {
    const auto b = affine(SpaceKind::Triangular, {1, 0});
    ASSERT_EQ(b.size(), 3u);
    const std::set<std::pair<int, int>> got(b.begin(), b.end());
    EXPECT_EQ(got, (std::set<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}}));
}

TEST(Grading, ZeroDegreeIsConstant) {
    for (auto kind : {SpaceKind::Triangular, SpaceKind::TensorProduct}) {
        const MultiDegree zero = kind == SpaceKind::Triangular ? MultiDegree{0, 0} : MultiDegree{0, 0, 0};
        const auto b = enumerate_basis(kind, zero);
        ASSERT_EQ(b.size(), 1u);
        EXPECT_EQ(b[0], Monomial{});
    }
}

TEST(Grading, ExhaustiveSweepTriangular) {
    for (int a = 0; a <= 10; ++a) {
        for (int t = 0; t <= 3; ++t) {
            const MultiDegree deg{a, t};
            const auto b = enumerate_basis(SpaceKind::Triangular, deg);
            ASSERT_EQ(b.size(), basis_size(SpaceKind::Triangular, deg));
            std::set<std::array<int, kMaxVars>> seen;
            for (std::size_t i = 0; i < b.size(); ++i) {
                EXPECT_EQ(b[i].degree(SpaceKind::Triangular), deg);
                EXPECT_TRUE(seen.insert(b[i].exps).second);
                EXPECT_EQ(monomial_index(SpaceKind::Triangular, deg, b[i]), i);
            }
        }
    }
}

TEST(Grading, ExhaustiveSweepTensor) {
    for (int a = 0; a <= 10; ++a) {
        for (int b2 = 0; b2 <= 10; ++b2) {
            for (int t = 0; t <= 1; ++t) {
                const MultiDegree deg{a, b2, t};
                const auto b = enumerate_basis(SpaceKind::TensorProduct, deg);
                ASSERT_EQ(b.size(), basis_size(SpaceKind::TensorProduct, deg));
                std::set<std::array<int, kMaxVars>> seen;
                for (std::size_t i = 0; i < b.size(); ++i) {
                    EXPECT_EQ(b[i].degree(SpaceKind::TensorProduct), deg);
                    EXPECT_TRUE(seen.insert(b[i].exps).second);
                    EXPECT_EQ(monomial_index(SpaceKind::TensorProduct, deg, b[i]), i);
                }
            }
        }
    }
}

TEST(Grading, RegionContainsExamples) {
    const auto r = theorem_region(SpaceKind::Triangular, {2}, 1);
    EXPECT_TRUE(region_contains(r, {4, 0}));
    EXPECT_FALSE(region_contains(r, {3, 0}));
    EXPECT_TRUE(region_contains(r, {2, 2}));
    EXPECT_TRUE(region_contains(r, {1000, 1000}));
    EXPECT_THROW(region_contains(r, {4, 0, 0}), DomainError);
}

TEST(Grading, NegativeInfinityCorner) {
    DegreeRegion r{2, {{std::nullopt, 3}}};
    EXPECT_TRUE(region_contains(r, {-100, 3}));
    EXPECT_FALSE(region_contains(r, {100, 2}));
}

TEST(Grading, RegionMonotone) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> small(0, 12);
    for (int trial = 0; trial < 200; ++trial) {
        const int d1 = 1 + trial % 3, d2 = 1 + (trial / 3) % 3;
        const auto r = theorem_region(SpaceKind::TensorProduct, {d1, d2}, 1);
        const MultiDegree a{small(rng), small(rng), small(rng) % 4};
        const MultiDegree b = a + MultiDegree{small(rng) % 3, small(rng) % 3, small(rng) % 2};
        if (region_contains(r, a)) EXPECT_TRUE(region_contains(r, b));
    }
}

TEST(Grading, TheoremRegionNoCurve) {
    const auto tri = theorem_region(SpaceKind::Triangular, {2}, 1);
    ASSERT_EQ(tri.corners.size(), 2u);
    EXPECT_EQ(tri.corners[0], (RegionCorner{4, 0}));
    EXPECT_EQ(tri.corners[1], (RegionCorner{2, 2}));

    const auto ten = theorem_region(SpaceKind::TensorProduct, {1, 1}, 1);
    ASSERT_EQ(ten.corners.size(), 3u);
    EXPECT_EQ(ten.corners[0], (RegionCorner{2, 1, 0}));
    EXPECT_EQ(ten.corners[1], (RegionCorner{1, 2, 0}));
    EXPECT_EQ(ten.corners[2], (RegionCorner{1, 1, 2}));
}

TEST(Grading, TheoremRegionWithCurve) {
    // g1 of degree (1,0), g2 of degree (0,1): eta = 0, second corner 2d-2+d-min{1,0}.
    const CompleteIntersectionCurve c{{MultiDegree{1}, 0}, {MultiDegree{0}, 1}};
    const auto r = theorem_region(SpaceKind::Triangular, {2}, 1, c);
    ASSERT_EQ(r.corners.size(), 2u);
    EXPECT_EQ(r.corners[0], (RegionCorner{4, 0}));
    EXPECT_EQ(r.corners[1], (RegionCorner{4, 2}));
}

TEST(Grading, TheoremRegionTensorCurve) {
    const CompleteIntersectionCurve c{{MultiDegree{1, 1}, 0}, {MultiDegree{0, 0}, 1}};
    const auto r = theorem_region(SpaceKind::TensorProduct, {2, 2}, 1, c);
    // tau_i = 2 - min{2, 1, 2} = 1.
    EXPECT_EQ(r.corners[0], (RegionCorner{5, 4, 0}));
    EXPECT_EQ(r.corners[1], (RegionCorner{4, 5, 0}));
    EXPECT_EQ(r.corners[2], (RegionCorner{4, 4, 2}));
}

TEST(Grading, TriangularRegionMatchesThreshold) {
    for (int d = 2; d <= 5; ++d) {
        const auto r = theorem_region(SpaceKind::Triangular, {d}, 1);
        for (int mu = 0; mu <= 6 * d; ++mu) EXPECT_EQ(region_contains(r, {mu, 0}), mu >= 3 * d - 2) << d << " " << mu;
    }
}

TEST(Grading, TheoremRegionRejectsBadInput) {
    EXPECT_THROW(theorem_region(SpaceKind::Triangular, {2, 2}, 1), DomainError);
    EXPECT_THROW(theorem_region(SpaceKind::Triangular, {2}, 0), DomainError);
    const CompleteIntersectionCurve c{{MultiDegree{3}, 0}, {MultiDegree{0}, 1}};
    EXPECT_THROW(theorem_region(SpaceKind::Triangular, {2}, 1, c), DomainError);
}

TEST(Grading, MultiDegreeArithmetic) {
    const MultiDegree a{1, 2, 3};
    const MultiDegree b{3, 2, 1};
    EXPECT_EQ(a + b, (MultiDegree{4, 4, 4}));
    EXPECT_EQ(b - a, (MultiDegree{2, 0, -2}));
    EXPECT_FALSE((b - a).all_nonnegative());
    EXPECT_TRUE((MultiDegree{4, 4, 4}).dominates(a));
    EXPECT_FALSE(a.dominates(b));
}

TEST(Grading, SpaceKindNames) {
    EXPECT_EQ(parse_space_kind(to_string(SpaceKind::Triangular)), SpaceKind::Triangular);
    EXPECT_EQ(parse_space_kind(to_string(SpaceKind::TensorProduct)), SpaceKind::TensorProduct);
    EXPECT_THROW(parse_space_kind("sphere"), DomainError);
    EXPECT_EQ(num_vars(SpaceKind::Triangular), 5u);
    EXPECT_EQ(num_vars(SpaceKind::TensorProduct), 6u);
}
