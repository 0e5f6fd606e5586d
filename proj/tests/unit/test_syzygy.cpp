#include <gtest/gtest.h>

#include <random>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "normalproj/errors.hpp"
#include "normalproj/inversion.hpp"
#include "normalproj/syzygy.hpp"

using namespace normalproj;

namespace {

constexpr auto Tri = SpaceKind::Triangular;
constexpr auto Ten = SpaceKind::TensorProduct;

}  // namespace

TEST(Syzygy, AdmissibleDegree) {
    EXPECT_EQ(admissible_degree(random_surface(Tri, {2}, false, 1)), (MultiDegree{4, 0}));
    EXPECT_EQ(admissible_degree(random_surface(Tri, {3}, true, 1)), (MultiDegree{16, 0}));
    EXPECT_EQ(admissible_degree(random_surface(Ten, {2, 2}, true, 1)), (MultiDegree{11, 9, 0}));
    EXPECT_EQ(admissible_degree(random_surface(Ten, {2, 2}, true, 1), true), (MultiDegree{9, 11, 0}));
    EXPECT_EQ(admissible_degree(segre_surface()), (MultiDegree{2, 2, 0}));
    EXPECT_EQ(admissible_degree(random_surface(Ten, {1, 2}, false, 1), true), (MultiDegree{2, 8, 0}));
}

TEST(Syzygy, AssembleSegre) {
    const auto c = build_congruence(segre_surface());
    const auto sys = assemble_system(c, {2, 2, 0});
    EXPECT_EQ(sys.S.rows(), 32);
    EXPECT_EQ(sys.S.cols(), 36);
    EXPECT_EQ(sys.target_degree, (MultiDegree{3, 3, 1}));
}

TEST(Syzygy, AssembleDegreeZero) {
    const auto c = build_congruence(random_surface(Tri, {2}, true, 4));
    const auto sys = assemble_system(c, {0, 0});
    EXPECT_EQ(static_cast<std::size_t>(sys.S.rows()), basis_size(Tri, c.degree_delta));
    EXPECT_EQ(sys.S.cols(), 4);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto coeffs = c.psi[i].coeffs();
        for (Eigen::Index r = 0; r < sys.S.rows(); ++r) {
            EXPECT_EQ(sys.S(r, static_cast<Eigen::Index>(i)), coeffs[static_cast<std::size_t>(r)]);
        }
    }
    EXPECT_THROW(assemble_system(c, {-1, 0}), DomainError);
    EXPECT_THROW(assemble_system(c, {1, 0, 0}), DomainError);
}

TEST(Syzygy, SegreMatrix) {
    const auto c = build_congruence(segre_surface());
    const auto m = build_matrix_rep(c, {2, 2, 0});
    EXPECT_EQ(m.rows(), 9);
    EXPECT_EQ(m.cols(), 5);
    EXPECT_FALSE(m.below_admissible);
    Eigen::MatrixXd stacked(36, 5);
    for (Eigen::Index i = 0; i < 4; ++i) stacked.middleRows(9 * i, 9) = m.M[static_cast<std::size_t>(i)];
    EXPECT_LT((stacked.transpose() * stacked - Eigen::MatrixXd::Identity(5, 5)).norm(), 1e-12);
    for (Eigen::Index j = 0; j < m.cols(); ++j) EXPECT_LT(syzygy_residual(m, c, j), 1e-8);
}

TEST(Syzygy, NoSyzygiesAtDegreeZero) {
    const auto c = build_congruence(segre_surface());
    const auto m = build_matrix_rep(c, {0, 0, 0});
    EXPECT_EQ(m.rows(), 1);
    EXPECT_EQ(m.cols(), 0);
    EXPECT_TRUE(m.below_admissible);
}

TEST(Syzygy, ShapesAtAdmissibleDegree) {
    struct Row {
        SpaceKind kind;
        MultiDegree d;
        bool rational;
        Eigen::Index rows, cols;
    };
    const std::vector<Row> table = {
        {Tri, {2}, false, 15, 7},     {Tri, {3}, false, 66, 51},    {Tri, {2}, true, 36, 29},
        {Ten, {1, 1}, false, 9, 5},   {Ten, {1, 2}, false, 24, 16}, {Ten, {2, 2}, false, 72, 59},
        {Ten, {1, 1}, true, 9, 4},    {Ten, {1, 2}, true, 30, 20},
    };
    for (const auto& r : table) {
        const auto s = random_surface(r.kind, r.d, r.rational, 99);
        const auto c = build_congruence(s);
        const auto m = build_matrix_rep(c, admissible_degree(s));
        EXPECT_EQ(m.rows(), r.rows) << r.d.str() << " rational " << r.rational;
        EXPECT_EQ(m.cols(), r.cols) << r.d.str() << " rational " << r.rational;
        for (Eigen::Index j = 0; j < m.cols(); ++j) EXPECT_LT(syzygy_residual(m, c, j), 1e-8);
    }
}

TEST(Syzygy, MirroredDegreeGivesTransposedShape) {
    const auto s = random_surface(Ten, {1, 2}, false, 5);
    const auto c = build_congruence(s);
    const auto a = build_matrix_rep(c, admissible_degree(s, false));
    const auto b = build_matrix_rep(c, admissible_degree(s, true));
    EXPECT_EQ(a.rows(), 24);
    const Eigen::Vector4d p(1.0, 0.2, -0.3, 0.4);
    EXPECT_EQ(corank_at(a, p), corank_at(b, p));
}

TEST(Syzygy, CorankPlateau) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    for (auto [kind, d, rational] : {std::tuple{Tri, MultiDegree{2}, false}, std::tuple{Ten, MultiDegree{1, 1}, true}}) {
        for (int i = 0; i < 3; ++i) {
            const auto s = random_surface(kind, d, rational, 100 + static_cast<std::uint64_t>(i));
            const auto c = build_congruence(s);
            const MultiDegree mu = admissible_degree(s);
            MultiDegree bumped = mu;
            for (std::size_t b = 0; b < num_x_blocks(kind); ++b) bumped[b] += 1;
            const auto m0 = build_matrix_rep(c, mu);
            const auto m1 = build_matrix_rep(c, bumped);
            const Eigen::Vector4d p(1.0, coord(rng), coord(rng), coord(rng));
            EXPECT_EQ(corank_at(m0, p), corank_at(m1, p));
        }
    }
}

TEST(Syzygy, RejectsNonPositiveTolerance) {
    const auto c = build_congruence(segre_surface());
    EXPECT_THROW(build_matrix_rep(c, {2, 2, 0}, 0.0), DomainError);
}
