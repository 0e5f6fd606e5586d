#include "normalproj/syzygy.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "normalproj/errors.hpp"
#include "normalproj/serialization.hpp"

namespace normalproj {

MultiDegree admissible_degree(const SurfaceParam& s, bool mirrored) {
    validate(s);
    const bool rational = !s.is_non_rational;
    if (s.kind == SpaceKind::Triangular) {
        const int d = s.degree_d[0];
        return {rational ? 9 * d - 11 : 6 * d - 8, 0};
    }
    const int d1 = s.degree_d[0];
    const int d2 = s.degree_d[1];
    if (rational) {
        return mirrored ? MultiDegree{7 * d1 - 5, 9 * d2 - 7, 0} : MultiDegree{9 * d1 - 7, 7 * d2 - 5, 0};
    }
    return mirrored ? MultiDegree{5 * d1 - 3, 6 * d2 - 4, 0} : MultiDegree{6 * d1 - 4, 5 * d2 - 3, 0};
}

SyzygySystem assemble_system(const CongruenceMap& c, const MultiDegree& deg) {
    check_arity(c.kind, deg);
    if (!deg.all_nonnegative()) throw DomainError("syzygy degree must be non-negative");
    SyzygySystem sys;
    sys.kind = c.kind;
    sys.degree = deg;
    sys.target_degree = deg + c.degree_delta;

    const auto row_basis = enumerate_basis(c.kind, deg);
    const auto psi_basis = enumerate_basis(c.kind, c.degree_delta);
    const auto n = static_cast<Eigen::Index>(row_basis.size());
    sys.S = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(basis_size(c.kind, sys.target_degree)), 4 * n);

    for (std::size_t i = 0; i < 4; ++i) {
        const auto coeffs = c.psi[i].coeffs();
        for (Eigen::Index j = 0; j < n; ++j) {
            const Eigen::Index col = static_cast<Eigen::Index>(i) * n + j;
            for (std::size_t k = 0; k < psi_basis.size(); ++k) {
                if (coeffs[k] == 0.0) continue;
                const auto row = monomial_index(c.kind, sys.target_degree, row_basis[static_cast<std::size_t>(j)] * psi_basis[k]);
                sys.S(static_cast<Eigen::Index>(row), col) += coeffs[k];
            }
        }
    }
    return sys;
}

MatrixRep build_matrix_rep(const CongruenceMap& c, const MultiDegree& deg, double rank_tol) {
    if (!(rank_tol > 0.0)) throw DomainError("rank tolerance must be positive");
    const SyzygySystem sys = assemble_system(c, deg);
    const Eigen::Index n = sys.S.cols() / 4;

    MatrixRep rep;
    rep.kind = c.kind;
    rep.mu_nu = deg;
    rep.row_basis = enumerate_basis(c.kind, deg);
    rep.meta.surface_hash = surface_hash(c.source);
    rep.meta.delta_degree = c.degree_delta;
    rep.meta.rank_tolerance_used = rank_tol;
    rep.below_admissible = !deg.dominates(admissible_degree(c.source));

    Eigen::MatrixXd null;
    if (sys.S.rows() == 0) {
        null = Eigen::MatrixXd::Identity(sys.S.cols(), sys.S.cols());
    } else {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(sys.S, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double cut = rank_tol * (sv.size() ? sv(0) : 0.0);
        Eigen::Index rank = 0;
        while (rank < sv.size() && sv(rank) > cut) ++rank;
        null = svd.matrixV().rightCols(sys.S.cols() - rank);
    }
    for (Eigen::Index i = 0; i < 4; ++i) rep.M[static_cast<std::size_t>(i)] = null.middleRows(i * n, n);
    return rep;
}

double syzygy_residual(const MatrixRep& m, const CongruenceMap& c, Eigen::Index col) {
    if (col < 0 || col >= m.cols()) throw DomainError("syzygy column out of range");
    MultiHomogPoly sum(c.kind, m.mu_nu + c.degree_delta);
    double g_norm2 = 0.0;
    double psi_norm2 = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const Eigen::VectorXd column = m.M[i].col(col);
        MultiHomogPoly g(c.kind, m.mu_nu, std::vector<double>(column.data(), column.data() + column.size()));
        g_norm2 += column.squaredNorm();
        psi_norm2 += c.psi[i].norm() * c.psi[i].norm();
        sum += multiply(g, c.psi[i]);
    }
    const double denom = std::sqrt(g_norm2 * psi_norm2);
    return denom > 0.0 ? sum.norm() / denom : sum.norm();
}

}  // namespace normalproj
