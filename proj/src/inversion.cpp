#include "normalproj/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "normalproj/errors.hpp"

namespace normalproj {

namespace {

constexpr double kMaxPencilCondition = 1e8;
constexpr double kRatioAgreementTol = 1e-4;
constexpr double kComparableWeight = 1e-3;
// u weight of the separating form a*u + v.
constexpr double kFormWeight = 0.5772156649015329;

bool is_real(std::complex<double> z, double tol) { return std::abs(z.imag()) <= tol * (1.0 + std::abs(z.real())); }

}  // namespace

void InversionOptions::validate() const {
    if (!(rank_tol > 0.0) || !(imag_tol > 0.0) || !(verify_tol > 0.0) || !(dedup_tol > 0.0)) {
        throw DomainError("inversion tolerances must be positive");
    }
    if (max_degree_bumps < 0 || fiber_slack < 0) throw DomainError("degree bumps and fiber slack must be non-negative");
    if (!domain.unbounded && (domain.u_min > domain.u_max || domain.v_min > domain.v_max)) {
        throw DomainError("empty parameter domain");
    }
}

Eigen::Vector4d lift(const Eigen::Vector3d& p) { return {1.0, p.x(), p.y(), p.z()}; }

Eigen::MatrixXd evaluate_at(const MatrixRep& m, const Eigen::Vector4d& p) {
    if (p.isZero(0.0)) throw DomainError("the zero vector is not a projective point");
    return p[0] * m.M[0] + p[1] * m.M[1] + p[2] * m.M[2] + p[3] * m.M[3];
}

namespace {

Eigen::Index numerical_rank(const Eigen::VectorXd& sv, double rank_tol) {
    if (sv.size() == 0) return 0;
    const double cut = rank_tol * sv(0);
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > cut) ++r;
    return r;
}

}  // namespace

int corank_at(const MatrixRep& m, const Eigen::Vector4d& p, double rank_tol) {
    const Eigen::MatrixXd mp = evaluate_at(m, p);
    if (mp.cols() == 0) return static_cast<int>(mp.rows());
    Eigen::BDCSVD<Eigen::MatrixXd> svd(mp);
    return static_cast<int>(mp.rows() - numerical_rank(svd.singularValues(), rank_tol));
}

Eigen::MatrixXd cokernel_basis(const MatrixRep& m, const Eigen::Vector4d& p, double rank_tol) {
    const Eigen::MatrixXd mp = evaluate_at(m, p);
    const Eigen::Index rows = mp.rows();
    if (mp.cols() == 0) return Eigen::MatrixXd::Identity(rows, rows);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(mp, Eigen::ComputeFullU);
    const Eigen::Index rank = numerical_rank(svd.singularValues(), rank_tol);
    return svd.matrixU().rightCols(rows - rank).transpose();
}

std::optional<Monomial> shift_monomial(SpaceKind kind, const Monomial& m, ShiftVar var) {
    // (homogenizer, affine variable) exponent slots.
    std::size_t from = 0;
    std::size_t to = 0;
    if (kind == SpaceKind::Triangular) {
        from = 0;
        to = var == ShiftVar::U ? 1 : 2;
    } else {
        from = var == ShiftVar::U ? 0 : 2;
        to = from + 1;
    }
    if (m.exps[from] == 0) return std::nullopt;
    Monomial out = m;
    --out.exps[from];
    ++out.exps[to];
    return out;
}

MultiplicationPencil select_multiplication_pencil(const Eigen::MatrixXd& K, SpaceKind kind,
                                                  const std::vector<Monomial>& row_basis, ShiftVar var) {
    return var == ShiftVar::U ? select_linear_form_pencil(K, kind, row_basis, 1.0, 0.0)
                              : select_linear_form_pencil(K, kind, row_basis, 0.0, 1.0);
}

MultiplicationPencil select_linear_form_pencil(const Eigen::MatrixXd& K, SpaceKind kind, const std::vector<Monomial>& row_basis,
                                               double a, double b) {
    const Eigen::Index k = K.rows();
    if (K.cols() != static_cast<Eigen::Index>(row_basis.size())) throw DomainError("cokernel width does not match the row basis");
    if (a == 0.0 && b == 0.0) throw DomainError("the linear form must not vanish");
    MultiplicationPencil pencil;
    pencil.M1.resize(k, k);
    pencil.M2.resize(k, k);
    if (k == 0) return pencil;

    const MultiDegree deg = row_basis.front().degree(kind);
    // Row i of the basis with the indices of u*m and v*m (unused slots stay at npos).
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    struct Candidate {
        std::size_t row, u_row = npos, v_row = npos;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < row_basis.size(); ++i) {
        Candidate c{i};
        if (a != 0.0) {
            auto su = shift_monomial(kind, row_basis[i], ShiftVar::U);
            if (!su) continue;
            c.u_row = monomial_index(kind, deg, *su);
        }
        if (b != 0.0) {
            auto sv = shift_monomial(kind, row_basis[i], ShiftVar::V);
            if (!sv) continue;
            c.v_row = monomial_index(kind, deg, *sv);
        }
        candidates.push_back(c);
    }
    if (static_cast<Eigen::Index>(candidates.size()) < k) {
        throw NeedsDegreeBump("only " + std::to_string(candidates.size()) + " shiftable monomials for a cokernel of dimension " +
                              std::to_string(k));
    }

    Eigen::MatrixXd sub(k, static_cast<Eigen::Index>(candidates.size()));
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        sub.col(static_cast<Eigen::Index>(c)) = K.col(static_cast<Eigen::Index>(candidates[c].row));
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
    const auto& R = qr.matrixR();
    const double lead = std::abs(R(0, 0));
    if (lead == 0.0 || std::abs(R(k - 1, k - 1)) <= 1e-10 * lead) {
        throw NeedsDegreeBump("the shiftable rows of the cokernel are rank deficient");
    }

    std::vector<std::size_t> chosen;
    for (Eigen::Index i = 0; i < k; ++i) chosen.push_back(static_cast<std::size_t>(qr.colsPermutation().indices()(i)));
    std::sort(chosen.begin(), chosen.end());
    for (Eigen::Index i = 0; i < k; ++i) {
        const Candidate& c = candidates[chosen[static_cast<std::size_t>(i)]];
        pencil.rows.push_back(c.row);
        pencil.shifted_rows.push_back(b != 0.0 ? c.v_row : c.u_row);
        pencil.b_prime.push_back(row_basis[c.row]);
        pencil.M1.row(i) = K.col(static_cast<Eigen::Index>(c.row)).transpose();
        pencil.M2.row(i).setZero();
        if (a != 0.0) pencil.M2.row(i) += a * K.col(static_cast<Eigen::Index>(c.u_row)).transpose();
        if (b != 0.0) pencil.M2.row(i) += b * K.col(static_cast<Eigen::Index>(c.v_row)).transpose();
    }
    return pencil;
}

std::vector<EigenPair> pencil_eigenvalues(const Eigen::MatrixXd& M1, const Eigen::MatrixXd& M2) {
    const Eigen::Index k = M1.rows();
    if (M1.cols() != k || M2.rows() != k || M2.cols() != k) throw DomainError("pencil matrices must be square and equal-sized");
    std::vector<EigenPair> out;
    if (k == 0) return out;

    auto push = [&](std::complex<double> value, const Eigen::VectorXcd& x) {
        Eigen::VectorXcd y = M1.cast<std::complex<double>>() * x;
        const double n = y.norm();
        if (!(n > 0.0)) return;
        out.push_back({value, y / n, x / n});
    };

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M1);
    const auto& sv = svd.singularValues();
    const double cond = sv(k - 1) > 0.0 ? sv(0) / sv(k - 1) : std::numeric_limits<double>::infinity();
    if (cond < kMaxPencilCondition) {
        const Eigen::MatrixXd A = M1.partialPivLu().solve(M2);
        Eigen::EigenSolver<Eigen::MatrixXd> es(A);
        if (es.info() != Eigen::Success) throw NumericalFailure("eigenvalue iteration did not converge (k = " + std::to_string(k) + ")");
        for (Eigen::Index i = 0; i < k; ++i) push(es.eigenvalues()(i), es.eigenvectors().col(i));
        return out;
    }

    // Ill-conditioned M1: QZ on the pencil directly.
    Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges(M2, M1, true);
    if (ges.info() != Eigen::Success) throw NumericalFailure("QZ iteration did not converge (k = " + std::to_string(k) + ")");
    const double scale = std::max(M1.norm(), M2.norm());
    for (Eigen::Index i = 0; i < k; ++i) {
        const std::complex<double> alpha = ges.alphas()(i);
        const double beta = ges.betas()(i);
        if (std::abs(beta) <= 1e-14 * scale) continue;
        push(alpha / beta, ges.eigenvectors().col(i));
    }
    return out;
}

int class_ed_degree(SpaceKind kind, const MultiDegree& degree_d, bool rational) {
    if (kind == SpaceKind::Triangular) {
        const int d = degree_d[0];
        return rational ? 7 * d * d - 9 * d + 3 : (2 * d - 1) * (2 * d - 1);
    }
    const int d1 = degree_d[0];
    const int d2 = degree_d[1];
    return rational ? 14 * d1 * d2 - 6 * (d1 + d2) + 4 : 8 * d1 * d2 - 2 * (d1 + d2) + 1;
}

std::vector<ProjectionResult> project(const MatrixRep& m, const SurfaceParam& s, const Eigen::Vector3d& p,
                                      const InversionOptions& opts) {
    return project(m, s, lift(p), opts);
}

std::vector<ProjectionResult> project(const MatrixRep& m, const SurfaceParam& s, const Eigen::Vector4d& ph,
                                      const InversionOptions& opts) {
    opts.validate();
    if (ph.isZero(0.0)) throw DomainError("the zero vector is not a projective point");
    if (ph[0] == 0.0) throw DomainError("cannot project a point at infinity");
    if (m.kind != s.kind) throw DomainError("matrix representation and surface have different kinds");
    const Eigen::Vector3d p = ph.tail<3>() / ph[0];
    const int ed_bound = class_ed_degree(s.kind, s.degree_d, !s.is_non_rational) + opts.fiber_slack;

    // Rebuilt representations live here when the row basis is too small.
    MatrixRep bumped;
    const MatrixRep* rep = &m;
    Eigen::MatrixXd K;
    MultiplicationPencil pencil;
    double form_u = kFormWeight;
    for (int bump = 0;; ++bump) {
        K = cokernel_basis(*rep, ph, opts.rank_tol);
        if (K.rows() == 0) return {};
        if (K.rows() > ed_bound) {
            throw NonFiniteFiber("corank " + std::to_string(K.rows()) + " exceeds the expected fiber degree " +
                                 std::to_string(ed_bound) + "; the point may lie on a singular locus");
        }
        try {
            pencil = select_linear_form_pencil(K, rep->kind, rep->row_basis, kFormWeight, 1.0);
            form_u = kFormWeight;
            break;
        } catch (const NeedsDegreeBump&) {
        }
        try {
            pencil = select_multiplication_pencil(K, rep->kind, rep->row_basis, ShiftVar::V);
            form_u = 0.0;
            break;
        } catch (const NeedsDegreeBump&) {
            if (bump >= opts.max_degree_bumps) throw;
            MultiDegree deg = rep->mu_nu;
            deg[0] += 1;
            bumped = build_matrix_rep(build_congruence(s), deg, opts.rank_tol);
            rep = &bumped;
        }
    }

    // Pairs (m, u*m) inside the row basis, for reading u off an eigenvector.
    const MultiDegree deg = rep->mu_nu;
    std::vector<std::pair<std::size_t, std::size_t>> u_pairs;
    for (std::size_t i = 0; i < rep->row_basis.size(); ++i) {
        if (auto up = shift_monomial(rep->kind, rep->row_basis[i], ShiftVar::U)) {
            u_pairs.emplace_back(i, monomial_index(rep->kind, deg, *up));
        }
    }

    const Eigen::MatrixXcd Kt = K.transpose().cast<std::complex<double>>();
    std::vector<ProjectionResult> candidates;
    for (const EigenPair& ep : pencil_eigenvalues(pencil.M1, pencil.M2)) {
        if (!is_real(ep.value, opts.imag_tol)) continue;

        // Evaluation vector of the fiber point over the whole row basis.
        const Eigen::VectorXcd full = Kt * ep.coeffs;
        std::size_t best = u_pairs.size();
        std::size_t second = u_pairs.size();
        for (std::size_t j = 0; j < u_pairs.size(); ++j) {
            const double w = std::abs(full(static_cast<Eigen::Index>(u_pairs[j].first)));
            if (best == u_pairs.size() || w > std::abs(full(static_cast<Eigen::Index>(u_pairs[best].first)))) {
                second = best;
                best = j;
            } else if (second == u_pairs.size() || w > std::abs(full(static_cast<Eigen::Index>(u_pairs[second].first)))) {
                second = j;
            }
        }
        if (best == u_pairs.size()) continue;
        auto ratio = [&](std::size_t j) {
            return full(static_cast<Eigen::Index>(u_pairs[j].second)) / full(static_cast<Eigen::Index>(u_pairs[j].first));
        };
        const std::complex<double> uc = ratio(best);
        if (!std::isfinite(uc.real()) || !is_real(uc, opts.imag_tol)) continue;
        const double u = uc.real();
        const double v = ep.value.real() - form_u * u;
        if (!opts.domain.contains_u(u) || !opts.domain.contains_v(v)) continue;

        ProjectionResult r;
        r.u = u;
        r.v = v;
        r.eigenvalue = ep.value;
        const double best_weight = std::abs(full(static_cast<Eigen::Index>(u_pairs[best].first)));
        if (second != u_pairs.size() &&
            std::abs(full(static_cast<Eigen::Index>(u_pairs[second].first))) > kComparableWeight * best_weight) {
            r.low_confidence = std::abs(ratio(second) - uc) > kRatioAgreementTol * (1.0 + std::abs(uc));
        }
        try {
            r.residual = orthogonality_residual(s, p, u, v);
            r.point = eval_affine(s, u, v);
        } catch (const PoleError&) {
            continue;
        }
        if (!(r.residual <= opts.verify_tol)) continue;
        r.distance = (p - r.point).norm();
        candidates.push_back(r);
    }

    std::sort(candidates.begin(), candidates.end(), [](const ProjectionResult& a, const ProjectionResult& b) {
        return a.residual < b.residual;
    });
    std::vector<ProjectionResult> results;
    for (const auto& c : candidates) {
        auto dup = std::find_if(results.begin(), results.end(), [&](const ProjectionResult& r) {
            return std::hypot(r.u - c.u, r.v - c.v) < opts.dedup_tol;
        });
        if (dup != results.end()) {
            ++dup->multiplicity;
        } else {
            results.push_back(c);
        }
    }
    std::sort(results.begin(), results.end(), [](const ProjectionResult& a, const ProjectionResult& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
    return results;
}

int eddegree(const MatrixRep& m, int trials, std::uint64_t seed, double rank_tol) {
    if (trials < 1) throw DomainError("eddegree needs at least one trial");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    int best = std::numeric_limits<int>::max();
    for (int i = 0; i < trials; ++i) {
        const Eigen::Vector3d p(coord(rng), coord(rng), coord(rng));
        best = std::min(best, corank_at(m, lift(p), rank_tol));
    }
    return best;
}

int eddegree(const SurfaceParam& s, int trials, std::uint64_t seed, double rank_tol) {
    if (trials < 1) throw DomainError("eddegree needs at least one trial");
    const MatrixRep m = build_matrix_rep(build_congruence(s), admissible_degree(s), rank_tol);
    return eddegree(m, trials, seed, rank_tol);
}

}  // namespace normalproj
