#include "normalproj/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "normalproj/errors.hpp"

namespace normalproj {

MultiHomogPoly::MultiHomogPoly(SpaceKind kind, MultiDegree degree)
    : kind_(kind), degree_(degree), coeffs_(basis_size(kind, degree), 0.0) {}

MultiHomogPoly::MultiHomogPoly(SpaceKind kind, MultiDegree degree, std::vector<double> coeffs)
    : kind_(kind), degree_(degree), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != basis_size(kind, degree)) {
        throw DomainError("coefficient count " + std::to_string(coeffs_.size()) + " does not match degree " +
                          degree.str());
    }
}

MultiHomogPoly MultiHomogPoly::monomial(SpaceKind kind, const Monomial& m, double coeff) {
    MultiHomogPoly p(kind, m.degree(kind));
    p.set_coeff(m, coeff);
    return p;
}

MultiHomogPoly MultiHomogPoly::constant(SpaceKind kind, double value) {
    MultiHomogPoly p(kind, MultiDegree(std::vector<int>(num_blocks(kind), 0)));
    p.coeffs_[0] = value;
    return p;
}

double MultiHomogPoly::coeff(const Monomial& m) const {
    if (!(m.degree(kind_) == degree_)) return 0.0;
    return coeffs_[monomial_index(kind_, degree_, m)];
}

void MultiHomogPoly::set_coeff(const Monomial& m, double value) {
    if (!(m.degree(kind_) == degree_)) {
        throw DomainError("monomial " + m.str(kind_) + " is not of degree " + degree_.str());
    }
    coeffs_[monomial_index(kind_, degree_, m)] = value;
}

bool MultiHomogPoly::is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

double MultiHomogPoly::max_abs() const noexcept {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

double MultiHomogPoly::norm() const noexcept {
    double s = 0.0;
    for (double c : coeffs_) s += c * c;
    return std::sqrt(s);
}

void MultiHomogPoly::prune(double rel_tol) {
    const double cut = rel_tol * max_abs();
    for (double& c : coeffs_) {
        if (std::abs(c) < cut) c = 0.0;
    }
}

void MultiHomogPoly::check_compatible(const MultiHomogPoly& other) const {
    if (kind_ != other.kind_) throw DomainError("polynomial kind mismatch");
    if (!(degree_ == other.degree_)) {
        throw DomainError("polynomial degree mismatch " + degree_.str() + " vs " + other.degree_.str());
    }
}

MultiHomogPoly& MultiHomogPoly::operator+=(const MultiHomogPoly& other) {
    check_compatible(other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

MultiHomogPoly& MultiHomogPoly::operator-=(const MultiHomogPoly& other) {
    check_compatible(other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

MultiHomogPoly& MultiHomogPoly::operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    return *this;
}

bool operator==(const MultiHomogPoly& a, const MultiHomogPoly& b) {
    return a.kind_ == b.kind_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
}

// ---------------------------------------------------------------------------

MultiHomogPoly multiply(const MultiHomogPoly& a, const MultiHomogPoly& b) {
    if (a.kind() != b.kind()) throw DomainError("cannot multiply polynomials of different kinds");
    const SpaceKind kind = a.kind();
    const MultiDegree deg = a.degree() + b.degree();
    MultiHomogPoly out(kind, deg);
    const auto basis_a = enumerate_basis(kind, a.degree());
    const auto basis_b = enumerate_basis(kind, b.degree());
    auto out_coeffs = out.coeffs();
    for (std::size_t i = 0; i < basis_a.size(); ++i) {
        const double ca = a.coeffs()[i];
        if (ca == 0.0) continue;
        for (std::size_t j = 0; j < basis_b.size(); ++j) {
            const double cb = b.coeffs()[j];
            if (cb == 0.0) continue;
            out_coeffs[monomial_index(kind, deg, basis_a[i] * basis_b[j])] += ca * cb;
        }
    }
    return out;
}

Derivative partial_derivative(const MultiHomogPoly& a, Var var) {
    const auto idx = var_index(a.kind(), var);
    if (!idx) throw DomainError("variable does not belong to this space kind");
    return partial_derivative(a, *idx);
}

Derivative partial_derivative(const MultiHomogPoly& a, std::size_t var) {
    const SpaceKind kind = a.kind();
    if (var >= num_vars(kind)) throw DomainError("variable index out of range");
    const std::size_t block = block_of(kind, var);
    if (a.degree()[block] == 0) return {MultiHomogPoly(kind, a.degree()), true};

    MultiDegree deg = a.degree();
    deg[block] -= 1;
    MultiHomogPoly out(kind, deg);
    const auto basis = enumerate_basis(kind, a.degree());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double c = a.coeffs()[i];
        if (c == 0.0 || basis[i].exps[var] == 0) continue;
        Monomial m = basis[i];
        const int e = m.exps[var]--;
        out.coeffs()[monomial_index(kind, deg, m)] += c * e;
    }
    return {std::move(out), false};
}

double evaluate(const MultiHomogPoly& a, std::span<const double> point) {
    const SpaceKind kind = a.kind();
    if (point.size() != num_vars(kind)) throw DomainError("evaluation point has wrong length");
    // Power tables per variable up to the block degree.
    std::array<std::vector<double>, kMaxVars> powers;
    for (std::size_t v = 0; v < num_vars(kind); ++v) {
        const int top = a.degree()[block_of(kind, v)];
        powers[v].resize(static_cast<std::size_t>(top) + 1);
        powers[v][0] = 1.0;
        for (int e = 1; e <= top; ++e) powers[v][static_cast<std::size_t>(e)] = powers[v][e - 1] * point[v];
    }
    const auto basis = enumerate_basis(kind, a.degree());
    double sum = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double c = a.coeffs()[i];
        if (c == 0.0) continue;
        double term = c;
        for (std::size_t v = 0; v < num_vars(kind); ++v) term *= powers[v][static_cast<std::size_t>(basis[i].exps[v])];
        sum += term;
    }
    return sum;
}

Monomial monomial_content(std::span<const MultiHomogPoly> polys) {
    Monomial content;
    content.exps.fill(std::numeric_limits<int>::max());
    bool any = false;
    for (const auto& p : polys) {
        const auto basis = enumerate_basis(p.kind(), p.degree());
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (p.coeffs()[i] == 0.0) continue;
            any = true;
            for (std::size_t v = 0; v < kMaxVars; ++v) content.exps[v] = std::min(content.exps[v], basis[i].exps[v]);
        }
    }
    if (!any) throw DomainError("monomial content of all-zero polynomials is undefined");
    return content;
}

MultiHomogPoly exact_divide_by_monomial(const MultiHomogPoly& a, const Monomial& m) {
    const SpaceKind kind = a.kind();
    const MultiDegree deg = a.degree() - m.degree(kind);
    if (!deg.all_nonnegative()) {
        if (a.is_zero()) throw DomainError("divisor degree exceeds dividend degree");
        throw DivisibilityError("monomial " + m.str(kind) + " has larger degree than the dividend");
    }
    MultiHomogPoly out(kind, deg);
    const auto basis = enumerate_basis(kind, a.degree());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double c = a.coeffs()[i];
        if (c == 0.0) continue;
        if (!m.divides(basis[i])) {
            throw DivisibilityError("term " + basis[i].str(kind) + " is not divisible by " + m.str(kind));
        }
        Monomial q;
        for (std::size_t v = 0; v < kMaxVars; ++v) q.exps[v] = basis[i].exps[v] - m.exps[v];
        out.coeffs()[monomial_index(kind, deg, q)] = c;
    }
    return out;
}

std::vector<AffineTerm> dehomogenize(const MultiHomogPoly& a) {
    std::vector<AffineTerm> out;
    const auto basis = enumerate_basis(a.kind(), a.degree());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (a.coeffs()[i] == 0.0) continue;
        out.push_back({dehomogenized(a.kind(), basis[i]), a.coeffs()[i]});
    }
    return out;
}

}  // namespace normalproj
