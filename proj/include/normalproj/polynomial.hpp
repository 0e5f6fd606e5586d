#pragma once

#include <span>
#include <vector>

#include "normalproj/grading.hpp"

namespace normalproj {

/// Multi-homogeneous polynomial stored densely over one degree slice; the
/// coefficient vector is indexed by enumerate_basis(kind, degree).
class MultiHomogPoly {
public:
    MultiHomogPoly() = default;
    /// Zero polynomial of the given degree.
    MultiHomogPoly(SpaceKind kind, MultiDegree degree);
    MultiHomogPoly(SpaceKind kind, MultiDegree degree, std::vector<double> coeffs);

    static MultiHomogPoly monomial(SpaceKind kind, const Monomial& m, double coeff = 1.0);
    static MultiHomogPoly constant(SpaceKind kind, double value);

    SpaceKind kind() const noexcept { return kind_; }
    const MultiDegree& degree() const noexcept { return degree_; }
    std::span<const double> coeffs() const noexcept { return coeffs_; }
    std::span<double> coeffs() noexcept { return coeffs_; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    double coeff(const Monomial& m) const;
    void set_coeff(const Monomial& m, double value);

    bool is_zero() const noexcept;
    double max_abs() const noexcept;
    double norm() const noexcept;
    /// Zeroes coefficients whose magnitude is below rel_tol * max_abs().
    void prune(double rel_tol);

    MultiHomogPoly& operator+=(const MultiHomogPoly& other);
    MultiHomogPoly& operator-=(const MultiHomogPoly& other);
    MultiHomogPoly& operator*=(double s);

    friend MultiHomogPoly operator+(MultiHomogPoly a, const MultiHomogPoly& b) { return a += b; }
    friend MultiHomogPoly operator-(MultiHomogPoly a, const MultiHomogPoly& b) { return a -= b; }
    friend MultiHomogPoly operator*(double s, MultiHomogPoly a) { return a *= s; }
    friend MultiHomogPoly operator-(MultiHomogPoly a) { return a *= -1.0; }
    friend bool operator==(const MultiHomogPoly& a, const MultiHomogPoly& b);

private:
    void check_compatible(const MultiHomogPoly& other) const;

    SpaceKind kind_ = SpaceKind::Triangular;
    MultiDegree degree_;
    std::vector<double> coeffs_;
};

MultiHomogPoly multiply(const MultiHomogPoly& a, const MultiHomogPoly& b);

struct Derivative {
    MultiHomogPoly poly;
    /// True when the variable's block already had degree zero; the result is
    /// then the zero polynomial at the original degree.
    bool clamped = false;
};

Derivative partial_derivative(const MultiHomogPoly& a, Var var);
Derivative partial_derivative(const MultiHomogPoly& a, std::size_t var_index);

/// Value at a point given as one homogeneous coordinate per variable.
double evaluate(const MultiHomogPoly& a, std::span<const double> point);

/// Largest monomial dividing every supported term of every input.
Monomial monomial_content(std::span<const MultiHomogPoly> polys);

MultiHomogPoly exact_divide_by_monomial(const MultiHomogPoly& a, const Monomial& m);

struct AffineTerm {
    AffineExponents exps;
    double coeff = 0.0;
};

/// Substitutes 1 for the homogenizing variables (w, resp. ubar and vbar) and
/// for tbar. Terms follow the canonical order; zero coefficients are dropped.
std::vector<AffineTerm> dehomogenize(const MultiHomogPoly& a);

}  // namespace normalproj
