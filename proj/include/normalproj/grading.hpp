#pragma once

// Multi-graded bookkeeping for the coordinate rings of P^2 x P^1 and
// P^1 x P^1 x P^1.
//
// Variable order (also the JSON exponent order):
//   Triangular:    (w, u, v, tbar, t)        blocks {w,u,v} {tbar,t}
//   TensorProduct: (ubar, u, vbar, v, tbar, t) blocks {ubar,u} {vbar,v} {tbar,t}
//
// Canonical monomial order inside a degree slice: lexicographically
// descending on the dehomogenized exponents (u first, then v), with the
// t-exponent innermost and also descending. For TensorProduct (2,2,0) this
// gives u^2v^2, u^2v, u^2, uv^2, uv, u, v^2, v, 1.

#include <array>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace normalproj {

enum class SpaceKind { Triangular, TensorProduct };

inline constexpr std::size_t kMaxVars = 6;
inline constexpr std::size_t kMaxBlocks = 3;

std::size_t num_vars(SpaceKind kind) noexcept;
std::size_t num_blocks(SpaceKind kind) noexcept;
/// Number of X-blocks (1 for P^2, 2 for P^1 x P^1).
std::size_t num_x_blocks(SpaceKind kind) noexcept;
std::string_view to_string(SpaceKind kind) noexcept;
SpaceKind parse_space_kind(std::string_view name);

enum class Var { W, U, V, UBar, VBar, TBar, T };

/// Position of `var` in the kind's variable tuple, if it belongs to it.
std::optional<std::size_t> var_index(SpaceKind kind, Var var) noexcept;
/// Block that the variable at position `index` belongs to.
std::size_t block_of(SpaceKind kind, std::size_t index) noexcept;
std::string_view var_name(SpaceKind kind, std::size_t index) noexcept;

/// Degree per block: (deg_X, deg_t) or (deg_u, deg_v, deg_t).
class MultiDegree {
public:
    MultiDegree() = default;
    MultiDegree(std::initializer_list<int> parts);
    explicit MultiDegree(const std::vector<int>& parts);

    std::size_t size() const noexcept { return size_; }
    int operator[](std::size_t i) const { return parts_[i]; }
    int& operator[](std::size_t i) { return parts_[i]; }
    std::vector<int> to_vector() const;

    bool all_nonnegative() const noexcept;
    /// Component-wise >=.
    bool dominates(const MultiDegree& other) const;

    friend MultiDegree operator+(const MultiDegree& a, const MultiDegree& b);
    friend MultiDegree operator-(const MultiDegree& a, const MultiDegree& b);
    friend bool operator==(const MultiDegree& a, const MultiDegree& b) noexcept;

    std::string str() const;

private:
    std::array<int, kMaxBlocks> parts_{};
    std::size_t size_ = 0;
};

/// Exponent vector in the kind's variable order; unused slots stay zero.
struct Monomial {
    std::array<int, kMaxVars> exps{};

    friend bool operator==(const Monomial&, const Monomial&) = default;

    Monomial operator*(const Monomial& other) const;
    bool divides(const Monomial& other) const;
    /// Multi-degree of this monomial under `kind`.
    MultiDegree degree(SpaceKind kind) const;
    std::string str(SpaceKind kind) const;
};

/// Checks that `deg` has the arity required by `kind`; throws DomainError.
void check_arity(SpaceKind kind, const MultiDegree& deg);

std::size_t basis_size(SpaceKind kind, const MultiDegree& deg);
std::vector<Monomial> enumerate_basis(SpaceKind kind, const MultiDegree& deg);
/// Index of `m` in enumerate_basis(kind, deg); `m` must have degree `deg`.
std::size_t monomial_index(SpaceKind kind, const MultiDegree& deg, const Monomial& m);

/// Affine exponents (a, b) of u^a v^b after setting the homogenizing
/// variables (and tbar) to one; the t-exponent is returned separately.
struct AffineExponents {
    int u = 0;
    int v = 0;
    int t = 0;
};
AffineExponents dehomogenized(SpaceKind kind, const Monomial& m);

/// One corner of a union-of-quadrants region; std::nullopt encodes -infinity.
using RegionCorner = std::vector<std::optional<int>>;

/// Union of up-sets E(corner).
struct DegreeRegion {
    std::size_t arity = 0;
    std::vector<RegionCorner> corners;
};

bool region_contains(const DegreeRegion& region, const MultiDegree& deg);

/// Degrees (X-part, t-part) of one generator of a complete-intersection
/// base curve.
struct CurveGenerator {
    MultiDegree x_degree;
    int t_degree = 0;
};

struct CompleteIntersectionCurve {
    CurveGenerator g1;
    CurveGenerator g2;
};

/// Stabilization region for a congruence of degree (d, e). Without a curve
/// this is the region of the finite / globally generated case; with a curve
/// it is the complete-intersection residual region.
DegreeRegion theorem_region(SpaceKind kind, const MultiDegree& d, int e,
                            const std::optional<CompleteIntersectionCurve>& curve = std::nullopt);

}  // namespace normalproj
