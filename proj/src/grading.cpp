#include "normalproj/grading.hpp"

#include <algorithm>
#include <sstream>

#include "normalproj/errors.hpp"

namespace normalproj {

std::size_t num_vars(SpaceKind kind) noexcept { return kind == SpaceKind::Triangular ? 5 : 6; }

std::size_t num_blocks(SpaceKind kind) noexcept { return kind == SpaceKind::Triangular ? 2 : 3; }

std::size_t num_x_blocks(SpaceKind kind) noexcept { return num_blocks(kind) - 1; }

std::string_view to_string(SpaceKind kind) noexcept {
    return kind == SpaceKind::Triangular ? "triangular" : "tensor";
}

SpaceKind parse_space_kind(std::string_view name) {
    if (name == "triangular") return SpaceKind::Triangular;
    if (name == "tensor" || name == "tensor_product" || name == "tensor-product") {
        return SpaceKind::TensorProduct;
    }
    throw DomainError("unknown space kind '" + std::string(name) + "'");
}

std::optional<std::size_t> var_index(SpaceKind kind, Var var) noexcept {
    if (kind == SpaceKind::Triangular) {
        switch (var) {
            case Var::W: return 0;
            case Var::U: return 1;
            case Var::V: return 2;
            case Var::TBar: return 3;
            case Var::T: return 4;
            default: return std::nullopt;
        }
    }
    switch (var) {
        case Var::UBar: return 0;
        case Var::U: return 1;
        case Var::VBar: return 2;
        case Var::V: return 3;
        case Var::TBar: return 4;
        case Var::T: return 5;
        default: return std::nullopt;
    }
}

std::size_t block_of(SpaceKind kind, std::size_t index) noexcept {
    if (kind == SpaceKind::Triangular) return index < 3 ? 0 : 1;
    return index / 2;
}

std::string_view var_name(SpaceKind kind, std::size_t index) noexcept {
    static constexpr std::array<std::string_view, 5> tri{"w", "u", "v", "tbar", "t"};
    static constexpr std::array<std::string_view, 6> tp{"ubar", "u", "vbar", "v", "tbar", "t"};
    return kind == SpaceKind::Triangular ? tri.at(index) : tp.at(index);
}

// ---------------------------------------------------------------------------

MultiDegree::MultiDegree(std::initializer_list<int> parts) : MultiDegree(std::vector<int>(parts)) {}

MultiDegree::MultiDegree(const std::vector<int>& parts) {
    if (parts.size() > kMaxBlocks) throw DomainError("multi-degree has too many components");
    std::copy(parts.begin(), parts.end(), parts_.begin());
    size_ = parts.size();
}

std::vector<int> MultiDegree::to_vector() const {
    return {parts_.begin(), parts_.begin() + static_cast<std::ptrdiff_t>(size_)};
}

bool MultiDegree::all_nonnegative() const noexcept {
    return std::all_of(parts_.begin(), parts_.begin() + static_cast<std::ptrdiff_t>(size_),
                       [](int x) { return x >= 0; });
}

bool MultiDegree::dominates(const MultiDegree& other) const {
    if (size_ != other.size_) throw DomainError("multi-degree arity mismatch");
    for (std::size_t i = 0; i < size_; ++i) {
        if (parts_[i] < other.parts_[i]) return false;
    }
    return true;
}

MultiDegree operator+(const MultiDegree& a, const MultiDegree& b) {
    if (a.size_ != b.size_) throw DomainError("multi-degree arity mismatch");
    MultiDegree r = a;
    for (std::size_t i = 0; i < a.size_; ++i) r.parts_[i] += b.parts_[i];
    return r;
}

MultiDegree operator-(const MultiDegree& a, const MultiDegree& b) {
    if (a.size_ != b.size_) throw DomainError("multi-degree arity mismatch");
    MultiDegree r = a;
    for (std::size_t i = 0; i < a.size_; ++i) r.parts_[i] -= b.parts_[i];
    return r;
}

bool operator==(const MultiDegree& a, const MultiDegree& b) noexcept {
    return a.size_ == b.size_ && std::equal(a.parts_.begin(), a.parts_.begin() + static_cast<std::ptrdiff_t>(a.size_),
                                            b.parts_.begin());
}

std::string MultiDegree::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < size_; ++i) os << (i ? "," : "") << parts_[i];
    os << ')';
    return os.str();
}

// ---------------------------------------------------------------------------

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exps[i] = exps[i] + other.exps[i];
    return r;
}

bool Monomial::divides(const Monomial& other) const {
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (exps[i] > other.exps[i]) return false;
    }
    return true;
}

MultiDegree Monomial::degree(SpaceKind kind) const {
    std::vector<int> parts(num_blocks(kind), 0);
    for (std::size_t i = 0; i < num_vars(kind); ++i) parts[block_of(kind, i)] += exps[i];
    return MultiDegree(parts);
}

std::string Monomial::str(SpaceKind kind) const {
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < num_vars(kind); ++i) {
        if (exps[i] == 0) continue;
        if (any) os << '*';
        os << var_name(kind, i);
        if (exps[i] > 1) os << '^' << exps[i];
        any = true;
    }
    if (!any) os << '1';
    return os.str();
}

// ---------------------------------------------------------------------------

void check_arity(SpaceKind kind, const MultiDegree& deg) {
    if (deg.size() != num_blocks(kind)) {
        throw DomainError("degree " + deg.str() + " has wrong arity for " + std::string(to_string(kind)));
    }
}

namespace {

void check_slice(SpaceKind kind, const MultiDegree& deg) {
    check_arity(kind, deg);
    if (!deg.all_nonnegative()) throw DomainError("negative degree component in " + deg.str());
}

std::size_t binom(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

std::size_t basis_size(SpaceKind kind, const MultiDegree& deg) {
    check_slice(kind, deg);
    if (kind == SpaceKind::Triangular) {
        const auto mu = static_cast<std::size_t>(deg[0]);
        return binom(mu + 2, 2) * static_cast<std::size_t>(deg[1] + 1);
    }
    return static_cast<std::size_t>(deg[0] + 1) * static_cast<std::size_t>(deg[1] + 1) *
           static_cast<std::size_t>(deg[2] + 1);
}

std::vector<Monomial> enumerate_basis(SpaceKind kind, const MultiDegree& deg) {
    check_slice(kind, deg);
    std::vector<Monomial> out;
    out.reserve(basis_size(kind, deg));
    if (kind == SpaceKind::Triangular) {
        const int mu = deg[0];
        const int n = deg[1];
        for (int a = mu; a >= 0; --a) {
            for (int b = mu - a; b >= 0; --b) {
                for (int k = n; k >= 0; --k) {
                    Monomial m;
                    m.exps = {mu - a - b, a, b, n - k, k, 0};
                    out.push_back(m);
                }
            }
        }
        return out;
    }
    const int m1 = deg[0];
    const int m2 = deg[1];
    const int n = deg[2];
    for (int a = m1; a >= 0; --a) {
        for (int b = m2; b >= 0; --b) {
            for (int k = n; k >= 0; --k) {
                Monomial m;
                m.exps = {m1 - a, a, m2 - b, b, n - k, k};
                out.push_back(m);
            }
        }
    }
    return out;
}

std::size_t monomial_index(SpaceKind kind, const MultiDegree& deg, const Monomial& m) {
    if (kind == SpaceKind::Triangular) {
        const auto mu = static_cast<std::size_t>(deg[0]);
        const auto n = static_cast<std::size_t>(deg[1]);
        const auto a = static_cast<std::size_t>(m.exps[1]);
        const auto b = static_cast<std::size_t>(m.exps[2]);
        const auto k = static_cast<std::size_t>(m.exps[4]);
        const std::size_t x = (mu - a) * (mu - a + 1) / 2 + (mu - a - b);
        return x * (n + 1) + (n - k);
    }
    const auto m1 = static_cast<std::size_t>(deg[0]);
    const auto m2 = static_cast<std::size_t>(deg[1]);
    const auto n = static_cast<std::size_t>(deg[2]);
    const auto a = static_cast<std::size_t>(m.exps[1]);
    const auto b = static_cast<std::size_t>(m.exps[3]);
    const auto k = static_cast<std::size_t>(m.exps[5]);
    return ((m1 - a) * (m2 + 1) + (m2 - b)) * (n + 1) + (n - k);
}

AffineExponents dehomogenized(SpaceKind kind, const Monomial& m) {
    if (kind == SpaceKind::Triangular) return {m.exps[1], m.exps[2], m.exps[4]};
    return {m.exps[1], m.exps[3], m.exps[5]};
}

// ---------------------------------------------------------------------------

bool region_contains(const DegreeRegion& region, const MultiDegree& deg) {
    if (deg.size() != region.arity) throw DomainError("region arity mismatch for degree " + deg.str());
    return std::any_of(region.corners.begin(), region.corners.end(), [&](const RegionCorner& c) {
        for (std::size_t i = 0; i < region.arity; ++i) {
            if (c[i] && deg[i] < *c[i]) return false;
        }
        return true;
    });
}

DegreeRegion theorem_region(SpaceKind kind, const MultiDegree& d, int e,
                            const std::optional<CompleteIntersectionCurve>& curve) {
    const std::size_t nx = num_x_blocks(kind);
    if (d.size() != nx) throw DomainError("X-degree " + d.str() + " has wrong arity");
    for (std::size_t i = 0; i < nx; ++i) {
        if (d[i] < 1) throw DomainError("X-degree components must be >= 1");
    }
    if (e < 1) throw DomainError("t-degree must be >= 1");

    int eta = 0;
    if (curve) {
        for (const CurveGenerator* g : {&curve->g1, &curve->g2}) {
            if (g->x_degree.size() != nx) throw DomainError("curve generator degree has wrong arity");
            for (std::size_t i = 0; i < nx; ++i) {
                if (g->x_degree[i] < 0 || g->x_degree[i] > d[i]) {
                    throw DomainError("curve generator degree out of range");
                }
            }
        }
        eta = std::max(e - curve->g1.t_degree - curve->g2.t_degree, 0);
    }

    DegreeRegion region;
    region.arity = nx + 1;
    if (kind == SpaceKind::Triangular) {
        const int dd = d[0];
        int second = 2 * dd - 2;
        if (curve) second += dd - std::min(curve->g1.x_degree[0], curve->g2.x_degree[0]);
        region.corners.push_back({3 * dd - 2, e - 1 + eta});
        region.corners.push_back({second, 3 * e - 1});
        return region;
    }
    std::array<int, 2> tau{0, 0};
    if (curve) {
        for (std::size_t i = 0; i < 2; ++i) {
            const int m1 = curve->g1.x_degree[i];
            const int m2 = curve->g2.x_degree[i];
            tau[i] = d[i] - std::min({2 * m1 + m2, m1 + 2 * m2, d[i]});
        }
    }
    region.corners.push_back({3 * d[0] - 1, 2 * d[1] - 1 + tau[1], e - 1 + eta});
    region.corners.push_back({2 * d[0] - 1 + tau[0], 3 * d[1] - 1, e - 1 + eta});
    region.corners.push_back({2 * d[0] - 1 + tau[0], 2 * d[1] - 1 + tau[1], 3 * e - 1});
    return region;
}

}  // namespace normalproj
