#pragma once

#include <cstdint>
#include <optional>

#include "normalproj/surface.hpp"

namespace normalproj {

/// Homogenized congruence of normal lines Psi : X x P^1 --> P^3, with the
/// common monomial content of the four components already divided out.
struct CongruenceMap {
    SpaceKind kind = SpaceKind::Triangular;
    std::array<MultiHomogPoly, 4> psi;
    /// Full degree (delta, 1) of every component.
    MultiDegree degree_delta;
    /// Monomial divided out of all four components during construction.
    Monomial content_removed;
    SurfaceParam source;
};

CongruenceMap build_congruence(const SurfaceParam& s);

/// Generic degree (delta, 1) of the congruence for a surface class.
MultiDegree expected_congruence_degree(SpaceKind kind, const MultiDegree& degree_d, bool rational);

/// Complete-intersection curve (g1, t) expected in the base locus of a
/// general surface of this class, or nullopt when g1 would be a unit.
std::optional<CompleteIntersectionCurve> expected_base_curve(const SurfaceParam& s);

struct BaseLocusReport {
    std::size_t samples = 0;
    std::size_t common_zero_samples = 0;
    Monomial content_removed;
};

/// Samples points of the open torus of X x P^1 and counts those where all
/// four components vanish (relative tolerance 1e-10).
BaseLocusReport base_locus_diagnostic(const CongruenceMap& c, std::size_t samples, std::uint64_t seed = 7);

}  // namespace normalproj
