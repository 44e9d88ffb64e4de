#pragma once
// The restricted Groebner fan of the homogenized Malgrange ideal over the
// nonnegative direction quadrant (p = 2): maximal cones with their marked
// reduced bases, the ray skeleton, and the shift bound kappa read off the
// V_1-order gaps of the basis elements.

#include <array>
#include <vector>

#include "bsfan/groebner.hpp"
#include "bsfan/malgrange.hpp"

namespace bsfan {

struct FanCone {
    GroebnerCone cone;            // slope interval [ray_low, ray_high] plus inequalities
    std::array<long, 2> witness;  // interior direction whose basis is stored
    MarkedBasis basis;            // reduced marked basis of h(I) at the witness
};

struct RestrictedFan {
    SigPtr hsig;
    std::vector<WeylElement> hgens; // homogenized graded basis generating h(I)
    std::vector<FanCone> cones;     // sorted by slope, interiors disjoint
    // Rays the walk landed on exactly (walls between cones); every one also
    // shows up as a facet of the two adjacent cones.
    std::vector<std::array<long, 2>> walls;
};

struct FanOptions {
    unsigned cone_budget = 64; // FanBudgetExceeded beyond this many cones/walls
    GBOptions gb;
};

// Cover the quadrant starting from (1,1): compute the marked basis and its
// cone, then probe each uncovered slope gap with the mediant of its bounding
// rays until the intervals close up.
RestrictedFan restricted_fan(const PolyPair& f, const FanOptions& opts = {});

// Deduplicated primitive facet rays sorted by slope; EmptyFan without cones.
// The quadrant's own axes count when they bound a cone unless excluded.
std::vector<std::array<long, 2>> skeleton(const RestrictedFan& fan,
                                          bool include_boundary = true);

struct KappaRow {
    WeylElement element;
    long ord_v1 = 0;    // V_1-order of the whole element
    long ord_mark = 0;  // V_1-order of its marked monomial
    long diff = 0;
};

struct KappaResult {
    std::array<long, 2> kappa{0, 0}; // second component is identically 0
    std::vector<KappaRow> rows;
};

// kappa^1 = max over every cone's basis elements of ord^{V_1}(P) minus the
// V_1-order of P's marked monomial; always >= 0.
KappaResult kappa(const PolyPair& f, const RestrictedFan& fan);

} // namespace bsfan
