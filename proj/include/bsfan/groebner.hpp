#pragma once
// Left Groebner machinery over the algebras of weyl.hpp: division with
// remainder, Buchberger completion to the unique reduced basis, block
// elimination, initial ideals along a filtration direction, Groebner cones
// of marked bases, and membership in the localization at the origin.
//
// Determinism contract: identical generating sets produce byte-identical
// bases regardless of the order the generators arrive in. Inputs are sorted
// canonically, pair selection is by smallest lcm, and the reduced basis is
// unique for a fixed term order.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "bsfan/weyl.hpp"

namespace bsfan {

struct DivisionResult {
    WeylElement remainder;
    std::vector<WeylElement> cofactors; // P = sum cofactors[i] * divisor[i] + remainder
};

struct MarkedBasis {
    SigPtr sig;
    TermOrder ord;
    std::vector<WeylElement> elems; // monic, sorted by marks ascending
    std::vector<Mono> marks;        // leading monomials under ord
    // When requested: elems[k] = sum reps[k][i] * input[i] over the original
    // generator list (certificate plumbing).
    std::vector<std::vector<WeylElement>> reps;
    bool reduced = false;

    bool contains_one() const;
};

struct GBOptions {
    bool track_reps = false;
    // With track_reps: when >= 0 only this input column is tracked and every
    // other reps column reads as zero. Cuts the bookkeeping cost when a single
    // cofactor is wanted (membership certificates only use the F column).
    long rep_column = -1;
    size_t pair_budget = 500000; // processed S-pairs before PairBudgetExceeded
};

// Left division: remainder has no term divisible by any divisor's leading
// monomial. Divisor choice is the first match in list order.
DivisionResult divide(const WeylElement& P, const std::vector<WeylElement>& divisors,
                      const TermOrder& ord, bool want_cofactors = true);

WeylElement normal_form(const WeylElement& P, const MarkedBasis& G);
WeylElement normal_form(const WeylElement& P, const std::vector<WeylElement>& divisors,
                        const TermOrder& ord);

MarkedBasis buchberger(const std::vector<WeylElement>& gens, const TermOrder& ord,
                       const GBOptions& opts = {});

// Generators of the ideal intersected with the subalgebra away from the
// masked slots: completes under a block-first order and keeps the elements
// free of the block.
std::vector<WeylElement> eliminate(const std::vector<WeylElement>& gens,
                                   const std::vector<char>& block_mask,
                                   const GBOptions& opts = {});

// Generators of gr^L(I) for an ideal of D_{x,t}: graded basis, homogenize,
// complete under total degree then the V^L-weight, take initial parts, h=1.
std::vector<WeylElement> initial_ideal(const std::vector<WeylElement>& gens,
                                       const std::vector<long>& L, const GBOptions& opts = {});

// The reduced marked basis of the homogenized ideal along L; initial_ideal is
// its initial parts at h=1, and the fan walks these markings.
MarkedBasis lh_basis(const std::vector<WeylElement>& hgens, const std::vector<long>& L,
                     const GBOptions& opts = {});

// Closed subcone of the nonnegative quadrant (p = 2) where a marked basis
// keeps its markings: intersection of half-planes a*l1 + b*l2 >= 0.
struct GroebnerCone {
    std::vector<std::array<long, 2>> halfplanes;
    std::array<long, 2> ray_low{1, 0};  // primitive extremal rays, by slope
    std::array<long, 2> ray_high{0, 1};
    bool empty = false; // degenerated to the origin

    bool contains(long l1, long l2) const;
    bool is_ray() const { return !empty && ray_low == ray_high; }
};

GroebnerCone groebner_cone(const MarkedBasis& G);

// True iff u*g lies in <J> for some u with u(0) != 0, the origin being in the
// given local slots. Everything must live in a commutative sub-signature.
bool local_membership(const WeylElement& g, const std::vector<WeylElement>& J,
                      const std::vector<unsigned>& local_slots, const GBOptions& opts = {});

} // namespace bsfan
