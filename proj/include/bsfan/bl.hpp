#pragma once
// Directional Bernstein-Sato polynomials b_L along a filtration direction L,
// by elimination through gr^L of the Malgrange ideal, plus a degree-by-degree
// linear-algebra oracle and the local strip used for the localized variant.

#include <array>
#include <optional>
#include <vector>

#include "bsfan/groebner.hpp"
#include "bsfan/malgrange.hpp"
#include "bsfan/qpoly.hpp"

namespace bsfan {

struct DirectionalResult {
    std::array<long, 2> L{0, 0}; // primitive unless normalization was disabled
    QPoly b;                     // monic in lambda
    bool localized = false;

    // Audit trail: gr^L(I), the derivation-free part, the lambda-ring stage
    // in the surviving commutative variables, and the lambda-only end.
    SigPtr lsig;
    std::vector<WeylElement> I1, I2, I3, I4;
    std::vector<unsigned> local_slots; // slots of lsig local at the origin
};

// The elimination pipeline. Throws ZeroDirection for L = (0,0),
// InadmissibleOrder for negative components, NoBFunction when the
// lambda-only intersection is zero, HypothesisViolated when localize is set
// but some component has a nonzero constant term. normalize_direction exists
// so tests can probe the scaling law on non-primitive directions.
DirectionalResult b_L(const PolyPair& f, std::array<long, 2> L, bool localize = false,
                      const GBOptions& opts = {}, bool normalize_direction = true);

// Independent check: the least degree d <= degree_bound admitting a monic
// e of degree d with e(l1*s1 + l2*s2) in gr^L(I), where s_j acts as
// -(t_j dt_j + 1). Conditions on the lower coefficients are linear, so each
// degree is an exact rational solve. nullopt when no degree works.
std::optional<QPoly> b_L_oracle(const PolyPair& f, std::array<long, 2> L,
                                unsigned degree_bound, const GBOptions& opts = {});

// Largest divisor of b still lying in <I3> after inverting units at the
// origin of the local slots: strips one rational linear factor at a time
// (an unfactorable tail is attempted as a single block) until fixpoint.
QPoly local_strip(const QPoly& b, const std::vector<WeylElement>& I3,
                  const std::vector<unsigned>& local_slots, const GBOptions& opts = {});

// b evaluated at l1*s1 + l2*s2 with s_j realized as -(t_j dt_j + 1), in the
// plain Weyl ring of f; the defining membership test reduces this against
// gr^L(I). Shared by the oracle and the invariant tests.
WeylElement rewrite_in_s(const QPoly& b, const PolyPair& f, std::array<long, 2> L);

} // namespace bsfan
