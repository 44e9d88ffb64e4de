#pragma once
// Candidate Bernstein-Sato polynomial of a pair assembled as the product of
// shifted directional b-functions over the fan skeleton: for every skeleton
// ray L and every integer -L(kappa + (1,1)) < k <= 0 the factorization of
// b_L(L(s) - k) contributes its linear factors.

#include <array>
#include <optional>
#include <vector>

#include "bsfan/bl.hpp"
#include "bsfan/fan.hpp"
#include "bsfan/malgrange.hpp"
#include "bsfan/qpoly.hpp"

namespace bsfan {

// l1*s1 + l2*s2 + a, repeated mult times.
struct BSFactor {
    std::array<long, 2> l;
    mpq_class a;
    unsigned mult = 1;
};

// Product of linear factors, kept sorted by (l1, l2, a) with multiplicities
// merged; the polynomial it denotes is monic up to the factor order.
struct FactoredBS {
    std::vector<BSFactor> factors;

    void push(std::array<long, 2> l, const mpq_class& a, unsigned mult = 1);
    long degree() const;
    std::string str() const;
};

// Expansion into the s-subalgebra of ssig (for membership checks).
WeylElement factored_to_element(const FactoredBS& b, const SigPtr& ssig);

// Membership of the product without expanding it: fold the factors into the
// running normal form one at a time (s is central in D[s], so reducing after
// each multiplication is sound) and stop early once the remainder vanishes.
// Far cheaper than bs_membership on the expansion when b has many factors,
// but produces no certificate.
bool factored_membership(const FactoredBS& b, const PolyPair& f, const GBOptions& opts = {});

struct RayBlock {
    std::array<long, 2> L;
    QPoly b;                                         // localized b_L, monic in lambda
    std::vector<std::pair<mpq_class, unsigned>> roots; // full rational factorization
    long shift_bound = 0; // k runs over (-shift_bound, 0]
};

struct ProductBreakdown {
    std::vector<std::array<long, 2>> rays; // fan skeleton in slope order
    std::array<long, 2> kappa{0, 0};
    std::vector<RayBlock> blocks; // one per ray, same order
    FactoredBS assembled;
    std::optional<bool> verified; // set when verify was requested
    std::optional<MembershipCertificate> certificate;
};

// Candidate Bernstein-Sato polynomial of the pair as a product over the fan
// skeleton: localized b_L per ray, lambda -> L(s) - k substitution over the
// shift window, and the assembled product. verify decides membership of the
// result (a failed check comes back verified=false rather than as an error);
// with want_certificate it expands b and runs bs_membership, without it the
// far cheaper factored_membership decides the verdict and the certificate
// slot stays empty. NonRationalRoot if some b_L does not split over Q.
ProductBreakdown bernstein_candidate(const PolyPair& f, bool verify = false,
                                     const FanOptions& opts = {},
                                     bool want_certificate = true);

} // namespace bsfan
