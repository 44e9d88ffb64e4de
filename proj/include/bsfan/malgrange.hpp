#pragma once
// The annihilator-type ideals attached to a pair (or tuple) of polynomials
// and the Bernstein-Sato membership oracle with replayable certificates.
//
// Conventions: f = (f_1 .. f_p) are commutative polynomials in x_1 .. x_n,
// F = f_1 ... f_p. Membership of b(s) means b(s) f^s = P . f^{s+1} for some
// operator P in D[s]; the certificate carries P and is checked against the
// symbolic action on sections r(x,s) f^s, which never touches the Groebner
// machinery.

#include <optional>
#include <utility>
#include <vector>

#include "bsfan/groebner.hpp"

namespace bsfan {

struct PolyPair {
    unsigned n = 0, p = 0;
    SigPtr dsig; // D_{x,t}
    SigPtr ssig; // D<s,dt>, whose dt-free part is D[s]
    std::vector<WeylElement> f;                // over dsig, x-support only
    WeylElement F;                             // f_1 ... f_p
    std::vector<std::vector<WeylElement>> df;  // df[j][i] = d f_j / d x_i
    bool at_origin = false;                    // every f_j(0) = 0

    // Components must be nonzero (ZeroComponent) polynomials in x alone.
    static PolyPair make(unsigned n, std::vector<WeylElement> components);
};

// Step-(0) generators in D_{x,t}: t_j - f_j and dx_i + sum_j (df_j/dx_i) dt_j.
std::vector<WeylElement> malgrange_ideal(const PolyPair& f);

// Generators of ann(f^s) in D[s]: eliminate the dt block from
// <s_j + f_j dt_j, dx_i + sum_j (df_j/dx_i) dt_j> inside D<s,dt>.
std::vector<WeylElement> s_annihilator(const PolyPair& f, const GBOptions& opts = {});

struct MembershipCertificate {
    WeylElement b; // polynomial in s
    WeylElement P; // expanded operator, empty when only the trace is kept
    // P = sum of q * g over the trace; g are members of ann(f^s) + D[s] F
    // written against the original generators, so replay stays independent.
    std::vector<std::pair<WeylElement, WeylElement>> trace;

    WeylElement operator_form() const; // P, or the trace sum
    std::string str() const;
};

// Reduced basis of ann(f^s) + D[s].F over the s-ring, the ideal whose members
// are the Bernstein-Sato polynomials of f. When findex is given the basis is
// built with single-column cofactor tracking and *findex names the column of
// F among the inputs.
MarkedBasis membership_ideal(const PolyPair& f, const GBOptions& opts = {},
                             size_t* findex = nullptr);

// Decides b(s) in ann(f^s) + D[s].F; on success the division trace is folded
// into a certificate. b = 0 is a ZeroPolynomial error. Certificate tracking
// multiplies the basis cost; pass want_certificate=false to get the verdict
// from an untracked basis (the certificate slot stays empty even on true).
std::pair<bool, std::optional<MembershipCertificate>> bs_membership(
    const WeylElement& b, const PolyPair& f, const GBOptions& opts = {},
    bool want_certificate = true);

// Independent replay: expands P.(F f^s) by the product rule on sections
// N(x,s) / (f_1^{k_1} ... f_p^{k_p}) . f^s and compares the result with b.
bool action_check(const MembershipCertificate& cert, const PolyPair& f);

} // namespace bsfan
