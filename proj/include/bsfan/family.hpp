#pragma once
// The quasihomogeneous two-variable family f_1 = c_1 x1^a + c_2 x2^b + g_1,
// f_2 = c_3 x1^c + c_4 x2^d + g_2 with coefficients in the parameter field
// Q(y): hypothesis validation, the closed-form generic Bernstein-Sato
// polynomial, and randomized specialization checks of its membership.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bsfan/malgrange.hpp"
#include "bsfan/product.hpp"

namespace bsfan {

// Minimal alpha-degree in x over the monomials of poly. ZeroElement on the
// zero polynomial; rho of a constant is 0.
long rho(const WeylElement& poly, std::array<long, 2> alpha);

struct FamilySpec {
    long a = 0, b = 0, c = 0, d = 0; // positive exponents of the leading part
    unsigned params = 0;             // arity of the parameter tuple y
    SigPtr sig;                      // weyl(2,2); coefficients carry the y's
    Scalar c1{1}, c2{1}, c3{1}, c4{1};
    WeylElement g1, g2; // tails: x-support only, coefficients over y

    std::array<long, 2> alpha1() const { return {b, a}; }
    std::array<long, 2> alpha2() const { return {d, c}; }
    long N1() const { return 2 * a * b + a * d - 2 * a - 2 * b; }
    long N2() const { return 2 * c * d + a * d - 2 * c - 2 * d; }
    WeylElement f1() const;
    WeylElement f2() const;
    std::vector<long> W1() const; // alpha1-degrees realized up to N1 + rho_a1(f2)
    std::vector<long> W2() const;

    // c_i = 1, g_i = 0, no parameters.
    static FamilySpec make(long a, long b, long c, long d);
    // Full form. Tails must involve x only (no derivatives, no t or s);
    // exponents must be positive. Shape violations are HypothesisViolated.
    static FamilySpec make(long a, long b, long c, long d, unsigned params, Scalar c1,
                           Scalar c2, Scalar c3, Scalar c4, WeylElement g1, WeylElement g2);
};

struct FamilyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct FamilyReport {
    std::vector<FamilyCheck> checks;
    bool pass() const;
    std::string str() const;
};

// One row per hypothesis: bc > ad, nonzero coefficient product, and the two
// tail weight conditions. Failures are rows, never errors.
FamilyReport validate(const FamilySpec& spec);

// (s1+1)(s2+1) prod_{r in W1}(ab s1 + ad s2 + a+b+r)
//              prod_{r in W2}(ad s1 + cd s2 + c+d+r).
// HypothesisViolated when validate fails, naming the failed rows.
FactoredBS explicit_b(const FamilySpec& spec);

struct TrialRow {
    unsigned index = 0;
    std::vector<mpq_class> y0; // drawn parameter values, C(y0) != 0
    bool member = false;
    std::optional<MembershipCertificate> certificate;
};

struct VerifyReport {
    FactoredBS b;
    std::vector<TrialRow> trials;
    bool pass() const; // every trial a member; vacuous on no trials
};

// Draw parameter values (numerators and denominators bounded; C(y0) = 0 or a
// pole forces a redraw), specialize the pair, and decide membership of
// explicit_b. A failed trial is a report row, not an error. Certificates are
// produced when want_certificate is set (they multiply the basis cost).
VerifyReport generic_verify(const FamilySpec& spec, unsigned trials, uint64_t seed,
                            long bound = 5, const GBOptions& opts = {},
                            bool want_certificate = true);

} // namespace bsfan
