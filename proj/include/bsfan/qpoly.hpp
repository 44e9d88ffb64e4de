#pragma once
// Exact univariate polynomials over Q, coefficients ascending. The zero
// polynomial is the empty vector; everything else keeps a nonzero back().

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace bsfan {

using QPoly = std::vector<mpq_class>;

QPoly qp_trim(QPoly a);
long qp_deg(const QPoly& a); // -1 for zero
bool qp_is_zero(const QPoly& a);
QPoly qp_const(const mpq_class& c);
QPoly qp_add(const QPoly& a, const QPoly& b);
QPoly qp_sub(const QPoly& a, const QPoly& b);
QPoly qp_mul(const QPoly& a, const QPoly& b);
QPoly qp_scale(const QPoly& a, const mpq_class& c);
QPoly qp_monic(const QPoly& a);
QPoly qp_pow(const QPoly& a, unsigned e);
std::pair<QPoly, QPoly> qp_divmod(const QPoly& a, const QPoly& b); // DivisionByZero
QPoly qp_divexact(const QPoly& a, const QPoly& b);                 // Internal if remainder
QPoly qp_gcd(const QPoly& a, const QPoly& b);                      // monic
QPoly qp_derivative(const QPoly& a);
mpq_class qp_eval(const QPoly& a, const mpq_class& x);
// a(c * x + d) for rational c, d: the substitution used to move a polynomial
// in lambda onto a linear form in s.
QPoly qp_compose_linear(const QPoly& a, const mpq_class& c, const mpq_class& d);
bool qp_equal(const QPoly& a, const QPoly& b);
std::string qp_str(const QPoly& a, const std::string& var = "lambda");

// Rational linear factors by root search (rational root theorem with capped
// divisor enumeration); leftover is monic with no rational root found, or
// empty when the factorization is complete. The scalar content is dropped,
// so this describes the monic normalization of the input.
struct QLinearFactors {
    std::vector<std::pair<mpq_class, unsigned>> roots; // sorted ascending
    QPoly leftover;                                    // empty, or monic of degree >= 2
    bool complete() const { return leftover.empty(); }
};
QLinearFactors qp_rational_roots(const QPoly& a, size_t divisor_iteration_cap = 1000000);

} // namespace bsfan
