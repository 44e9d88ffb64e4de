#pragma once
// Exact coefficient arithmetic: Q, and the rational function field Q(y1..ym).
//
// A Scalar is either a plain rational (fast path, no allocation beyond GMP) or
// a reduced fraction num/den of multivariate polynomials in the parameters y.
// Canonical form of a fraction: gcd(num, den) = 1, den is an integer-primitive
// polynomial whose leading coefficient under graded-lex is positive, and a
// fraction that reduces to a constant collapses back to the rational case, so
// equality is plain structural comparison.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bsfan/error.hpp"

namespace bsfan {

mpq_class parse_rational(const std::string& text); // "a/b" or "a"
std::string rational_str(const mpq_class& q);

// Multivariate polynomial in y1..y_arity with rational coefficients. Exponent
// vectors always have length == arity(); arity is kept minimal (trailing
// unused variables trimmed) so equal polynomials compare equal structurally.
class MPoly {
  public:
    using Exp = std::vector<uint32_t>;

    MPoly() = default;
    explicit MPoly(const mpq_class& c);
    static MPoly variable(unsigned index); // y_{index+1}

    unsigned arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const mpq_class& constant_value() const; // requires is_constant (zero -> 0)

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator-() const;
    bool operator==(const MPoly& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }
    bool operator<(const MPoly& o) const; // arbitrary total order (for maps)

    long total_degree() const; // -1 for zero
    // Positive rational c with (*this)/c integer-coefficient and content-free.
    mpq_class content() const;
    const mpq_class& leading_coeff_grlex() const;
    MPoly scaled(const mpq_class& c) const;

    // Exact division; bugs if not divisible (internal use after gcd).
    MPoly divexact(const MPoly& divisor) const;
    static MPoly gcd(const MPoly& a, const MPoly& b);

    mpq_class eval(const std::vector<mpq_class>& point) const;
    std::string str() const;

    const std::map<Exp, mpq_class>& terms() const { return terms_; }
    void add_term(Exp e, const mpq_class& c); // builder; trims on normalize()
    void normalize();                         // drop zeros, re-trim arity

  private:
    unsigned arity_ = 0;
    std::map<Exp, mpq_class> terms_;

    void pad_to(unsigned arity);
    friend MPoly pad_merge(const MPoly& a, const MPoly& b, int sign);
};

class Scalar {
  public:
    Scalar() : q_(0) {}
    Scalar(long v) : q_(v) {}
    Scalar(const mpq_class& q) : q_(q) {}
    static Scalar from_fraction(MPoly num, MPoly den); // canonicalizes
    static Scalar parameter(unsigned index);           // y_{index+1}

    bool is_rational() const { return frac_ == nullptr; }
    bool is_zero() const { return is_rational() && q_ == 0; }
    bool is_one() const { return is_rational() && q_ == 1; }
    const mpq_class& rational() const; // requires is_rational

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const; // Err::DivisionByZero
    Scalar operator-() const;
    Scalar inverse() const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const; // arbitrary canonical order

    // Evaluate parameters at a rational point; Err::PoleAtPoint when the
    // denominator vanishes. Point shorter than the arity is an ArityMismatch.
    Scalar specialize(const std::vector<mpq_class>& point) const;

    std::string str() const;

  private:
    struct Frac {
        MPoly num, den;
    };
    mpq_class q_;
    std::shared_ptr<const Frac> frac_;

    const MPoly& num() const;
    MPoly num_or_const() const;
    MPoly den_or_one() const;
};

} // namespace bsfan
