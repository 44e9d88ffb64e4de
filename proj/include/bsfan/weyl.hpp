#pragma once
// The Weyl-type algebras the engine works in. One Signature describes which
// generators exist; elements are maps from normal-ordered monomials to
// scalars. Normal order puts positions left of derivations:
//
//   x^a t^b s^c h^d u^e . dx^i dt^j lambda^k
//
// Nonzero brackets: [dx_i, x_i] = 1 (h^2 homogenized), [dt_j, t_j] = 1,
// dt_j s_j = (s_j - 1) dt_j, lambda t_j = t_j (lambda - l_j),
// lambda dt_j = dt_j (lambda + l_j). Everything else commutes: h, u central,
// s central except against its own dt, lambda weighted by the direction L.
//
// Every signature allocates every slot block; flags only say which blocks the
// algebra actually owns, so elements can be remapped between rings cheaply
// and an unused block is carried as all-zero exponents.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bsfan/scalar.hpp"

namespace bsfan {

enum class Axis : uint8_t { X, T, S, H, DX, DT, LAM, U };

using Mono = std::vector<uint32_t>;

struct Signature {
    unsigned n = 0; // x_1..x_n
    unsigned p = 0; // t_1..t_p (and s_1..s_p, dt_1..dt_p)
    bool has_s = false;
    bool has_h = false;
    bool has_lambda = false;
    std::vector<long> L; // bracket weights for lambda, size p when has_lambda
    unsigned extra = 0;  // central auxiliary variables u_1..u_extra

    static Signature weyl(unsigned n, unsigned p);        // D_{x,t}
    static Signature homogenized(unsigned n, unsigned p); // D_{x,t}<h>
    static Signature lambda_ring(unsigned n, unsigned p, std::vector<long> L);
    static Signature s_ring(unsigned n, unsigned p); // D<s,dt> (and D[s] inside it)
    Signature with_extra(unsigned k) const;

    bool operator==(const Signature& o) const = default;

    // Slot layout: x | t | s | h | u | dx | dt | lambda.
    unsigned slots() const { return 2 * n + 3 * p + 2 + extra; }
    unsigned x(unsigned i) const { return i; }
    unsigned t(unsigned j) const { return n + j; }
    unsigned s(unsigned j) const { return n + p + j; }
    unsigned h() const { return n + 2 * p; }
    unsigned u(unsigned k) const { return n + 2 * p + 1 + k; }
    unsigned dx(unsigned i) const { return n + 2 * p + 1 + extra + i; }
    unsigned dt(unsigned j) const { return 2 * n + 2 * p + 1 + extra + j; }
    unsigned lam() const { return 2 * n + 3 * p + 1 + extra; }

    std::pair<Axis, unsigned> axis_of(unsigned slot) const;
    unsigned slot_of(Axis a, unsigned index) const; // SignatureMismatch if absent
    bool allows(Axis a, unsigned index) const;
    std::string var_name(unsigned slot) const;

    // Do the two single generators commute in this algebra?
    bool commute(unsigned slot_a, unsigned slot_b) const;
};

using SigPtr = std::shared_ptr<const Signature>;
SigPtr share(Signature sig);

long mono_degree(const Mono& m);                       // all slots
long mono_weight(const Mono& m, const std::vector<long>& w);
bool mono_divides(const Mono& d, const Mono& m);       // componentwise
Mono mono_mul(const Mono& a, const Mono& b);
Mono mono_div(const Mono& m, const Mono& d);           // requires divisibility
Mono mono_lcm(const Mono& a, const Mono& b);

// Per-slot weights of the V-filtration along direction L: t_j gets -l_j,
// dt_j gets +l_j, all other generators weigh nothing.
std::vector<long> v_weights(const Signature& sig, const std::vector<long>& L);

// A term order is a list of coarse criteria refined by a fixed graded
// lexicographic tie (total degree, then exponents along the precedence
// dt > dx > t > x > s > h > lambda > u). The tie makes every order total.
struct TermOrder {
    enum class Kind { TotalDeg, BlockDeg, Weight };
    struct Criterion {
        Kind kind;
        std::vector<long> data; // BlockDeg: 0/1 mask per slot; Weight: per-slot weights
    };
    std::vector<Criterion> crits;

    static TermOrder graded();
    // Block degree first: elements free of the block sort below everything
    // that touches it, which is what elimination needs.
    static TermOrder block_elim(const std::vector<char>& block_mask);
    // Total degree, then the weight vector: the order used to read off
    // initial forms of homogenized elements along a filtration.
    static TermOrder graded_weight(const std::vector<long>& weights);
    // The raw weight refined by a base order (kept for order experiments;
    // inadmissible whenever some generator gets negative weight).
    static TermOrder weight_first(const std::vector<long>& weights, const TermOrder& base);

    int compare(const Signature& sig, const Mono& a, const Mono& b) const; // -1/0/+1
    bool less(const Signature& sig, const Mono& a, const Mono& b) const {
        return compare(sig, a, b) < 0;
    }
    // Every generator the signature allows must exceed 1, and multiplication
    // must respect leading monomials across the nonzero brackets. Throws
    // InadmissibleOrder otherwise.
    void validate(const Signature& sig) const;
};

class WeylElement {
  public:
    WeylElement() = default;
    explicit WeylElement(SigPtr sig) : sig_(std::move(sig)) {}

    static WeylElement zero(SigPtr sig) { return WeylElement(std::move(sig)); }
    static WeylElement constant(SigPtr sig, const Scalar& c);
    static WeylElement variable(SigPtr sig, Axis a, unsigned index = 0);
    static WeylElement from_mono(SigPtr sig, Mono m, const Scalar& c);

    const Signature& sig() const;
    const SigPtr& sig_ptr() const { return sig_; }
    const std::map<Mono, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    void add_term(const Mono& m, const Scalar& c);

    WeylElement operator+(const WeylElement& o) const;
    WeylElement operator-(const WeylElement& o) const;
    WeylElement operator-() const;
    WeylElement operator*(const WeylElement& o) const;
    WeylElement operator*(const Scalar& c) const;
    WeylElement pow(unsigned e) const;
    bool operator==(const WeylElement& o) const;
    bool operator!=(const WeylElement& o) const { return !(*this == o); }

    // Leading data under an order; ZeroElement on zero.
    const Mono& lead_mono(const TermOrder& ord) const;
    const Scalar& lead_coeff(const TermOrder& ord) const;
    WeylElement monic(const TermOrder& ord) const;

    long total_degree() const; // max over terms, all slots; -1 on zero
    // Max weight over terms / the terms attaining it (the initial form).
    long max_weight(const std::vector<long>& w) const; // ZeroElement on zero
    WeylElement initial_part(const std::vector<long>& w) const;

    // Pad every term with h so all terms reach the same total degree.
    WeylElement homogenize() const;   // target owns h
    WeylElement dehomogenize() const; // h -> 1, target drops h
    WeylElement remap(SigPtr target) const;

    // Formal x_i-derivative; element must not touch dx (commutative in x).
    WeylElement dx_partial(unsigned i) const;
    // Apply Scalar::specialize to every coefficient.
    WeylElement specialize(const std::vector<mpq_class>& point) const;

    // True when every pair of generators appearing in the support commutes.
    bool commutative_support() const;
    std::vector<char> used_slots() const;

    std::string str() const;

  private:
    SigPtr sig_;
    std::map<Mono, Scalar> terms_;
};

// The normal-ordered product of two monomials lands in the accumulator.
void mono_mul_into(const Signature& sig, const Mono& m1, const Mono& m2, const Scalar& c,
                   std::map<Mono, Scalar>& acc);

} // namespace bsfan
