#include "bsfan/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace bsfan {

mpq_class parse_rational(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        fail(Err::Syntax, "bad rational literal '" + text + "'");
    q.canonicalize();
    return q;
}

std::string rational_str(const mpq_class& q) {
    return q.get_str();
}

// ---------------------------------------------------------------- MPoly ----

MPoly::MPoly(const mpq_class& c) {
    if (c != 0)
        terms_.emplace(Exp{}, c);
}

MPoly MPoly::variable(unsigned index) {
    MPoly p;
    p.arity_ = index + 1;
    Exp e(index + 1, 0);
    e[index] = 1;
    p.terms_.emplace(std::move(e), mpq_class(1));
    return p;
}

bool MPoly::is_constant() const {
    if (terms_.empty())
        return true;
    if (terms_.size() != 1)
        return false;
    const Exp& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](uint32_t v) { return v == 0; });
}

const mpq_class& MPoly::constant_value() const {
    static const mpq_class zero(0);
    if (terms_.empty())
        return zero;
    return terms_.begin()->second;
}

void MPoly::pad_to(unsigned arity) {
    if (arity <= arity_)
        return;
    std::map<Exp, mpq_class> wide;
    for (auto& [e, c] : terms_) {
        Exp w = e;
        w.resize(arity, 0);
        wide.emplace(std::move(w), c);
    }
    terms_ = std::move(wide);
    arity_ = arity;
}

void MPoly::normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
    // Trim trailing variables no term uses, so arity is minimal.
    unsigned used = 0;
    for (auto& [e, c] : terms_)
        for (unsigned i = arity_; i-- > used;)
            if (e[i] != 0) {
                used = i + 1;
                break;
            }
    if (used < arity_) {
        std::map<Exp, mpq_class> slim;
        for (auto& [e, c] : terms_)
            slim.emplace(Exp(e.begin(), e.begin() + used), c);
        terms_ = std::move(slim);
        arity_ = used;
    }
}

void MPoly::add_term(Exp e, const mpq_class& c) {
    if (e.size() > arity_)
        pad_to(static_cast<unsigned>(e.size()));
    else
        e.resize(arity_, 0);
    auto [it, fresh] = terms_.emplace(std::move(e), c);
    if (!fresh)
        it->second += c;
}

MPoly pad_merge(const MPoly& a, const MPoly& b, int sign) {
    MPoly r = a;
    r.pad_to(b.arity_);
    MPoly rhs = b;
    rhs.pad_to(r.arity_);
    for (auto& [e, c] : rhs.terms_) {
        auto [it, fresh] = r.terms_.emplace(e, sign > 0 ? c : mpq_class(-c));
        if (!fresh) {
            if (sign > 0)
                it->second += c;
            else
                it->second -= c;
        }
    }
    r.normalize();
    return r;
}

MPoly MPoly::operator+(const MPoly& o) const { return pad_merge(*this, o, +1); }
MPoly MPoly::operator-(const MPoly& o) const { return pad_merge(*this, o, -1); }

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& [e, c] : r.terms_)
        c = -c;
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly a = *this, b = o;
    a.pad_to(b.arity_);
    b.pad_to(a.arity_);
    MPoly r;
    r.arity_ = a.arity_;
    for (auto& [ea, ca] : a.terms_)
        for (auto& [eb, cb] : b.terms_) {
            Exp e = ea;
            for (size_t i = 0; i < e.size(); ++i)
                e[i] += eb[i];
            auto [it, fresh] = r.terms_.emplace(std::move(e), ca * cb);
            if (!fresh)
                it->second += ca * cb;
        }
    r.normalize();
    return r;
}

bool MPoly::operator<(const MPoly& o) const {
    if (arity_ != o.arity_)
        return arity_ < o.arity_;
    return std::lexicographical_compare(
        terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
        [](const auto& l, const auto& r) {
            if (l.first != r.first)
                return l.first < r.first;
            return cmp(l.second, r.second) < 0;
        });
}

long MPoly::total_degree() const {
    long best = -1;
    for (auto& [e, c] : terms_) {
        long d = 0;
        for (uint32_t v : e)
            d += v;
        best = std::max(best, d);
    }
    return best;
}

mpq_class MPoly::content() const {
    if (terms_.empty())
        return mpq_class(0);
    mpz_class num_gcd(0), den_lcm(1);
    for (auto& [e, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    mpq_class c(num_gcd, den_lcm);
    c.canonicalize();
    return abs(c);
}

static bool grlex_less(const MPoly::Exp& a, const MPoly::Exp& b) {
    long da = 0, db = 0;
    for (uint32_t v : a)
        da += v;
    for (uint32_t v : b)
        db += v;
    if (da != db)
        return da < db;
    return a < b; // same arity within one polynomial
}

const mpq_class& MPoly::leading_coeff_grlex() const {
    if (terms_.empty())
        fail(Err::ZeroPolynomial, "leading coefficient of zero polynomial");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        if (grlex_less(best->first, it->first))
            best = it;
    return best->second;
}

MPoly MPoly::scaled(const mpq_class& c) const {
    if (c == 0)
        return MPoly();
    MPoly r = *this;
    for (auto& [e, k] : r.terms_)
        k *= c;
    return r;
}

MPoly MPoly::divexact(const MPoly& divisor) const {
    if (divisor.is_zero())
        fail(Err::DivisionByZero, "polynomial division by zero");
    if (divisor.is_constant())
        return scaled(mpq_class(1) / divisor.constant_value());
    MPoly rem = *this, quot;
    quot.arity_ = std::max(arity_, divisor.arity_);
    rem.pad_to(quot.arity_);
    MPoly div = divisor;
    div.pad_to(quot.arity_);
    // Leading term of divisor under graded-lex.
    auto dlead = div.terms_.begin();
    for (auto it = std::next(div.terms_.begin()); it != div.terms_.end(); ++it)
        if (grlex_less(dlead->first, it->first))
            dlead = it;
    while (!rem.terms_.empty()) {
        auto rlead = rem.terms_.begin();
        for (auto it = std::next(rem.terms_.begin()); it != rem.terms_.end(); ++it)
            if (grlex_less(rlead->first, it->first))
                rlead = it;
        Exp q(quot.arity_, 0);
        for (unsigned i = 0; i < quot.arity_; ++i) {
            if (rlead->first[i] < dlead->first[i])
                fail(Err::Internal, "inexact polynomial division");
            q[i] = rlead->first[i] - dlead->first[i];
        }
        mpq_class qc = rlead->second / dlead->second;
        MPoly t;
        t.arity_ = quot.arity_;
        t.terms_.emplace(q, qc);
        quot.terms_.emplace(std::move(q), qc);
        rem = rem - t * div;
        rem.pad_to(quot.arity_); // subtraction trims unused trailing variables
    }
    quot.normalize();
    return quot;
}

// Helpers for the primitive-PRS gcd: view a polynomial as univariate in its
// highest used variable with MPoly coefficients.
static long deg_in(const MPoly& p, unsigned v) {
    long d = -1;
    for (auto& [e, c] : p.terms())
        if (v < e.size())
            d = std::max(d, static_cast<long>(e[v]));
        else
            d = std::max(d, 0L);
    return d;
}

static MPoly coeff_of(const MPoly& p, unsigned v, uint32_t k) {
    MPoly r;
    for (auto& [e, c] : p.terms()) {
        uint32_t ev = v < e.size() ? e[v] : 0;
        if (ev != k)
            continue;
        MPoly::Exp stripped = e;
        if (v < stripped.size())
            stripped[v] = 0;
        r.add_term(std::move(stripped), c);
    }
    r.normalize();
    return r;
}

static MPoly times_var_pow(const MPoly& p, unsigned v, uint32_t k) {
    if (k == 0)
        return p;
    MPoly r;
    for (auto& [e, c] : p.terms()) {
        MPoly::Exp w = e;
        if (w.size() <= v)
            w.resize(v + 1, 0);
        w[v] += k;
        r.add_term(std::move(w), c);
    }
    r.normalize();
    return r;
}

static MPoly gcd_of_coeffs(const MPoly& p, unsigned v) {
    MPoly g;
    long d = deg_in(p, v);
    for (long k = 0; k <= d; ++k) {
        MPoly c = coeff_of(p, v, static_cast<uint32_t>(k));
        if (c.is_zero())
            continue;
        g = g.is_zero() ? c : MPoly::gcd(g, c);
        if (g.is_constant())
            break;
    }
    return g;
}

static MPoly make_primitive(const MPoly& p) {
    if (p.is_zero())
        return p;
    mpq_class c = p.content();
    MPoly r = p.scaled(mpq_class(1) / c);
    if (r.leading_coeff_grlex() < 0)
        r = -r;
    return r;
}

MPoly MPoly::gcd(const MPoly& a0, const MPoly& b0) {
    if (a0.is_zero())
        return make_primitive(b0);
    if (b0.is_zero())
        return make_primitive(a0);
    if (a0.is_constant() || b0.is_constant())
        return MPoly(mpq_class(1));
    unsigned v = std::max(a0.arity(), b0.arity()) - 1;
    MPoly ca = gcd_of_coeffs(a0, v), cb = gcd_of_coeffs(b0, v);
    MPoly cont = gcd(ca, cb);
    MPoly a = make_primitive(a0.divexact(ca));
    MPoly b = make_primitive(b0.divexact(cb));
    if (deg_in(a, v) < deg_in(b, v))
        std::swap(a, b);
    // Primitive pseudo-remainder sequence in the variable v.
    while (!b.is_zero()) {
        long da = deg_in(a, v), db = deg_in(b, v);
        MPoly lb = coeff_of(b, v, static_cast<uint32_t>(db));
        MPoly r = a;
        while (!r.is_zero()) {
            long dr = deg_in(r, v);
            if (dr < db)
                break;
            MPoly lr = coeff_of(r, v, static_cast<uint32_t>(dr));
            r = r * lb - times_var_pow(lr * b, v, static_cast<uint32_t>(dr - db));
        }
        (void)da;
        a = b;
        b = r.is_zero() ? r : make_primitive(r.divexact(gcd_of_coeffs(r, v)));
    }
    MPoly g = make_primitive(a.divexact(gcd_of_coeffs(a, v)));
    return make_primitive(cont * g);
}

mpq_class MPoly::eval(const std::vector<mpq_class>& point) const {
    if (point.size() < arity_)
        fail(Err::ArityMismatch, "evaluation point has " + std::to_string(point.size()) +
                                     " coordinates, polynomial uses " + std::to_string(arity_));
    mpq_class total(0);
    for (auto& [e, c] : terms_) {
        mpq_class t = c;
        for (unsigned i = 0; i < e.size(); ++i)
            for (uint32_t k = 0; k < e[i]; ++k)
                t *= point[i];
        total += t;
    }
    return total;
}

std::string MPoly::str() const {
    if (terms_.empty())
        return "0";
    // Descending graded-lex reads naturally.
    std::vector<const std::pair<const Exp, mpq_class>*> order;
    for (auto& t : terms_)
        order.push_back(&t);
    std::sort(order.begin(), order.end(),
              [](auto* l, auto* r) { return grlex_less(r->first, l->first); });
    std::ostringstream out;
    bool first = true;
    for (auto* t : order) {
        mpq_class c = t->second;
        if (first) {
            if (c < 0) {
                out << "-";
                c = -c;
            }
        } else {
            out << (c < 0 ? " - " : " + ");
            if (c < 0)
                c = -c;
        }
        first = false;
        bool bare = true;
        std::ostringstream mono;
        for (unsigned i = 0; i < t->first.size(); ++i) {
            if (t->first[i] == 0)
                continue;
            if (!bare)
                mono << "*";
            bare = false;
            mono << "y" << (i + 1);
            if (t->first[i] > 1)
                mono << "^" << t->first[i];
        }
        if (bare)
            out << rational_str(c);
        else if (c == 1)
            out << mono.str();
        else
            out << rational_str(c) << "*" << mono.str();
    }
    return out.str();
}

// --------------------------------------------------------------- Scalar ----

Scalar Scalar::from_fraction(MPoly num, MPoly den) {
    if (den.is_zero())
        fail(Err::DivisionByZero, "zero denominator");
    if (num.is_zero())
        return Scalar();
    MPoly g = MPoly::gcd(num, den);
    if (!g.is_constant()) {
        num = num.divexact(g);
        den = den.divexact(g);
    }
    // Denominator canonical: integer-primitive, positive graded-lex lead.
    mpq_class scale = den.content();
    if (den.leading_coeff_grlex() < 0)
        scale = -scale;
    den = den.scaled(mpq_class(1) / scale);
    num = num.scaled(mpq_class(1) / scale);
    if (den.is_constant() && num.is_constant())
        return Scalar(mpq_class(num.constant_value() / den.constant_value()));
    Scalar s;
    s.frac_ = std::make_shared<Frac>(Frac{std::move(num), std::move(den)});
    return s;
}

Scalar Scalar::parameter(unsigned index) {
    Scalar s;
    s.frac_ = std::make_shared<Frac>(Frac{MPoly::variable(index), MPoly(mpq_class(1))});
    return s;
}

const mpq_class& Scalar::rational() const {
    if (!is_rational())
        fail(Err::Internal, "scalar is not a plain rational");
    return q_;
}

MPoly Scalar::num_or_const() const { return frac_ ? frac_->num : MPoly(q_); }
MPoly Scalar::den_or_one() const { return frac_ ? frac_->den : MPoly(mpq_class(1)); }

Scalar Scalar::operator+(const Scalar& o) const {
    if (is_rational() && o.is_rational())
        return Scalar(mpq_class(q_ + o.q_));
    return from_fraction(num_or_const() * o.den_or_one() + o.num_or_const() * den_or_one(),
                         den_or_one() * o.den_or_one());
}

Scalar Scalar::operator-(const Scalar& o) const {
    if (is_rational() && o.is_rational())
        return Scalar(mpq_class(q_ - o.q_));
    return from_fraction(num_or_const() * o.den_or_one() - o.num_or_const() * den_or_one(),
                         den_or_one() * o.den_or_one());
}

Scalar Scalar::operator*(const Scalar& o) const {
    if (is_rational() && o.is_rational())
        return Scalar(mpq_class(q_ * o.q_));
    if (is_zero() || o.is_zero())
        return Scalar();
    return from_fraction(num_or_const() * o.num_or_const(), den_or_one() * o.den_or_one());
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero())
        fail(Err::DivisionByZero, "scalar division by zero");
    if (is_rational() && o.is_rational())
        return Scalar(mpq_class(q_ / o.q_));
    return from_fraction(num_or_const() * o.den_or_one(), den_or_one() * o.num_or_const());
}

Scalar Scalar::operator-() const {
    if (is_rational())
        return Scalar(mpq_class(-q_));
    return from_fraction(-frac_->num, frac_->den);
}

Scalar Scalar::inverse() const {
    if (is_zero())
        fail(Err::DivisionByZero, "inverse of zero");
    if (is_rational())
        return Scalar(mpq_class(1 / q_));
    return from_fraction(frac_->den, frac_->num);
}

bool Scalar::operator==(const Scalar& o) const {
    if (is_rational() != o.is_rational())
        return false;
    if (is_rational())
        return q_ == o.q_;
    return frac_->num == o.frac_->num && frac_->den == o.frac_->den;
}

bool Scalar::operator<(const Scalar& o) const {
    if (is_rational() != o.is_rational())
        return is_rational();
    if (is_rational())
        return q_ < o.q_;
    if (frac_->num != o.frac_->num)
        return frac_->num < o.frac_->num;
    return frac_->den < o.frac_->den;
}

Scalar Scalar::specialize(const std::vector<mpq_class>& point) const {
    if (is_rational())
        return *this;
    mpq_class dv = frac_->den.eval(point);
    if (dv == 0)
        fail(Err::PoleAtPoint, "denominator vanishes at the given point");
    mpq_class nv = frac_->num.eval(point);
    return Scalar(mpq_class(nv / dv));
}

std::string Scalar::str() const {
    if (is_rational())
        return rational_str(q_);
    std::string n = frac_->num.str();
    if (frac_->den.is_constant() && frac_->den.constant_value() == 1)
        return frac_->num.terms().size() > 1 ? "(" + n + ")" : n;
    std::string d = frac_->den.str();
    std::string ln = frac_->num.terms().size() > 1 ? "(" + n + ")" : n;
    std::string ld = frac_->den.terms().size() > 1 ? "(" + d + ")" : d;
    return ln + "/" + ld;
}

} // namespace bsfan
