#include "bsfan/weyl.hpp"

#include <algorithm>
#include <sstream>

namespace bsfan {

namespace {

mpz_class binom(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, static_cast<unsigned long>(k));
    return r;
}

// b (b-1) ... (b-k+1)
mpz_class falling(unsigned long b, unsigned long k) {
    mpz_class r(1);
    for (unsigned long i = 0; i < k; ++i)
        r *= static_cast<long>(b - i);
    return r;
}

mpz_class ipow(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

} // namespace

// ------------------------------------------------------------ Signature ----

Signature Signature::weyl(unsigned n, unsigned p) {
    Signature s;
    s.n = n;
    s.p = p;
    return s;
}

Signature Signature::homogenized(unsigned n, unsigned p) {
    Signature s = weyl(n, p);
    s.has_h = true;
    return s;
}

Signature Signature::lambda_ring(unsigned n, unsigned p, std::vector<long> L) {
    if (L.size() != p)
        fail(Err::ArityMismatch, "direction has " + std::to_string(L.size()) +
                                     " components, algebra has " + std::to_string(p));
    Signature s = weyl(n, p);
    s.has_lambda = true;
    s.L = std::move(L);
    return s;
}

Signature Signature::s_ring(unsigned n, unsigned p) {
    Signature s = weyl(n, p);
    s.has_s = true;
    return s;
}

Signature Signature::with_extra(unsigned k) const {
    Signature s = *this;
    s.extra = k;
    return s;
}

SigPtr share(Signature sig) { return std::make_shared<const Signature>(std::move(sig)); }

std::pair<Axis, unsigned> Signature::axis_of(unsigned slot) const {
    if (slot < n)
        return {Axis::X, slot};
    if (slot < n + p)
        return {Axis::T, slot - n};
    if (slot < n + 2 * p)
        return {Axis::S, slot - n - p};
    if (slot == h())
        return {Axis::H, 0};
    if (slot < n + 2 * p + 1 + extra)
        return {Axis::U, slot - n - 2 * p - 1};
    if (slot < dx(0) + n)
        return {Axis::DX, slot - dx(0)};
    if (slot < dt(0) + p)
        return {Axis::DT, slot - dt(0)};
    if (slot == lam())
        return {Axis::LAM, 0};
    fail(Err::Internal, "slot out of range");
}

bool Signature::allows(Axis a, unsigned index) const {
    switch (a) {
    case Axis::X: return index < n;
    // s_j realizes -dt_j t_j, so a ring owns t or s per family, never both:
    // carrying both would need the nonzero bracket [s_j, t_j] = -t_j.
    case Axis::T: return !has_s && index < p;
    case Axis::S: return has_s && index < p;
    case Axis::H: return has_h && index == 0;
    case Axis::U: return index < extra;
    case Axis::DX: return index < n;
    case Axis::DT: return index < p;
    case Axis::LAM: return has_lambda && index == 0;
    }
    return false;
}

unsigned Signature::slot_of(Axis a, unsigned index) const {
    if (!allows(a, index))
        fail(Err::SignatureMismatch, "generator not present in this algebra");
    switch (a) {
    case Axis::X: return x(index);
    case Axis::T: return t(index);
    case Axis::S: return s(index);
    case Axis::H: return h();
    case Axis::U: return u(index);
    case Axis::DX: return dx(index);
    case Axis::DT: return dt(index);
    case Axis::LAM: return lam();
    }
    fail(Err::Internal, "unreachable");
}

std::string Signature::var_name(unsigned slot) const {
    auto [a, i] = axis_of(slot);
    switch (a) {
    case Axis::X: return "x" + std::to_string(i + 1);
    case Axis::T: return "t" + std::to_string(i + 1);
    case Axis::S: return "s" + std::to_string(i + 1);
    case Axis::H: return "h";
    case Axis::U: return "u" + std::to_string(i + 1);
    case Axis::DX: return "dx" + std::to_string(i + 1);
    case Axis::DT: return "dt" + std::to_string(i + 1);
    case Axis::LAM: return "lambda";
    }
    return "?";
}

bool Signature::commute(unsigned slot_a, unsigned slot_b) const {
    auto [ka, ia] = axis_of(slot_a);
    auto [kb, ib] = axis_of(slot_b);
    if (static_cast<int>(ka) > static_cast<int>(kb)) {
        std::swap(ka, kb);
        std::swap(ia, ib);
    }
    if (ka == Axis::X && kb == Axis::DX)
        return ia != ib;
    if (ka == Axis::T && kb == Axis::DT)
        return ia != ib;
    if (ka == Axis::S && kb == Axis::DT)
        return ia != ib;
    if ((ka == Axis::T || ka == Axis::DT) && kb == Axis::LAM)
        return !has_lambda || L[ia] == 0;
    return true;
}

// ------------------------------------------------------------ monomials ----

long mono_degree(const Mono& m) {
    long d = 0;
    for (uint32_t e : m)
        d += e;
    return d;
}

long mono_weight(const Mono& m, const std::vector<long>& w) {
    long s = 0;
    for (size_t i = 0; i < m.size(); ++i)
        s += w[i] * static_cast<long>(m[i]);
    return s;
}

bool mono_divides(const Mono& d, const Mono& m) {
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i] > m[i])
            return false;
    return true;
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r = a;
    for (size_t i = 0; i < r.size(); ++i)
        r[i] += b[i];
    return r;
}

Mono mono_div(const Mono& m, const Mono& d) {
    Mono r = m;
    for (size_t i = 0; i < r.size(); ++i) {
        if (d[i] > m[i])
            fail(Err::Internal, "monomial quotient does not exist");
        r[i] -= d[i];
    }
    return r;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
    Mono r = a;
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = std::max(a[i], b[i]);
    return r;
}

std::vector<long> v_weights(const Signature& sig, const std::vector<long>& L) {
    if (L.size() != sig.p)
        fail(Err::ArityMismatch, "direction length does not match the algebra");
    std::vector<long> w(sig.slots(), 0);
    for (unsigned j = 0; j < sig.p; ++j) {
        w[sig.t(j)] = -L[j];
        w[sig.dt(j)] = L[j];
    }
    return w;
}

// ------------------------------------------------------------ TermOrder ----

TermOrder TermOrder::graded() {
    TermOrder o;
    o.crits.push_back({Kind::TotalDeg, {}});
    return o;
}

TermOrder TermOrder::block_elim(const std::vector<char>& block_mask) {
    TermOrder o;
    Criterion c{Kind::BlockDeg, {}};
    c.data.assign(block_mask.begin(), block_mask.end());
    o.crits.push_back(std::move(c));
    o.crits.push_back({Kind::TotalDeg, {}});
    return o;
}

TermOrder TermOrder::graded_weight(const std::vector<long>& weights) {
    TermOrder o;
    o.crits.push_back({Kind::TotalDeg, {}});
    o.crits.push_back({Kind::Weight, weights});
    return o;
}

TermOrder TermOrder::weight_first(const std::vector<long>& weights, const TermOrder& base) {
    TermOrder o;
    o.crits.push_back({Kind::Weight, weights});
    for (auto& c : base.crits)
        o.crits.push_back(c);
    return o;
}

namespace {

long long crit_value(const TermOrder::Criterion& c, const Mono& m) {
    long long v = 0;
    switch (c.kind) {
    case TermOrder::Kind::TotalDeg:
        for (uint32_t e : m)
            v += e;
        break;
    case TermOrder::Kind::BlockDeg:
        for (size_t i = 0; i < m.size(); ++i)
            if (c.data[i])
                v += m[i];
        break;
    case TermOrder::Kind::Weight:
        for (size_t i = 0; i < m.size(); ++i)
            v += static_cast<long long>(c.data[i]) * m[i];
        break;
    }
    return v;
}

int tie_compare(const Signature& sig, const Mono& a, const Mono& b) {
    long da = mono_degree(a), db = mono_degree(b);
    if (da != db)
        return da < db ? -1 : 1;
    auto at = [&](unsigned slot) -> int {
        if (a[slot] != b[slot])
            return a[slot] < b[slot] ? -1 : 1;
        return 0;
    };
    for (unsigned j = 0; j < sig.p; ++j)
        if (int c = at(sig.dt(j)))
            return c;
    for (unsigned i = 0; i < sig.n; ++i)
        if (int c = at(sig.dx(i)))
            return c;
    for (unsigned j = 0; j < sig.p; ++j)
        if (int c = at(sig.t(j)))
            return c;
    for (unsigned i = 0; i < sig.n; ++i)
        if (int c = at(sig.x(i)))
            return c;
    for (unsigned j = 0; j < sig.p; ++j)
        if (int c = at(sig.s(j)))
            return c;
    if (int c = at(sig.h()))
        return c;
    if (int c = at(sig.lam()))
        return c;
    for (unsigned k = 0; k < sig.extra; ++k)
        if (int c = at(sig.u(k)))
            return c;
    return 0;
}

} // namespace

int TermOrder::compare(const Signature& sig, const Mono& a, const Mono& b) const {
    for (auto& c : crits) {
        long long va = crit_value(c, a), vb = crit_value(c, b);
        if (va != vb)
            return va < vb ? -1 : 1;
    }
    return tie_compare(sig, a, b);
}

void TermOrder::validate(const Signature& sig) const {
    Mono unit(sig.slots(), 0);
    auto var = [&](unsigned slot) {
        Mono m(sig.slots(), 0);
        m[slot] = 1;
        return m;
    };
    for (unsigned slot = 0; slot < sig.slots(); ++slot) {
        auto [a, i] = sig.axis_of(slot);
        if (!sig.allows(a, i))
            continue;
        if (compare(sig, var(slot), unit) <= 0)
            fail(Err::InadmissibleOrder,
                 "generator " + sig.var_name(slot) + " does not exceed 1 under this order");
    }
    if (sig.has_h) {
        // Homogenized brackets produce h^2; products must still lead with the
        // reordered monomial.
        Mono hh(sig.slots(), 0);
        hh[sig.h()] = 2;
        for (unsigned i = 0; i < sig.n; ++i) {
            Mono m(sig.slots(), 0);
            m[sig.x(i)] = m[sig.dx(i)] = 1;
            if (compare(sig, m, hh) <= 0)
                fail(Err::InadmissibleOrder, "order drops below the homogenized bracket at x" +
                                                 std::to_string(i + 1));
        }
        for (unsigned j = 0; j < sig.p; ++j) {
            Mono m(sig.slots(), 0);
            m[sig.t(j)] = m[sig.dt(j)] = 1;
            if (compare(sig, m, hh) <= 0)
                fail(Err::InadmissibleOrder, "order drops below the homogenized bracket at t" +
                                                 std::to_string(j + 1));
        }
    }
}

// --------------------------------------------------- monomial products ----

namespace {

// One way a family can resolve: exponent decrements, an h pad keeping the
// homogenized bracket [dx, x] = h^2 honest, and an integer factor.
struct Piece {
    std::vector<std::pair<unsigned, uint32_t>> sub;
    uint32_t h_add = 0;
    mpz_class c;
};

} // namespace

void mono_mul_into(const Signature& sig, const Mono& m1, const Mono& m2, const Scalar& c,
                   std::map<Mono, Scalar>& acc) {
    Mono base(sig.slots());
    for (unsigned i = 0; i < sig.slots(); ++i)
        base[i] = m1[i] + m2[i];

    // Each contraction of a dual pair costs two degrees, which h repays in
    // the homogenized ring.
    uint32_t hweight = sig.has_h ? 2 : 0;
    std::vector<std::vector<Piece>> fams;
    for (unsigned i = 0; i < sig.n; ++i) {
        uint32_t a1 = m1[sig.dx(i)], x2 = m2[sig.x(i)];
        if (!a1 || !x2)
            continue;
        std::vector<Piece> ps;
        for (uint32_t k = 0; k <= std::min(a1, x2); ++k)
            ps.push_back({{{sig.x(i), k}, {sig.dx(i), k}},
                          hweight * k,
                          binom(a1, k) * falling(x2, k)});
        fams.push_back(std::move(ps));
    }
    for (unsigned j = 0; j < sig.p; ++j) {
        uint32_t e1 = m1[sig.dt(j)], t2 = m2[sig.t(j)], s2 = m2[sig.s(j)];
        if (!e1 || (!t2 && !s2))
            continue;
        std::vector<Piece> ps;
        for (uint32_t k = 0; k <= std::min(e1, t2); ++k) {
            mpz_class ck = binom(e1, k) * falling(t2, k);
            uint32_t d = e1 - k; // dt left over, shifts s_j by -d
            if (s2 && d) {
                mpz_class md(-static_cast<long>(d));
                for (uint32_t v = 0; v <= s2; ++v)
                    ps.push_back({{{sig.t(j), k}, {sig.dt(j), k}, {sig.s(j), s2 - v}},
                                  hweight * k + (sig.has_h ? s2 - v : 0),
                                  ck * binom(s2, v) * ipow(md, s2 - v)});
            } else {
                ps.push_back({{{sig.t(j), k}, {sig.dt(j), k}}, hweight * k, ck});
            }
        }
        fams.push_back(std::move(ps));
    }
    if (sig.has_lambda && m1[sig.lam()] > 0) {
        if (sig.has_h)
            fail(Err::Internal, "lambda products are not defined in a homogenized ring");
        // lambda passes t^b and dt^e of the right factor in one move:
        // lambda^g . m2 contributes (lambda + L.e - L.b)^g.
        long shift = 0;
        for (unsigned j = 0; j < sig.p; ++j)
            shift += sig.L[j] * (static_cast<long>(m2[sig.dt(j)]) -
                                 static_cast<long>(m2[sig.t(j)]));
        uint32_t g1 = m1[sig.lam()];
        if (shift != 0) {
            std::vector<Piece> ps;
            mpz_class S(shift);
            for (uint32_t w = 0; w <= g1; ++w)
                ps.push_back({{{sig.lam(), g1 - w}}, 0, binom(g1, w) * ipow(S, g1 - w)});
            fams.push_back(std::move(ps));
        }
    }

    if (fams.empty()) {
        auto [it, fresh] = acc.emplace(std::move(base), c);
        if (!fresh)
            it->second = it->second + c;
        return;
    }

    std::vector<std::pair<Mono, mpz_class>> cur;
    cur.emplace_back(std::move(base), mpz_class(1));
    for (auto& ps : fams) {
        std::vector<std::pair<Mono, mpz_class>> next;
        next.reserve(cur.size() * ps.size());
        for (auto& [m, k] : cur)
            for (auto& p : ps) {
                Mono mm = m;
                for (auto& [slot, d] : p.sub)
                    mm[slot] -= d;
                mm[sig.h()] += p.h_add;
                next.emplace_back(std::move(mm), k * p.c);
            }
        cur = std::move(next);
    }
    for (auto& [m, k] : cur) {
        Scalar add = c * Scalar(mpq_class(k));
        auto [it, fresh] = acc.emplace(std::move(m), add);
        if (!fresh)
            it->second = it->second + add;
    }
}

// ---------------------------------------------------------- WeylElement ----

const Signature& WeylElement::sig() const {
    if (!sig_)
        fail(Err::Internal, "element without a signature");
    return *sig_;
}

WeylElement WeylElement::constant(SigPtr sig, const Scalar& c) {
    WeylElement e(std::move(sig));
    if (!c.is_zero())
        e.terms_.emplace(Mono(e.sig().slots(), 0), c);
    return e;
}

WeylElement WeylElement::variable(SigPtr sig, Axis a, unsigned index) {
    WeylElement e(sig);
    Mono m(sig->slots(), 0);
    m[sig->slot_of(a, index)] = 1;
    e.terms_.emplace(std::move(m), Scalar(1));
    return e;
}

WeylElement WeylElement::from_mono(SigPtr sig, Mono m, const Scalar& c) {
    WeylElement e(std::move(sig));
    e.add_term(m, c);
    return e;
}

void WeylElement::add_term(const Mono& m, const Scalar& c) {
    if (m.size() != sig().slots())
        fail(Err::Internal, "monomial width does not match the algebra");
    if (c.is_zero())
        return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second = it->second + c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

static void check_same_sig(const WeylElement& a, const WeylElement& b) {
    if (a.sig() != b.sig())
        fail(Err::SignatureMismatch, "elements live in different algebras");
}

WeylElement WeylElement::operator+(const WeylElement& o) const {
    check_same_sig(*this, o);
    WeylElement r = *this;
    for (auto& [m, c] : o.terms_)
        r.add_term(m, c);
    return r;
}

WeylElement WeylElement::operator-(const WeylElement& o) const {
    check_same_sig(*this, o);
    WeylElement r = *this;
    for (auto& [m, c] : o.terms_)
        r.add_term(m, -c);
    return r;
}

WeylElement WeylElement::operator-() const {
    WeylElement r = *this;
    for (auto& [m, c] : r.terms_)
        c = -c;
    return r;
}

WeylElement WeylElement::operator*(const WeylElement& o) const {
    check_same_sig(*this, o);
    WeylElement r(sig_);
    std::map<Mono, Scalar> acc;
    for (auto& [m1, c1] : terms_)
        for (auto& [m2, c2] : o.terms_)
            mono_mul_into(*sig_, m1, m2, c1 * c2, acc);
    for (auto& [m, c] : acc)
        if (!c.is_zero())
            r.terms_.emplace(m, c);
    return r;
}

WeylElement WeylElement::operator*(const Scalar& c) const {
    WeylElement r(sig_);
    if (c.is_zero())
        return r;
    for (auto& [m, k] : terms_)
        r.terms_.emplace(m, k * c);
    return r;
}

WeylElement WeylElement::pow(unsigned e) const {
    WeylElement r = constant(sig_, Scalar(1));
    for (unsigned i = 0; i < e; ++i)
        r = r * (*this);
    return r;
}

bool WeylElement::operator==(const WeylElement& o) const {
    if (!sig_ || !o.sig_)
        return is_zero() && o.is_zero();
    return *sig_ == *o.sig_ && terms_ == o.terms_;
}

const Mono& WeylElement::lead_mono(const TermOrder& ord) const {
    if (terms_.empty())
        fail(Err::ZeroElement, "zero element has no leading monomial");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        if (ord.compare(sig(), best->first, it->first) < 0)
            best = it;
    return best->first;
}

const Scalar& WeylElement::lead_coeff(const TermOrder& ord) const {
    return terms_.at(lead_mono(ord));
}

WeylElement WeylElement::monic(const TermOrder& ord) const {
    return *this * lead_coeff(ord).inverse();
}

long WeylElement::total_degree() const {
    long d = -1;
    for (auto& [m, c] : terms_)
        d = std::max(d, mono_degree(m));
    return d;
}

long WeylElement::max_weight(const std::vector<long>& w) const {
    if (terms_.empty())
        fail(Err::ZeroElement, "zero element has no weight");
    long best = mono_weight(terms_.begin()->first, w);
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        best = std::max(best, mono_weight(it->first, w));
    return best;
}

WeylElement WeylElement::initial_part(const std::vector<long>& w) const {
    long top = max_weight(w);
    WeylElement r(sig_);
    for (auto& [m, c] : terms_)
        if (mono_weight(m, w) == top)
            r.terms_.emplace(m, c);
    return r;
}

WeylElement WeylElement::homogenize() const {
    if (sig().has_h)
        fail(Err::SignatureMismatch, "element is already in a homogenized algebra");
    Signature hs = sig();
    hs.has_h = true;
    SigPtr target = share(hs);
    WeylElement r(target);
    long top = total_degree();
    for (auto& [m, c] : terms_) {
        Mono mm = m;
        mm[sig().h()] = static_cast<uint32_t>(top - mono_degree(m));
        r.terms_.emplace(std::move(mm), c);
    }
    return r;
}

WeylElement WeylElement::dehomogenize() const {
    if (!sig().has_h)
        fail(Err::SignatureMismatch, "element is not homogenized");
    Signature ps = sig();
    ps.has_h = false;
    WeylElement r(share(ps));
    for (auto& [m, c] : terms_) {
        Mono mm = m;
        mm[sig().h()] = 0;
        r.add_term(mm, c);
    }
    return r;
}

WeylElement WeylElement::remap(SigPtr target) const {
    WeylElement r(target);
    for (auto& [m, c] : terms_) {
        Mono mm(target->slots(), 0);
        for (unsigned slot = 0; slot < m.size(); ++slot) {
            if (m[slot] == 0)
                continue;
            auto [a, i] = sig().axis_of(slot);
            mm[target->slot_of(a, i)] = m[slot];
        }
        r.add_term(mm, c);
    }
    return r;
}

WeylElement WeylElement::dx_partial(unsigned i) const {
    for (auto& [m, c] : terms_)
        if (m[sig().dx(i)] != 0)
            fail(Err::NotCommutative, "formal derivative of an operator in dx" +
                                          std::to_string(i + 1));
    WeylElement r(sig_);
    for (auto& [m, c] : terms_) {
        uint32_t e = m[sig().x(i)];
        if (e == 0)
            continue;
        Mono mm = m;
        mm[sig().x(i)] -= 1;
        r.add_term(mm, c * Scalar(static_cast<long>(e)));
    }
    return r;
}

WeylElement WeylElement::specialize(const std::vector<mpq_class>& point) const {
    WeylElement r(sig_);
    for (auto& [m, c] : terms_)
        r.add_term(m, c.specialize(point));
    return r;
}

std::vector<char> WeylElement::used_slots() const {
    std::vector<char> used(sig().slots(), 0);
    for (auto& [m, c] : terms_)
        for (unsigned i = 0; i < m.size(); ++i)
            if (m[i])
                used[i] = 1;
    return used;
}

bool WeylElement::commutative_support() const {
    std::vector<char> used = used_slots();
    for (unsigned a = 0; a < used.size(); ++a)
        for (unsigned b = a + 1; b < used.size(); ++b)
            if (used[a] && used[b] && !sig().commute(a, b))
                return false;
    return true;
}

std::string WeylElement::str() const {
    if (terms_.empty())
        return "0";
    TermOrder ord = TermOrder::graded();
    std::vector<const std::pair<const Mono, Scalar>*> sorted;
    for (auto& t : terms_)
        sorted.push_back(&t);
    std::sort(sorted.begin(), sorted.end(), [&](auto* l, auto* r) {
        return ord.compare(sig(), l->first, r->first) > 0;
    });
    std::ostringstream out;
    bool first = true;
    for (auto* t : sorted) {
        Scalar c = t->second;
        std::string mono;
        bool unit_mono = true;
        {
            std::ostringstream ms;
            auto emit = [&](unsigned slot) {
                if (t->first[slot] == 0)
                    return;
                if (!unit_mono)
                    ms << "*";
                unit_mono = false;
                ms << sig().var_name(slot);
                if (t->first[slot] > 1)
                    ms << "^" << t->first[slot];
            };
            for (unsigned i = 0; i < sig().n; ++i)
                emit(sig().x(i));
            for (unsigned j = 0; j < sig().p; ++j)
                emit(sig().t(j));
            for (unsigned j = 0; j < sig().p; ++j)
                emit(sig().s(j));
            emit(sig().h());
            for (unsigned k = 0; k < sig().extra; ++k)
                emit(sig().u(k));
            for (unsigned i = 0; i < sig().n; ++i)
                emit(sig().dx(i));
            for (unsigned j = 0; j < sig().p; ++j)
                emit(sig().dt(j));
            emit(sig().lam());
            mono = ms.str();
        }
        bool neg = false;
        std::string cs;
        if (c.is_rational()) {
            mpq_class v = c.rational();
            if (v < 0) {
                neg = true;
                v = -v;
            }
            cs = rational_str(v);
        } else {
            cs = c.str();
        }
        if (first) {
            if (neg)
                out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        first = false;
        if (unit_mono)
            out << cs;
        else if (cs == "1")
            out << mono;
        else
            out << cs << "*" << mono;
    }
    return out.str();
}

} // namespace bsfan
