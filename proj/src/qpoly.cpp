#include "bsfan/qpoly.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "bsfan/error.hpp"

namespace bsfan {

QPoly qp_trim(QPoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

long qp_deg(const QPoly& a) { return static_cast<long>(a.size()) - 1; }

bool qp_is_zero(const QPoly& a) { return a.empty(); }

QPoly qp_const(const mpq_class& c) {
    if (c == 0) return {};
    return {c};
}

QPoly qp_add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return qp_trim(std::move(r));
}

QPoly qp_sub(const QPoly& a, const QPoly& b) { return qp_add(a, qp_scale(b, -1)); }

QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return qp_trim(std::move(r));
}

QPoly qp_scale(const QPoly& a, const mpq_class& c) {
    if (c == 0) return {};
    QPoly r = a;
    for (auto& x : r) x *= c;
    return r;
}

QPoly qp_monic(const QPoly& a) {
    if (a.empty()) return a;
    return qp_scale(a, mpq_class(1) / a.back());
}

QPoly qp_pow(const QPoly& a, unsigned e) {
    QPoly r{mpq_class(1)};
    for (unsigned i = 0; i < e; ++i) r = qp_mul(r, a);
    return r;
}

std::pair<QPoly, QPoly> qp_divmod(const QPoly& a, const QPoly& b) {
    if (b.empty()) fail(Err::DivisionByZero, "univariate division by zero");
    QPoly rem = a, quot;
    if (a.size() >= b.size()) quot.assign(a.size() - b.size() + 1, mpq_class(0));
    while (rem.size() >= b.size()) {
        mpq_class c = rem.back() / b.back();
        size_t shift = rem.size() - b.size();
        quot[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) rem[shift + i] -= c * b[i];
        rem = qp_trim(std::move(rem));
        if (rem.size() >= shift + b.size()) fail(Err::Internal, "division failed to cancel the head");
    }
    return {qp_trim(std::move(quot)), std::move(rem)};
}

QPoly qp_divexact(const QPoly& a, const QPoly& b) {
    auto [q, r] = qp_divmod(a, b);
    if (!r.empty()) fail(Err::Internal, "inexact univariate division");
    return q;
}

QPoly qp_gcd(const QPoly& a, const QPoly& b) {
    QPoly u = a, v = b;
    while (!v.empty()) {
        auto [q, r] = qp_divmod(u, v);
        (void)q;
        u = std::move(v);
        v = std::move(r);
    }
    return qp_monic(u);
}

QPoly qp_derivative(const QPoly& a) {
    if (a.size() <= 1) return {};
    QPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = mpq_class(static_cast<long>(i)) * a[i];
    return qp_trim(std::move(r));
}

mpq_class qp_eval(const QPoly& a, const mpq_class& x) {
    mpq_class v = 0;
    for (size_t i = a.size(); i-- > 0;) v = v * x + a[i];
    return v;
}

QPoly qp_compose_linear(const QPoly& a, const mpq_class& c, const mpq_class& d) {
    QPoly v;
    QPoly arg{d, c};
    for (size_t i = a.size(); i-- > 0;) v = qp_add(qp_mul(v, arg), qp_const(a[i]));
    return v;
}

bool qp_equal(const QPoly& a, const QPoly& b) { return a == b; }

std::string qp_str(const QPoly& a, const std::string& var) {
    if (a.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] == 0) continue;
        mpq_class c = a[i];
        if (first) {
            if (c < 0) { os << "-"; c = -c; }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        if (i == 0 || c != 1) os << c.get_str();
        if (i > 0) {
            if (c != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

namespace {

// All positive divisors of |n|, by trial division. Stops early when the
// iteration cap is hit and reports the enumeration incomplete; divisors are
// then a subset and root extraction falls back to a leftover factor.
std::vector<mpz_class> divisors_capped(mpz_class n, size_t cap, bool& complete) {
    complete = true;
    if (n < 0) n = -n;
    std::vector<mpz_class> divs;
    if (n == 0) return divs;
    mpz_class d = 1;
    size_t steps = 0;
    while (d * d <= n) {
        if (++steps > cap) { complete = false; break; }
        if (n % d == 0) {
            divs.push_back(d);
            mpz_class co = n / d;
            if (co != d) divs.push_back(co);
        }
        ++d;
    }
    return divs;
}

} // namespace

QLinearFactors qp_rational_roots(const QPoly& input, size_t divisor_iteration_cap) {
    QLinearFactors out;
    QPoly a = qp_monic(qp_trim(input));
    if (qp_deg(a) <= 0) return out;

    // Zero roots come off first so the constant term below is nonzero.
    unsigned zero_mult = 0;
    while (!a.empty() && a[0] == 0) {
        a.erase(a.begin());
        ++zero_mult;
    }
    if (zero_mult > 0) out.roots.emplace_back(mpq_class(0), zero_mult);

    while (qp_deg(a) >= 1) {
        if (qp_deg(a) == 1) {
            // Monic linear: the root is immediate, no enumeration needed.
            mpq_class r = -a[0];
            bool merged = false;
            for (auto& [root, mult] : out.roots)
                if (root == r) { ++mult; merged = true; break; }
            if (!merged) out.roots.emplace_back(r, 1);
            a = {mpq_class(1)};
            break;
        }
        // Clear denominators to an integer polynomial for the candidate set.
        mpz_class den = 1;
        for (const auto& c : a) den = lcm(den, c.get_den());
        mpz_class c0 = mpq_class(a.front() * den).get_num();
        mpz_class cn = mpq_class(a.back() * den).get_num();
        bool c0_complete = true, cn_complete = true;
        auto ps = divisors_capped(c0, divisor_iteration_cap, c0_complete);
        auto qs = divisors_capped(cn, divisor_iteration_cap, cn_complete);
        bool complete = c0_complete && cn_complete;

        std::set<mpq_class> candidates;
        for (const auto& p : ps)
            for (const auto& q : qs) {
                mpq_class r(p, q);
                r.canonicalize();
                candidates.insert(r);
                candidates.insert(-r);
            }

        mpq_class found;
        bool hit = false;
        for (const auto& r : candidates)
            if (qp_eval(a, r) == 0) { found = r; hit = true; break; }
        (void)complete;
        if (!hit) break;
        unsigned mult = 0;
        QPoly lin{-found, mpq_class(1)};
        while (true) {
            auto [q, rem] = qp_divmod(a, lin);
            if (!rem.empty()) break;
            a = std::move(q);
            ++mult;
        }
        out.roots.emplace_back(found, mult);
    }

    if (qp_deg(a) >= 1) out.leftover = a;
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

} // namespace bsfan
