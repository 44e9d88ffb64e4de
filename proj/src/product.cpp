#include "bsfan/product.hpp"

#include <algorithm>
#include <sstream>

namespace bsfan {

namespace {

bool factor_less(const BSFactor& x, const BSFactor& y) {
    if (x.l != y.l) return x.l < y.l;
    return x.a < y.a;
}

} // namespace

void FactoredBS::push(std::array<long, 2> l, const mpq_class& a, unsigned mult) {
    BSFactor f{l, a, mult};
    auto it = std::lower_bound(factors.begin(), factors.end(), f, factor_less);
    if (it != factors.end() && it->l == l && it->a == a) {
        it->mult += mult;
        return;
    }
    factors.insert(it, std::move(f));
}

long FactoredBS::degree() const {
    long d = 0;
    for (const BSFactor& f : factors) d += f.mult;
    return d;
}

std::string FactoredBS::str() const {
    if (factors.empty()) return "1";
    std::ostringstream os;
    for (const BSFactor& f : factors) {
        os << "(";
        bool lead = true;
        for (int i = 0; i < 2; ++i) {
            if (f.l[i] == 0) continue;
            if (!lead) os << " + ";
            if (f.l[i] != 1) os << f.l[i] << "*";
            os << "s" << (i + 1);
            lead = false;
        }
        if (f.a != 0 || lead) {
            if (!lead) os << (f.a < 0 ? " - " : " + ") << mpq_class(abs(f.a)).get_str();
            else os << f.a.get_str();
        }
        os << ")";
        if (f.mult > 1) os << "^" << f.mult;
    }
    return os.str();
}

WeylElement factored_to_element(const FactoredBS& b, const SigPtr& ssig) {
    WeylElement out = WeylElement::constant(ssig, Scalar(1));
    for (const BSFactor& f : b.factors) {
        WeylElement lin = WeylElement::constant(ssig, Scalar(mpq_class(f.a)));
        for (int i = 0; i < 2; ++i)
            if (f.l[i] != 0)
                lin = lin + WeylElement::variable(ssig, Axis::S, unsigned(i)) * Scalar(f.l[i]);
        for (unsigned m = 0; m < f.mult; ++m) out = out * lin;
    }
    return out;
}

bool factored_membership(const FactoredBS& b, const PolyPair& f, const GBOptions& opts) {
    if (b.factors.empty()) fail(Err::ZeroPolynomial, "membership of an empty product");
    MarkedBasis G = membership_ideal(f, opts);
    WeylElement acc = WeylElement::constant(f.ssig, Scalar(1));
    for (const BSFactor& fac : b.factors) {
        WeylElement lin = WeylElement::constant(f.ssig, Scalar(mpq_class(fac.a)));
        for (int i = 0; i < 2; ++i)
            if (fac.l[i] != 0)
                lin = lin + WeylElement::variable(f.ssig, Axis::S, unsigned(i)) * Scalar(fac.l[i]);
        for (unsigned m = 0; m < fac.mult; ++m) {
            acc = normal_form(acc * lin, G);
            if (acc.is_zero()) return true;
        }
    }
    return false;
}

ProductBreakdown bernstein_candidate(const PolyPair& f, bool verify, const FanOptions& opts,
                                     bool want_certificate) {
    ProductBreakdown out;
    RestrictedFan fan = restricted_fan(f, opts);
    out.rays = skeleton(fan);
    out.kappa = kappa(f, fan).kappa;

    for (const auto& L : out.rays) {
        RayBlock blk;
        blk.L = L;
        blk.b = b_L(f, L, /*localize=*/true, opts.gb).b;
        QLinearFactors fac = qp_rational_roots(blk.b);
        if (!fac.complete()) {
            std::ostringstream os;
            os << "b_L along (" << L[0] << "," << L[1] << ") does not split over Q";
            fail(Err::NonRationalRoot, os.str());
        }
        blk.roots = fac.roots;
        blk.shift_bound = L[0] * (out.kappa[0] + 1) + L[1] * (out.kappa[1] + 1);
        for (long k = 0; k > -blk.shift_bound; --k)
            for (const auto& [root, mult] : blk.roots)
                out.assembled.push(L, mpq_class(-k - root), unsigned(mult));
        out.blocks.push_back(std::move(blk));
    }

    if (verify) {
        if (want_certificate) {
            auto [ok, cert] = bs_membership(factored_to_element(out.assembled, f.ssig), f,
                                            opts.gb, want_certificate);
            out.verified = ok;
            out.certificate = std::move(cert);
        } else {
            out.verified = factored_membership(out.assembled, f, opts.gb);
        }
    }
    return out;
}

} // namespace bsfan
