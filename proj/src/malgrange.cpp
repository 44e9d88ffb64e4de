#include "bsfan/malgrange.hpp"

#include <algorithm>
#include <sstream>

namespace bsfan {

namespace {

bool x_only(const Signature& sig, const WeylElement& e) {
    std::vector<char> used = e.used_slots();
    for (unsigned slot = 0; slot < sig.slots(); ++slot)
        if (used[slot] && sig.axis_of(slot).first != Axis::X) return false;
    return true;
}

bool s_polynomial(const Signature& sig, const WeylElement& e) {
    std::vector<char> used = e.used_slots();
    for (unsigned slot = 0; slot < sig.slots(); ++slot)
        if (used[slot] && sig.axis_of(slot).first != Axis::S) return false;
    return true;
}

bool xs_only(const Signature& sig, const WeylElement& e) {
    std::vector<char> used = e.used_slots();
    for (unsigned slot = 0; slot < sig.slots(); ++slot) {
        Axis a = sig.axis_of(slot).first;
        if (used[slot] && a != Axis::X && a != Axis::S) return false;
    }
    return true;
}

bool in_ds(const Signature& sig, const WeylElement& e) { // x, s, dx only
    std::vector<char> used = e.used_slots();
    for (unsigned slot = 0; slot < sig.slots(); ++slot) {
        Axis a = sig.axis_of(slot).first;
        if (used[slot] && a != Axis::X && a != Axis::S && a != Axis::DX) return false;
    }
    return true;
}

Scalar constant_term(const WeylElement& e) {
    Mono one(e.sig().slots(), 0);
    auto it = e.terms().find(one);
    return it == e.terms().end() ? Scalar(0) : it->second;
}

} // namespace

PolyPair PolyPair::make(unsigned n, std::vector<WeylElement> components) {
    PolyPair out;
    out.n = n;
    out.p = static_cast<unsigned>(components.size());
    if (out.p == 0) fail(Err::ArityMismatch, "need at least one polynomial");
    out.dsig = share(Signature::weyl(n, out.p));
    out.ssig = share(Signature::s_ring(n, out.p));

    out.F = WeylElement::constant(out.dsig, Scalar(1));
    out.at_origin = true;
    for (unsigned j = 0; j < out.p; ++j) {
        WeylElement fj = components[j].remap(out.dsig);
        if (fj.is_zero()) fail(Err::ZeroComponent, "zero polynomial component");
        if (!x_only(*out.dsig, fj))
            fail(Err::Internal, "components must be polynomials in x alone");
        out.F = out.F * fj;
        std::vector<WeylElement> row;
        for (unsigned i = 0; i < n; ++i) row.push_back(fj.dx_partial(i));
        out.df.push_back(std::move(row));
        if (!constant_term(fj).is_zero()) out.at_origin = false;
        out.f.push_back(std::move(fj));
    }
    return out;
}

std::vector<WeylElement> malgrange_ideal(const PolyPair& f) {
    std::vector<WeylElement> gens;
    for (unsigned j = 0; j < f.p; ++j)
        gens.push_back(WeylElement::variable(f.dsig, Axis::T, j) - f.f[j]);
    for (unsigned i = 0; i < f.n; ++i) {
        WeylElement g = WeylElement::variable(f.dsig, Axis::DX, i);
        for (unsigned j = 0; j < f.p; ++j)
            g = g + f.df[j][i] * WeylElement::variable(f.dsig, Axis::DT, j);
        gens.push_back(g);
    }
    return gens;
}

std::vector<WeylElement> s_annihilator(const PolyPair& f, const GBOptions& opts) {
    std::vector<WeylElement> gens;
    for (unsigned j = 0; j < f.p; ++j)
        gens.push_back(WeylElement::variable(f.ssig, Axis::S, j) +
                       f.f[j].remap(f.ssig) * WeylElement::variable(f.ssig, Axis::DT, j));
    for (unsigned i = 0; i < f.n; ++i) {
        WeylElement g = WeylElement::variable(f.ssig, Axis::DX, i);
        for (unsigned j = 0; j < f.p; ++j)
            g = g + f.df[j][i].remap(f.ssig) * WeylElement::variable(f.ssig, Axis::DT, j);
        gens.push_back(g);
    }
    std::vector<char> mask(f.ssig->slots(), 0);
    for (unsigned j = 0; j < f.p; ++j) mask[f.ssig->dt(j)] = 1;
    return eliminate(gens, mask, opts);
}

WeylElement MembershipCertificate::operator_form() const {
    if (!P.is_zero() || trace.empty()) return P;
    WeylElement sum = WeylElement::zero(trace.front().first.sig_ptr());
    for (const auto& [q, g] : trace) sum = sum + q * g;
    return sum;
}

std::string MembershipCertificate::str() const {
    std::ostringstream os;
    os << "b: " << b.str() << "\n";
    os << "P: " << operator_form().str() << "\n";
    for (const auto& [q, g] : trace) os << "  (" << q.str() << ") on (" << g.str() << ")\n";
    return os.str();
}

MarkedBasis membership_ideal(const PolyPair& f, const GBOptions& opts, size_t* findex) {
    std::vector<WeylElement> gens = s_annihilator(f, opts);
    if (findex) *findex = gens.size();
    gens.push_back(f.F.remap(f.ssig));

    GBOptions gb = opts;
    gb.track_reps = findex != nullptr;
    gb.rep_column = long(gens.size()) - 1; // certificates only use the F cofactor
    return buchberger(gens, TermOrder::graded(), gb);
}

std::pair<bool, std::optional<MembershipCertificate>> bs_membership(const WeylElement& b,
                                                                    const PolyPair& f,
                                                                    const GBOptions& opts,
                                                                    bool want_certificate) {
    if (b.is_zero()) fail(Err::ZeroPolynomial, "membership of the zero polynomial");
    WeylElement bs = b.remap(f.ssig);
    if (!s_polynomial(*f.ssig, bs)) fail(Err::Internal, "membership candidate must live in s");

    size_t findex = 0;
    MarkedBasis G = membership_ideal(f, opts, want_certificate ? &findex : nullptr);
    DivisionResult dr = divide(bs, G.elems, G.ord);
    if (!dr.remainder.is_zero()) return {false, std::nullopt};
    if (!want_certificate) return {true, std::nullopt};

    MembershipCertificate cert;
    cert.b = bs;
    cert.P = WeylElement::zero(f.ssig);
    for (size_t u = 0; u < G.elems.size(); ++u) {
        if (dr.cofactors[u].is_zero()) continue;
        WeylElement part = G.reps[u][findex];
        if (part.is_zero()) continue;
        cert.trace.emplace_back(dr.cofactors[u], part);
        cert.P = cert.P + dr.cofactors[u] * part;
    }
    return {true, std::move(cert)};
}

namespace {

// A section N / prod f_j^{k_j} . f^s of O[1/F, s] f^s; N commutative in x, s.
struct Section {
    WeylElement num;
    std::vector<uint32_t> den;
};

// d/dx_i of N prod f_j^{s_j - k_j}: push every pole one step deeper so the
// result sits over prod f_j^{k_j + 1}.
Section apply_dx(const Section& sec, unsigned i, const PolyPair& f) {
    const SigPtr& sig = sec.num.sig_ptr();
    Section out;
    out.den.resize(f.p);
    for (unsigned j = 0; j < f.p; ++j) out.den[j] = sec.den[j] + 1;

    WeylElement acc = sec.num.dx_partial(i);
    for (unsigned j = 0; j < f.p; ++j) acc = acc * f.f[j].remap(sig);
    for (unsigned j = 0; j < f.p; ++j) {
        WeylElement sj = WeylElement::variable(sig, Axis::S, j) -
                         WeylElement::constant(sig, Scalar(static_cast<long>(sec.den[j])));
        WeylElement piece = sj * sec.num * f.df[j][i].remap(sig);
        for (unsigned u = 0; u < f.p; ++u)
            if (u != j) piece = piece * f.f[u].remap(sig);
        acc = acc + piece;
    }
    out.num = acc;
    return out;
}

Section to_common(const Section& sec, const std::vector<uint32_t>& den, const PolyPair& f) {
    Section out;
    out.den = den;
    out.num = sec.num;
    const SigPtr& sig = sec.num.sig_ptr();
    for (unsigned j = 0; j < f.p; ++j) {
        if (den[j] < sec.den[j]) fail(Err::Internal, "common denominator too shallow");
        out.num = out.num * f.f[j].remap(sig).pow(den[j] - sec.den[j]);
    }
    return out;
}

} // namespace

bool action_check(const MembershipCertificate& cert, const PolyPair& f) {
    WeylElement P = cert.operator_form();
    if (P.is_zero() || cert.b.is_zero()) fail(Err::BadCertificate, "empty certificate");
    SigPtr sig = P.sig_ptr();
    if (!in_ds(*sig, P)) fail(Err::BadCertificate, "operator leaves D[s]");
    // b is a polynomial in s for membership certificates, but the replay also
    // accepts x factors (the tautology b = F, P = 1 is the base case).
    WeylElement b = cert.b.remap(sig);
    if (!xs_only(*sig, b)) fail(Err::BadCertificate, "b must be free of derivations");

    // P . (F f^s), term by term: derivations act first, then positions and s.
    std::vector<Section> parts;
    std::vector<uint32_t> deepest(f.p, 0);
    for (const auto& [m, c] : P.terms()) {
        Section sec{f.F.remap(sig), std::vector<uint32_t>(f.p, 0)};
        for (unsigned i = 0; i < f.n; ++i)
            for (uint32_t e = 0; e < m[sig->dx(i)]; ++e) sec = apply_dx(sec, i, f);
        Mono pos(sig->slots(), 0);
        for (unsigned i = 0; i < f.n; ++i) pos[sig->x(i)] = m[sig->x(i)];
        for (unsigned j = 0; j < f.p; ++j) pos[sig->s(j)] = m[sig->s(j)];
        sec.num = sec.num * WeylElement::from_mono(sig, pos, c);
        for (unsigned j = 0; j < f.p; ++j) deepest[j] = std::max(deepest[j], sec.den[j]);
        parts.push_back(std::move(sec));
    }

    WeylElement total = WeylElement::zero(sig);
    for (const Section& sec : parts) total = total + to_common(sec, deepest, f).num;

    WeylElement expected = b;
    for (unsigned j = 0; j < f.p; ++j)
        expected = expected * f.f[j].remap(sig).pow(deepest[j]);
    return total == expected;
}

} // namespace bsfan
