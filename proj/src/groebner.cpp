#include "bsfan/groebner.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace bsfan {

namespace {

struct MonoGreater {
    const Signature* sig;
    const TermOrder* ord;
    bool operator()(const Mono& a, const Mono& b) const { return ord->compare(*sig, a, b) > 0; }
};

// Total order on elements: by terms from the leading one down. Used to make
// every pipeline stage independent of the order generators arrived in.
bool elem_less(const WeylElement& a, const WeylElement& b, const Signature& sig,
               const TermOrder& ord) {
    auto ta = std::vector<std::pair<Mono, Scalar>>(a.terms().begin(), a.terms().end());
    auto tb = std::vector<std::pair<Mono, Scalar>>(b.terms().begin(), b.terms().end());
    auto desc = [&](auto& l, auto& r) { return ord.compare(sig, l.first, r.first) > 0; };
    std::sort(ta.begin(), ta.end(), desc);
    std::sort(tb.begin(), tb.end(), desc);
    for (size_t k = 0; k < std::min(ta.size(), tb.size()); ++k) {
        int c = ord.compare(sig, ta[k].first, tb[k].first);
        if (c != 0) return c < 0;
        if (ta[k].second != tb[k].second) return ta[k].second < tb[k].second;
    }
    return ta.size() < tb.size();
}

void require_same_sig(const SigPtr& sig, const WeylElement& e) {
    if (e.sig_ptr() && !(e.sig() == *sig))
        fail(Err::SignatureMismatch, "mixed signatures in one ideal");
}

bool mono_is_one(const Mono& m) {
    return std::all_of(m.begin(), m.end(), [](uint32_t e) { return e == 0; });
}

} // namespace

bool MarkedBasis::contains_one() const {
    for (const Mono& m : marks)
        if (mono_is_one(m)) return true;
    return false;
}

DivisionResult divide_ptrs(const WeylElement& P, const std::vector<const WeylElement*>& divisors,
                           const TermOrder& ord, bool want_cofactors) {
    SigPtr sig = P.sig_ptr();
    DivisionResult out;
    out.remainder = WeylElement::zero(sig);
    if (want_cofactors) out.cofactors.assign(divisors.size(), WeylElement::zero(sig));
    if (P.is_zero()) return out;

    struct Div {
        size_t index;
        const WeylElement* elem;
        const Mono* lm;
        Scalar lc;
    };
    std::vector<Div> divs;
    for (size_t i = 0; i < divisors.size(); ++i) {
        if (!divisors[i] || divisors[i]->is_zero()) continue;
        require_same_sig(sig, *divisors[i]);
        divs.push_back(
            {i, divisors[i], &divisors[i]->lead_mono(ord), divisors[i]->lead_coeff(ord)});
    }

    std::map<Mono, Scalar, MonoGreater> working(MonoGreater{sig.get(), &ord});
    for (const auto& [m, c] : P.terms()) working.emplace(m, c);

    while (!working.empty()) {
        auto lead = working.begin();
        const Mono m = lead->first;
        const Scalar c = lead->second;
        const Div* hit = nullptr;
        for (const Div& d : divs)
            if (mono_divides(*d.lm, m)) {
                hit = &d;
                break;
            }
        if (!hit) {
            out.remainder.add_term(m, c);
            working.erase(lead);
            continue;
        }
        Mono delta = mono_div(m, *hit->lm);
        Scalar q = c / hit->lc;
        if (want_cofactors) out.cofactors[hit->index].add_term(delta, q);
        // Subtract q * x^delta * divisor; its lead is exactly (m, c), so the
        // head cancels and every surviving new term is strictly smaller.
        std::map<Mono, Scalar> prod;
        for (const auto& [dm, dc] : hit->elem->terms()) mono_mul_into(*sig, delta, dm, q * dc, prod);
        for (const auto& [pm, pc] : prod) {
            auto it = working.find(pm);
            if (it == working.end()) {
                working.emplace(pm, -pc);
            } else {
                it->second = it->second - pc;
                if (it->second.is_zero()) working.erase(it);
            }
        }
    }
    return out;
}

DivisionResult divide(const WeylElement& P, const std::vector<WeylElement>& divisors,
                      const TermOrder& ord, bool want_cofactors) {
    std::vector<const WeylElement*> ptrs;
    ptrs.reserve(divisors.size());
    for (const WeylElement& d : divisors) ptrs.push_back(&d);
    return divide_ptrs(P, ptrs, ord, want_cofactors);
}

WeylElement normal_form(const WeylElement& P, const std::vector<WeylElement>& divisors,
                        const TermOrder& ord) {
    return divide(P, divisors, ord, false).remainder;
}

WeylElement normal_form(const WeylElement& P, const MarkedBasis& G) {
    return divide(P, G.elems, G.ord, false).remainder;
}

namespace {

struct Item {
    WeylElement elem;
    Mono lm;
    Scalar lc;
    std::vector<WeylElement> rep; // over the original inputs, when tracked
};

// Reduce P against the current items, folding the division cofactors into the
// representation so r = rep_P - sum q_u rep_u stays an identity over inputs.
Item reduce_item(WeylElement P, std::vector<WeylElement> rep, const std::vector<Item>& items,
                 const TermOrder& ord, bool track, size_t exclude = SIZE_MAX) {
    std::vector<const WeylElement*> elems;
    elems.reserve(items.size());
    for (size_t u = 0; u < items.size(); ++u)
        elems.push_back(u == exclude ? nullptr : &items[u].elem);
    DivisionResult dr = divide_ptrs(P, elems, ord, track);
    if (track) {
        for (size_t u = 0; u < items.size(); ++u) {
            if (u == exclude || dr.cofactors[u].is_zero()) continue;
            for (size_t k = 0; k < rep.size(); ++k) {
                if (items[u].rep[k].is_zero()) continue;
                rep[k] = rep[k] - dr.cofactors[u] * items[u].rep[k];
            }
        }
    }
    Item out;
    out.elem = std::move(dr.remainder);
    out.rep = std::move(rep);
    if (!out.elem.is_zero()) {
        out.lm = out.elem.lead_mono(ord);
        out.lc = out.elem.lead_coeff(ord);
    }
    return out;
}

bool coprime(const Mono& a, const Mono& b) {
    for (size_t k = 0; k < std::min(a.size(), b.size()); ++k)
        if (a[k] != 0 && b[k] != 0) return false;
    return true;
}

} // namespace

MarkedBasis buchberger(const std::vector<WeylElement>& gens, const TermOrder& ord,
                       const GBOptions& opts) {
    MarkedBasis out;
    out.ord = ord;
    out.reduced = true;

    SigPtr sig;
    for (const WeylElement& g : gens)
        if (!g.is_zero()) {
            sig = g.sig_ptr();
            break;
        }
    if (!sig) return out; // no nonzero generators
    out.sig = sig;
    ord.validate(*sig);

    const bool track = opts.track_reps;
    auto unit_rep = [&](size_t i) {
        std::vector<WeylElement> r;
        if (!track) return r;
        r.assign(gens.size(), WeylElement::zero(sig));
        if (opts.rep_column < 0 || size_t(opts.rep_column) == i)
            r[i] = WeylElement::constant(sig, Scalar(1));
        return r;
    };

    std::vector<Item> inputs;
    for (size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].is_zero()) continue;
        require_same_sig(sig, gens[i]);
        Item it;
        it.elem = gens[i];
        it.lm = gens[i].lead_mono(ord);
        it.lc = gens[i].lead_coeff(ord);
        it.rep = unit_rep(i);
        inputs.push_back(std::move(it));
    }
    std::stable_sort(inputs.begin(), inputs.end(), [&](const Item& a, const Item& b) {
        return elem_less(a.elem, b.elem, *sig, ord);
    });

    // The product criterion is only sound when the whole run stays inside a
    // commutative sub-signature (an S-pair like the one of {dx, x} reduces to
    // a unit even though the leads are coprime).
    std::vector<char> used(sig->slots(), 0);
    for (const Item& it : inputs) {
        std::vector<char> u = it.elem.used_slots();
        for (unsigned k = 0; k < sig->slots(); ++k) used[k] |= u[k];
    }
    bool commutative_run = true;
    for (unsigned a = 0; a < sig->slots() && commutative_run; ++a)
        for (unsigned b = a + 1; b < sig->slots(); ++b)
            if (used[a] && used[b] && !sig->commute(a, b)) {
                commutative_run = false;
                break;
            }

    std::vector<Item> basis;
    struct PairLess {
        const Signature* sig;
        const TermOrder* ord;
        bool operator()(const std::tuple<Mono, size_t, size_t>& a,
                        const std::tuple<Mono, size_t, size_t>& b) const {
            int c = ord->compare(*sig, std::get<0>(a), std::get<0>(b));
            if (c != 0) return c < 0;
            if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
            return std::get<2>(a) < std::get<2>(b);
        }
    };
    std::set<std::tuple<Mono, size_t, size_t>, PairLess> queue(PairLess{sig.get(), &ord});

    auto add_element = [&](Item&& it) {
        size_t j = basis.size();
        for (size_t i = 0; i < j; ++i) queue.emplace(mono_lcm(basis[i].lm, it.lm), i, j);
        basis.push_back(std::move(it));
    };

    for (Item& in : inputs) {
        Item r = reduce_item(std::move(in.elem), std::move(in.rep), basis, ord, track);
        if (!r.elem.is_zero()) add_element(std::move(r));
    }

    size_t processed = 0;
    while (!queue.empty()) {
        auto [gamma, i, j] = *queue.begin();
        queue.erase(queue.begin());
        if (++processed > opts.pair_budget)
            fail(Err::PairBudgetExceeded, "S-pair budget exhausted; raise --pair-budget");

        if (commutative_run && coprime(basis[i].lm, basis[j].lm)) continue;
        // Chain criterion: pairs with strictly smaller lcm were already
        // treated, so a third lead dividing gamma lets this pair be skipped.
        bool chained = false;
        for (size_t k = 0; k < basis.size() && !chained; ++k) {
            if (k == i || k == j) continue;
            if (!mono_divides(basis[k].lm, gamma)) continue;
            if (mono_lcm(basis[i].lm, basis[k].lm) == gamma) continue;
            if (mono_lcm(basis[k].lm, basis[j].lm) == gamma) continue;
            chained = true;
        }
        if (chained) continue;

        WeylElement left = WeylElement::from_mono(sig, mono_div(gamma, basis[i].lm),
                                                  basis[i].lc.inverse());
        WeylElement right = WeylElement::from_mono(sig, mono_div(gamma, basis[j].lm),
                                                   basis[j].lc.inverse());
        WeylElement S = left * basis[i].elem - right * basis[j].elem;
        std::vector<WeylElement> rep;
        if (track) {
            rep.assign(gens.size(), WeylElement::zero(sig));
            for (size_t k = 0; k < gens.size(); ++k) {
                if (!basis[i].rep[k].is_zero()) rep[k] = rep[k] + left * basis[i].rep[k];
                if (!basis[j].rep[k].is_zero()) rep[k] = rep[k] - right * basis[j].rep[k];
            }
        }
        Item r = reduce_item(std::move(S), std::move(rep), basis, ord, track);
        if (!r.elem.is_zero()) add_element(std::move(r));
    }

    // Minimal basis: drop every element whose lead is divisible by another
    // surviving lead (equal leads keep the canonically smallest element).
    std::vector<size_t> order(basis.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        int c = ord.compare(*sig, basis[a].lm, basis[b].lm);
        if (c != 0) return c < 0;
        return elem_less(basis[a].elem, basis[b].elem, *sig, ord);
    });
    std::vector<Item> kept;
    for (size_t idx : order) {
        bool redundant = false;
        for (const Item& k : kept)
            if (mono_divides(k.lm, basis[idx].lm)) {
                redundant = true;
                break;
            }
        if (!redundant) kept.push_back(std::move(basis[idx]));
    }

    // Interreduce tails to the fixpoint; leads are pairwise indivisible, so
    // they survive and the result is the unique reduced basis.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < kept.size(); ++i) {
            Item r = reduce_item(kept[i].elem, kept[i].rep, kept, ord, track, /*exclude=*/i);
            if (r.elem.is_zero()) fail(Err::Internal, "minimal basis element reduced to zero");
            if (r.elem != kept[i].elem) {
                changed = true;
                kept[i] = std::move(r);
            }
        }
    }

    for (Item& it : kept) {
        Scalar inv = it.lc.inverse();
        it.elem = it.elem * inv;
        it.lc = Scalar(1);
        if (track)
            for (WeylElement& rk : it.rep) rk = rk * inv;
    }
    std::stable_sort(kept.begin(), kept.end(), [&](const Item& a, const Item& b) {
        return ord.compare(*sig, a.lm, b.lm) < 0;
    });

    for (Item& it : kept) {
        out.elems.push_back(std::move(it.elem));
        out.marks.push_back(std::move(it.lm));
        if (track) out.reps.push_back(std::move(it.rep));
    }
    return out;
}

std::vector<WeylElement> eliminate(const std::vector<WeylElement>& gens,
                                   const std::vector<char>& block_mask, const GBOptions& opts) {
    MarkedBasis G = buchberger(gens, TermOrder::block_elim(block_mask), opts);
    std::vector<WeylElement> out;
    for (size_t k = 0; k < G.elems.size(); ++k) {
        std::vector<char> u = G.elems[k].used_slots();
        bool touches = false;
        for (size_t s = 0; s < u.size() && !touches; ++s)
            touches = u[s] && s < block_mask.size() && block_mask[s];
        if (!touches) out.push_back(G.elems[k]);
    }
    return out;
}

MarkedBasis lh_basis(const std::vector<WeylElement>& hgens, const std::vector<long>& L,
                     const GBOptions& opts) {
    SigPtr sig;
    for (const WeylElement& g : hgens)
        if (!g.is_zero()) sig = g.sig_ptr();
    if (!sig) {
        MarkedBasis empty;
        empty.reduced = true;
        return empty;
    }
    if (!sig->has_h) fail(Err::Internal, "initial forms require the homogenized ring");
    return buchberger(hgens, TermOrder::graded_weight(v_weights(*sig, L)), opts);
}

std::vector<WeylElement> initial_ideal(const std::vector<WeylElement>& gens,
                                       const std::vector<long>& L, const GBOptions& opts) {
    SigPtr sig;
    for (const WeylElement& g : gens)
        if (!g.is_zero()) sig = g.sig_ptr();
    if (!sig) return {};
    if (sig->has_h) fail(Err::Internal, "generators are already homogenized");
    if (L.size() != sig->p) fail(Err::ArityMismatch, "direction length differs from the number of polynomials");
    bool some_positive = false;
    for (long l : L) {
        if (l < 0) fail(Err::InadmissibleOrder, "negative filtration direction");
        if (l > 0) some_positive = true;
    }
    if (!some_positive) fail(Err::ZeroDirection, "zero filtration direction");

    // Homogenizing a basis that is Groebner for a degree-compatible order
    // generates the homogenization of the whole ideal; homogenizing arbitrary
    // generators would lose elements.
    MarkedBasis G0 = buchberger(gens, TermOrder::graded(), opts);
    std::vector<WeylElement> hgens;
    for (const WeylElement& g : G0.elems) hgens.push_back(g.homogenize());
    MarkedBasis GL = lh_basis(hgens, L, opts);

    SigPtr hsig;
    if (!GL.elems.empty()) hsig = GL.elems.front().sig_ptr();
    std::vector<WeylElement> out;
    for (const WeylElement& g : GL.elems) {
        WeylElement init = g.initial_part(v_weights(*hsig, L));
        out.push_back(init.dehomogenize());
    }
    std::stable_sort(out.begin(), out.end(), [&](const WeylElement& a, const WeylElement& b) {
        return elem_less(a, b, *sig, TermOrder::graded());
    });
    return out;
}

namespace {

// Slopes as nonnegative fractions rise/run with (0,1) representing infinity.
struct Slope {
    long long rise, run;
};

int slope_cmp(Slope a, Slope b) {
    __int128 l = static_cast<__int128>(a.rise) * b.run;
    __int128 r = static_cast<__int128>(b.rise) * a.run;
    if (l < r) return -1;
    if (l > r) return 1;
    return 0;
}

std::array<long, 2> primitive_ray(long long run, long long rise) {
    long long g = std::gcd(run < 0 ? -run : run, rise < 0 ? -rise : rise);
    if (g == 0) return {0, 0};
    return {static_cast<long>(run / g), static_cast<long>(rise / g)};
}

} // namespace

bool GroebnerCone::contains(long l1, long l2) const {
    if (l1 < 0 || l2 < 0) return false;
    if (empty) return l1 == 0 && l2 == 0;
    for (const auto& hp : halfplanes)
        if (static_cast<long long>(hp[0]) * l1 + static_cast<long long>(hp[1]) * l2 < 0)
            return false;
    return true;
}

GroebnerCone groebner_cone(const MarkedBasis& G) {
    GroebnerCone cone;
    if (!G.sig) return cone; // empty basis keeps its markings everywhere
    const Signature& sig = *G.sig;
    if (sig.p != 2) fail(Err::Internal, "cone computation is specific to pairs");

    auto vw = [&](const Mono& m, unsigned j) {
        return static_cast<long>(m[sig.dt(j)]) - static_cast<long>(m[sig.t(j)]);
    };
    std::set<std::array<long, 2>> rows;
    for (size_t k = 0; k < G.elems.size(); ++k) {
        const Mono& m0 = G.marks[k];
        for (const auto& [m, c] : G.elems[k].terms()) {
            if (m == m0) continue;
            std::array<long, 2> d = {vw(m0, 0) - vw(m, 0), vw(m0, 1) - vw(m, 1)};
            if (d[0] == 0 && d[1] == 0) continue;
            rows.insert(d);
        }
    }
    cone.halfplanes.assign(rows.begin(), rows.end());

    Slope low{0, 1}, high{1, 0}; // slopes of (1,0) and (0,1)
    bool dead = false;
    for (const auto& d : cone.halfplanes) {
        long a = d[0], b = d[1];
        if (a >= 0 && b >= 0) continue;
        if (a < 0 && b < 0) {
            dead = true;
            break;
        }
        if (a < 0) { // b > 0: l2/l1 >= -a/b
            Slope s{-a, b};
            if (slope_cmp(s, low) > 0) low = s;
        } else { // a > 0, b < 0: l2/l1 <= a/-b
            Slope s{a, -b};
            if (slope_cmp(s, high) < 0) high = s;
        }
    }
    if (!dead && slope_cmp(low, high) > 0) dead = true;
    if (dead) {
        cone.empty = true;
        cone.ray_low = cone.ray_high = {0, 0};
        return cone;
    }
    cone.ray_low = primitive_ray(low.run, low.rise);
    cone.ray_high = primitive_ray(high.run, high.rise);
    return cone;
}

bool local_membership(const WeylElement& g, const std::vector<WeylElement>& J,
                      const std::vector<unsigned>& local_slots, const GBOptions& opts) {
    if (g.is_zero()) return true;
    SigPtr sig = g.sig_ptr();
    for (const WeylElement& j : J) require_same_sig(sig, j);

    std::vector<char> used = g.used_slots();
    for (const WeylElement& j : J) {
        std::vector<char> u = j.used_slots();
        for (unsigned k = 0; k < sig->slots(); ++k) used[k] |= u[k];
    }
    for (unsigned a = 0; a < sig->slots(); ++a)
        for (unsigned b = a + 1; b < sig->slots(); ++b)
            if (used[a] && used[b] && !sig->commute(a, b))
                fail(Err::NotCommutative, "localization test needs commuting generators");
    for (unsigned s : local_slots) {
        Axis ax = sig->axis_of(s).first;
        if (ax != Axis::X && ax != Axis::T)
            fail(Err::Internal, "local variables must be positions");
    }

    // Colon trick: w J + (1 - w) g cut down to the w-free part is <J> n <g>;
    // dividing by g then gives (<J> : g), and g is invertible at the origin
    // exactly when that quotient plus the local maximal ideal is everything.
    SigPtr ext = share(sig->with_extra(sig->extra + 1));
    WeylElement w = WeylElement::variable(ext, Axis::U, sig->extra);
    WeylElement one_minus_w = WeylElement::constant(ext, Scalar(1)) - w;
    std::vector<WeylElement> K;
    for (const WeylElement& j : J) K.push_back(w * j.remap(ext));
    WeylElement ge = g.remap(ext);
    K.push_back(one_minus_w * ge);
    std::vector<char> mask(ext->slots(), 0);
    mask[ext->u(sig->extra)] = 1;
    std::vector<WeylElement> inter = eliminate(K, mask, opts);

    std::vector<WeylElement> Q;
    for (const WeylElement& q : inter) {
        DivisionResult dr = divide(q, {ge}, TermOrder::graded());
        if (!dr.remainder.is_zero())
            fail(Err::Internal, "intersection element escaped the principal ideal");
        Q.push_back(dr.cofactors[0].remap(sig));
    }
    for (unsigned s : local_slots) {
        auto [ax, idx] = sig->axis_of(s);
        Q.push_back(WeylElement::variable(sig, ax, idx));
    }
    return buchberger(Q, TermOrder::graded(), opts).contains_one();
}

} // namespace bsfan
