#include "bsfan/bl.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "bsfan/error.hpp"

namespace bsfan {

namespace {

void check_direction(const PolyPair& f, std::array<long, 2>& L, bool normalize) {
    if (f.p != 2) fail(Err::ArityMismatch, "directional b-functions need exactly two polynomials");
    if (L[0] == 0 && L[1] == 0) fail(Err::ZeroDirection, "the zero direction carries no filtration");
    if (L[0] < 0 || L[1] < 0) fail(Err::InadmissibleOrder, "negative filtration direction");
    if (normalize) {
        long g = std::gcd(L[0], L[1]);
        L[0] /= g;
        L[1] /= g;
    }
}

// lambda + sum_j l_j (t_j dt_j + 1), the central element tying lambda to the
// direction's Euler part; adjoining it is what makes the final elimination
// land on a nonzero ideal of k[lambda].
WeylElement direction_cap(const SigPtr& lsig, const std::array<long, 2>& L) {
    WeylElement cap = WeylElement::variable(lsig, Axis::LAM);
    for (unsigned j = 0; j < 2; ++j) {
        if (L[j] == 0) continue;
        Mono m(lsig->slots(), 0);
        m[lsig->t(j)] = 1;
        m[lsig->dt(j)] = 1;
        cap = cap + WeylElement::from_mono(lsig, std::move(m), Scalar(L[j])) +
              WeylElement::constant(lsig, Scalar(L[j]));
    }
    return cap;
}

QPoly lambda_only(const WeylElement& e) {
    const auto& sig = e.sig();
    unsigned lam = sig.lam();
    QPoly b;
    for (const auto& [m, c] : e.terms()) {
        for (unsigned k = 0; k < sig.slots(); ++k)
            if (k != lam && m[k] != 0) fail(Err::Internal, "expected an element of k[lambda]");
        if (!c.is_rational()) fail(Err::Internal, "parametric coefficients have no lambda generator");
        size_t d = m[lam];
        if (b.size() <= d) b.resize(d + 1, mpq_class(0));
        b[d] = c.rational();
    }
    return qp_trim(std::move(b));
}

WeylElement elementize(const QPoly& b, const SigPtr& sig) {
    WeylElement e = WeylElement::zero(sig);
    for (size_t k = 0; k < b.size(); ++k) {
        if (b[k] == 0) continue;
        Mono m(sig->slots(), 0);
        m[sig->lam()] = static_cast<uint32_t>(k);
        e.add_term(std::move(m), Scalar(b[k]));
    }
    return e;
}

// Exact Gauss-Jordan solve of A c = rhs; any consistent system returns one
// solution (free unknowns pinned to zero).
std::optional<std::vector<mpq_class>> solve_linear(size_t ncols,
                                                   std::vector<std::vector<mpq_class>> A,
                                                   std::vector<mpq_class> rhs) {
    size_t rank = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < ncols && rank < A.size(); ++col) {
        size_t piv = rank;
        while (piv < A.size() && A[piv][col] == 0) ++piv;
        if (piv == A.size()) continue;
        std::swap(A[piv], A[rank]);
        std::swap(rhs[piv], rhs[rank]);
        mpq_class inv = mpq_class(1) / A[rank][col];
        for (auto& v : A[rank]) v *= inv;
        rhs[rank] *= inv;
        for (size_t r = 0; r < A.size(); ++r) {
            if (r == rank || A[r][col] == 0) continue;
            mpq_class c = A[r][col];
            for (size_t k = col; k < ncols; ++k) A[r][k] -= c * A[rank][k];
            rhs[r] -= c * rhs[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (size_t r = rank; r < A.size(); ++r)
        if (rhs[r] != 0) return std::nullopt;
    std::vector<mpq_class> sol(ncols, mpq_class(0));
    for (size_t i = 0; i < rank; ++i) sol[pivot_col[i]] = rhs[i];
    return sol;
}

} // namespace

DirectionalResult b_L(const PolyPair& f, std::array<long, 2> L, bool localize,
                      const GBOptions& opts, bool normalize_direction) {
    check_direction(f, L, normalize_direction);
    if (localize && !f.at_origin)
        fail(Err::HypothesisViolated, "localized b_L needs every component to vanish at the origin");

    DirectionalResult res;
    res.L = L;
    std::vector<long> Lv{L[0], L[1]};

    res.I1 = initial_ideal(malgrange_ideal(f), Lv, opts);

    // Derivations go first: all dx_i, and dt_j transverse to the direction.
    const auto& dsig = f.dsig;
    std::vector<char> mask2(dsig->slots(), 0);
    for (unsigned i = 0; i < f.n; ++i) mask2[dsig->dx(i)] = 1;
    for (unsigned j = 0; j < 2; ++j)
        if (L[j] == 0) mask2[dsig->dt(j)] = 1;
    res.I2 = eliminate(res.I1, mask2, opts);

    // Adjoin lambda and remove the t-pairs along the direction.
    res.lsig = share(Signature::lambda_ring(f.n, 2, Lv));
    std::vector<WeylElement> gens3;
    gens3.reserve(res.I2.size() + 1);
    for (const auto& e : res.I2) gens3.push_back(e.remap(res.lsig));
    gens3.push_back(direction_cap(res.lsig, L));
    std::vector<char> mask3(res.lsig->slots(), 0);
    for (unsigned j = 0; j < 2; ++j)
        if (L[j] != 0) {
            mask3[res.lsig->t(j)] = 1;
            mask3[res.lsig->dt(j)] = 1;
        }
    res.I3 = eliminate(gens3, mask3, opts);

    // What is left is commutative; clearing the local variables lands in
    // k[lambda], where a reduced basis is a single monic generator.
    std::vector<char> mask4(res.lsig->slots(), 0);
    for (unsigned i = 0; i < f.n; ++i) {
        mask4[res.lsig->x(i)] = 1;
        res.local_slots.push_back(res.lsig->x(i));
    }
    for (unsigned j = 0; j < 2; ++j)
        if (L[j] == 0) {
            mask4[res.lsig->t(j)] = 1;
            res.local_slots.push_back(res.lsig->t(j));
        }
    res.I4 = eliminate(res.I3, mask4, opts);

    if (res.I4.empty())
        fail(Err::NoBFunction, "the intersection with k[lambda] is zero in this direction");
    if (res.I4.size() > 1) fail(Err::Internal, "k[lambda] intersection came back non-principal");
    res.b = lambda_only(res.I4.front());

    if (localize) {
        res.b = local_strip(res.b, res.I3, res.local_slots, opts);
        res.localized = true;
    }
    return res;
}

WeylElement rewrite_in_s(const QPoly& b, const PolyPair& f, std::array<long, 2> L) {
    const auto& sig = f.dsig;
    WeylElement M = WeylElement::zero(sig);
    for (unsigned j = 0; j < 2; ++j) {
        if (L[j] == 0) continue;
        Mono m(sig->slots(), 0);
        m[sig->t(j)] = 1;
        m[sig->dt(j)] = 1;
        M = M + WeylElement::from_mono(sig, std::move(m), Scalar(-L[j])) +
            WeylElement::constant(sig, Scalar(-L[j]));
    }
    WeylElement acc = WeylElement::zero(sig);
    for (size_t k = b.size(); k-- > 0;)
        acc = acc * M + WeylElement::constant(sig, Scalar(b[k]));
    return acc;
}

std::optional<QPoly> b_L_oracle(const PolyPair& f, std::array<long, 2> L, unsigned degree_bound,
                                const GBOptions& opts) {
    check_direction(f, L, true);
    if (degree_bound == 0) return std::nullopt;

    std::vector<long> Lv{L[0], L[1]};
    auto gr = initial_ideal(malgrange_ideal(f), Lv, opts);
    MarkedBasis G = buchberger(gr, TermOrder::graded(), opts);

    // Normal forms of successive powers of the direction's s-realization;
    // left ideals absorb left multiplication, so the chain can reduce as it
    // goes and stays small.
    WeylElement M = rewrite_in_s(QPoly{mpq_class(0), mpq_class(1)}, f, L);
    std::vector<WeylElement> nf;
    nf.push_back(normal_form(WeylElement::constant(f.dsig, Scalar(1)), G));
    for (unsigned k = 1; k <= degree_bound; ++k) nf.push_back(normal_form(M * nf.back(), G));

    for (unsigned d = 1; d <= degree_bound; ++d) {
        std::set<Mono> support;
        for (unsigned k = 0; k <= d; ++k)
            for (const auto& [m, c] : nf[k].terms()) support.insert(m);
        std::vector<std::vector<mpq_class>> A;
        std::vector<mpq_class> rhs;
        for (const auto& m : support) {
            std::vector<mpq_class> row(d, mpq_class(0));
            for (unsigned k = 0; k < d; ++k) {
                auto it = nf[k].terms().find(m);
                if (it == nf[k].terms().end()) continue;
                if (!it->second.is_rational()) fail(Err::Internal, "parametric pair in the oracle");
                row[k] = it->second.rational();
            }
            auto it = nf[d].terms().find(m);
            mpq_class lead = 0;
            if (it != nf[d].terms().end()) {
                if (!it->second.is_rational()) fail(Err::Internal, "parametric pair in the oracle");
                lead = it->second.rational();
            }
            A.push_back(std::move(row));
            rhs.push_back(-lead);
        }
        auto sol = solve_linear(d, std::move(A), std::move(rhs));
        if (!sol) continue;
        QPoly e = *sol;
        e.push_back(mpq_class(1));
        return qp_trim(std::move(e));
    }
    return std::nullopt;
}

QPoly local_strip(const QPoly& b_in, const std::vector<WeylElement>& I3,
                  const std::vector<unsigned>& local_slots, const GBOptions& opts) {
    QPoly b = qp_monic(qp_trim(b_in));
    if (qp_deg(b) <= 0 || I3.empty()) return b;
    const SigPtr& sig = I3.front().sig_ptr();

    bool changed = true;
    while (changed && qp_deg(b) >= 1) {
        changed = false;
        auto fac = qp_rational_roots(b);
        std::vector<QPoly> tries;
        for (const auto& [r, mult] : fac.roots) tries.push_back(QPoly{-r, mpq_class(1)});
        if (!fac.leftover.empty()) tries.push_back(fac.leftover);
        for (const auto& q : tries) {
            QPoly cand = qp_divexact(b, q);
            if (local_membership(elementize(cand, sig), I3, local_slots, opts)) {
                b = std::move(cand);
                changed = true;
                break;
            }
        }
    }
    return b;
}

} // namespace bsfan
