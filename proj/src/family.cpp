#include "bsfan/family.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace bsfan {

long rho(const WeylElement& poly, std::array<long, 2> alpha) {
    if (poly.is_zero()) fail(Err::ZeroElement, "rho of the zero polynomial");
    const Signature& sig = poly.sig();
    bool first = true;
    long best = 0;
    for (const auto& [m, c] : poly.terms()) {
        long deg = 0;
        for (unsigned i = 0; i < 2; ++i) {
            unsigned slot = sig.x(i);
            if (slot < m.size()) deg += alpha[i] * long(m[slot]);
        }
        if (first || deg < best) best = deg;
        first = false;
    }
    return best;
}

WeylElement FamilySpec::f1() const {
    WeylElement x1 = WeylElement::variable(sig, Axis::X, 0);
    WeylElement x2 = WeylElement::variable(sig, Axis::X, 1);
    WeylElement out = x1.pow(unsigned(a)) * c1 + x2.pow(unsigned(b)) * c2;
    if (!g1.is_zero()) out = out + g1;
    return out;
}

WeylElement FamilySpec::f2() const {
    WeylElement x1 = WeylElement::variable(sig, Axis::X, 0);
    WeylElement x2 = WeylElement::variable(sig, Axis::X, 1);
    WeylElement out = x1.pow(unsigned(c)) * c3 + x2.pow(unsigned(d)) * c4;
    if (!g2.is_zero()) out = out + g2;
    return out;
}

namespace {

// alpha-degrees realized by monomials in x1, x2 up to the cutoff, sorted.
std::vector<long> degrees_up_to(std::array<long, 2> alpha, long cutoff) {
    std::set<long> seen;
    for (long i = 0; alpha[0] * i <= cutoff; ++i)
        for (long j = 0; alpha[0] * i + alpha[1] * j <= cutoff; ++j)
            seen.insert(alpha[0] * i + alpha[1] * j);
    return {seen.begin(), seen.end()};
}

bool x_support_only(const WeylElement& g) {
    if (g.is_zero()) return true;
    const Signature& sig = g.sig();
    std::vector<char> used = g.used_slots();
    for (unsigned slot = 0; slot < used.size(); ++slot) {
        if (!used[slot]) continue;
        if (slot != sig.x(0) && slot != sig.x(1)) return false;
    }
    return true;
}

} // namespace

std::vector<long> FamilySpec::W1() const { return degrees_up_to(alpha1(), N1() + rho(f2(), alpha1())); }
std::vector<long> FamilySpec::W2() const { return degrees_up_to(alpha2(), N2() + rho(f1(), alpha2())); }

FamilySpec FamilySpec::make(long a, long b, long c, long d) {
    SigPtr sig = share(Signature::weyl(2, 2));
    return make(a, b, c, d, 0, Scalar(1), Scalar(1), Scalar(1), Scalar(1),
                WeylElement::zero(sig), WeylElement::zero(sig));
}

FamilySpec FamilySpec::make(long a, long b, long c, long d, unsigned params, Scalar c1,
                            Scalar c2, Scalar c3, Scalar c4, WeylElement g1, WeylElement g2) {
    if (a <= 0 || b <= 0 || c <= 0 || d <= 0)
        fail(Err::HypothesisViolated, "leading exponents must be positive");
    FamilySpec spec;
    spec.a = a;
    spec.b = b;
    spec.c = c;
    spec.d = d;
    spec.params = params;
    spec.sig = share(Signature::weyl(2, 2));
    spec.c1 = std::move(c1);
    spec.c2 = std::move(c2);
    spec.c3 = std::move(c3);
    spec.c4 = std::move(c4);
    spec.g1 = g1.is_zero() ? WeylElement::zero(spec.sig) : g1.remap(spec.sig);
    spec.g2 = g2.is_zero() ? WeylElement::zero(spec.sig) : g2.remap(spec.sig);
    if (!x_support_only(spec.g1) || !x_support_only(spec.g2))
        fail(Err::HypothesisViolated, "tails must be polynomials in x alone");
    return spec;
}

bool FamilyReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const FamilyCheck& c) { return c.pass; });
}

std::string FamilyReport::str() const {
    std::ostringstream out;
    for (const auto& c : checks)
        out << (c.pass ? "pass  " : "FAIL  ") << c.name << ": " << c.detail << "\n";
    return out.str();
}

FamilyReport validate(const FamilySpec& spec) {
    FamilyReport report;
    {
        std::ostringstream d;
        d << "bc = " << spec.b * spec.c << ", ad = " << spec.a * spec.d;
        report.checks.push_back({"bc > ad", spec.b * spec.c > spec.a * spec.d, d.str()});
    }
    {
        Scalar prod = spec.c1 * spec.c2 * spec.c3 * spec.c4;
        std::ostringstream d;
        d << "c1 c2 c3 c4 = " << prod.str();
        report.checks.push_back({"C(y) != 0", !prod.is_zero(), d.str()});
    }
    auto tail_row = [&](const char* name, const WeylElement& g, std::array<long, 2> alpha,
                        long lead_deg) {
        if (g.is_zero()) {
            report.checks.push_back({name, true, "tail is zero"});
            return;
        }
        long r = rho(g, alpha);
        std::ostringstream d;
        d << "rho = " << r << ", needs > " << lead_deg;
        report.checks.push_back({name, r > lead_deg, d.str()});
    };
    tail_row("rho_alpha1(g1) > ab", spec.g1, spec.alpha1(), spec.a * spec.b);
    tail_row("rho_alpha2(g2) > cd", spec.g2, spec.alpha2(), spec.c * spec.d);
    return report;
}

FactoredBS explicit_b(const FamilySpec& spec) {
    FamilyReport report = validate(spec);
    if (!report.pass()) {
        std::string names;
        for (const auto& c : report.checks)
            if (!c.pass) names += (names.empty() ? "" : ", ") + c.name;
        fail(Err::HypothesisViolated, "family hypotheses fail: " + names);
    }
    FactoredBS out;
    out.push({1, 0}, 1);
    out.push({0, 1}, 1);
    for (long r : spec.W1()) out.push({spec.a * spec.b, spec.a * spec.d}, spec.a + spec.b + r);
    for (long r : spec.W2()) out.push({spec.a * spec.d, spec.c * spec.d}, spec.c + spec.d + r);
    return out;
}

bool VerifyReport::pass() const {
    return std::all_of(trials.begin(), trials.end(), [](const TrialRow& t) { return t.member; });
}

VerifyReport generic_verify(const FamilySpec& spec, unsigned trials, uint64_t seed, long bound,
                            const GBOptions& opts, bool want_certificate) {
    VerifyReport report;
    report.b = explicit_b(spec);
    if (bound <= 0) fail(Err::ArityMismatch, "bound must be positive");

    std::mt19937_64 rng(seed);
    // rng()%k is biased but reproducible everywhere, unlike uniform_int_distribution.
    auto draw = [&]() -> mpq_class {
        long num = long(rng() % uint64_t(2 * bound + 1)) - bound;
        long den = long(rng() % uint64_t(bound)) + 1;
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    };

    Scalar product = spec.c1 * spec.c2 * spec.c3 * spec.c4;
    WeylElement f1 = spec.f1(), f2 = spec.f2();

    for (unsigned trial = 0; trial < trials; ++trial) {
        std::vector<mpq_class> y0(spec.params);
        WeylElement f1_0(spec.sig), f2_0(spec.sig);
        bool drawn = false;
        for (unsigned attempt = 0; attempt < 256 && !drawn; ++attempt) {
            for (auto& q : y0) q = draw();
            try {
                if (product.specialize(y0).is_zero()) continue;
                f1_0 = f1.specialize(y0);
                f2_0 = f2.specialize(y0);
                drawn = true;
            } catch (const Error& e) {
                if (e.code() != Err::PoleAtPoint) throw;
            }
        }
        if (!drawn) fail(Err::Internal, "could not draw a point with C(y) != 0");

        PolyPair pair = PolyPair::make(2, {f1_0, f2_0});
        WeylElement b = factored_to_element(report.b, pair.ssig);
        auto [member, cert] = bs_membership(b, pair, opts, want_certificate);
        report.trials.push_back({trial, y0, member, std::move(cert)});
    }
    return report;
}

} // namespace bsfan
