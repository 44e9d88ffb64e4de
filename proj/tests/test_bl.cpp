#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <optional>
#include <random>

#include "bsfan/bl.hpp"
#include "bsfan/error.hpp"

using namespace bsfan;

namespace {

WeylElement v(const SigPtr& sig, Axis a, unsigned i = 0) {
    return WeylElement::variable(sig, a, i);
}

WeylElement k(const SigPtr& sig, long c) { return WeylElement::constant(sig, Scalar(c)); }

PolyPair normal_crossing() {
    SigPtr w = share(Signature::weyl(2, 2));
    return PolyPair::make(2, {v(w, Axis::X, 0), v(w, Axis::X, 1)});
}

// (x1^2, x2): the first slot carries the classical square singularity.
PolyPair square_pair() {
    SigPtr w = share(Signature::weyl(2, 2));
    return PolyPair::make(2, {v(w, Axis::X, 0) * v(w, Axis::X, 0), v(w, Axis::X, 1)});
}

template <typename F>
std::optional<Err> thrown_code(F&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

QPoly qp(std::vector<long> num, std::vector<long> den = {}) {
    QPoly r(num.size());
    for (size_t i = 0; i < num.size(); ++i) {
        r[i] = mpq_class(num[i], i < den.size() && den[i] != 0 ? den[i] : 1);
        r[i].canonicalize();
    }
    return qp_trim(std::move(r));
}

} // namespace

TEST_CASE("univariate rational polynomial helpers") {
    QPoly a = qp({2, 3, 1});  // (x+1)(x+2)
    QPoly b = qp({1, 1});

    CHECK(qp_deg(a) == 2);
    CHECK(qp_equal(qp_mul(b, qp({2, 1})), a));
    auto [q, r] = qp_divmod(a, b);
    CHECK(qp_equal(q, qp({2, 1})));
    CHECK(qp_is_zero(r));
    CHECK(qp_equal(qp_divexact(a, qp({2, 1})), b));
    CHECK(qp_equal(qp_gcd(a, qp_mul(b, b)), b));
    CHECK(qp_eval(a, mpq_class(-2)) == 0);
    CHECK(qp_eval(a, mpq_class(1)) == 6);
    CHECK(qp_equal(qp_derivative(a), qp({3, 2})));
    CHECK(qp_equal(qp_sub(a, a), QPoly{}));

    // a(2x + 1) = (2x+2)(2x+3)
    CHECK(qp_equal(qp_compose_linear(a, 2, 1), qp({6, 10, 4})));

    SUBCASE("rational root extraction") {
        // 5 (x+1)^2 (x+2) (x + 3/2); scalar content is dropped
        QPoly p = qp_scale(qp_mul(qp_mul(qp_pow(qp({1, 1}), 2), qp({2, 1})), qp({3, 2})),
                           mpq_class(5));
        auto fac = qp_rational_roots(p);
        REQUIRE(fac.complete());
        REQUIRE(fac.roots.size() == 3);
        CHECK(fac.roots[0] == std::pair<mpq_class, unsigned>(mpq_class(-2), 1u));
        CHECK(fac.roots[1] == std::pair<mpq_class, unsigned>(mpq_class(-3, 2), 1u));
        CHECK(fac.roots[2] == std::pair<mpq_class, unsigned>(mpq_class(-1), 2u));

        // (x^2+1)(x+1) leaves the irreducible quadratic behind
        auto mixed = qp_rational_roots(qp_mul(qp({1, 0, 1}), qp({1, 1})));
        CHECK_FALSE(mixed.complete());
        REQUIRE(mixed.roots.size() == 1);
        CHECK(mixed.roots[0].first == -1);
        CHECK(qp_equal(mixed.leftover, qp({1, 0, 1})));

        // x^2 (x - 5): zero roots come off first
        auto zeros = qp_rational_roots(qp({0, 0, -5, 1}));
        REQUIRE(zeros.complete());
        REQUIRE(zeros.roots.size() == 2);
        CHECK(zeros.roots[0] == std::pair<mpq_class, unsigned>(mpq_class(0), 2u));
        CHECK(zeros.roots[1] == std::pair<mpq_class, unsigned>(mpq_class(5), 1u));

        CHECK(qp_rational_roots(qp({7})).roots.empty());
        CHECK(qp_rational_roots(QPoly{}).roots.empty());
    }

    SUBCASE("random products of linear factors are recovered") {
        std::mt19937 rng(20260822);
        std::uniform_int_distribution<long> numd(-6, 6), dend(1, 4);
        for (int round = 0; round < 20; ++round) {
            QPoly p{mpq_class(1)};
            std::map<mpq_class, unsigned> expect;
            int nfac = 1 + static_cast<int>(rng() % 4);
            for (int i = 0; i < nfac; ++i) {
                mpq_class root(numd(rng), dend(rng));
                root.canonicalize();
                expect[root]++;
                p = qp_mul(p, QPoly{-root, mpq_class(1)});
            }
            auto fac = qp_rational_roots(p);
            REQUIRE(fac.complete());
            REQUIRE(fac.roots.size() == expect.size());
            size_t i = 0;
            for (const auto& [root, mult] : expect) {
                CHECK(fac.roots[i].first == root);
                CHECK(fac.roots[i].second == mult);
                ++i;
            }
        }
    }
}

TEST_CASE("directional b-functions of the normal crossing pair") {
    PolyPair f = normal_crossing();

    DirectionalResult r = b_L(f, {1, 1});
    CHECK(qp_equal(r.b, qp({2, 1}))); // lambda + 2
    CHECK(r.L == std::array<long, 2>{1, 1});
    CHECK_FALSE(r.localized);
    CHECK(r.I4.size() == 1);
    CHECK_FALSE(r.I1.empty());
    CHECK_FALSE(r.I3.empty());

    CHECK(qp_equal(b_L(f, {1, 0}).b, qp({1, 1})));
    CHECK(qp_equal(b_L(f, {0, 1}).b, qp({1, 1})));
    CHECK(qp_equal(b_L(f, {1, 2}).b, qp({3, 1})));

    SUBCASE("directions are normalized to primitive vectors") {
        DirectionalResult s = b_L(f, {2, 2});
        CHECK(s.L == std::array<long, 2>{1, 1});
        CHECK(qp_equal(s.b, qp({2, 1})));
        CHECK(b_L(f, {0, 3}).L == std::array<long, 2>{0, 1});
    }

    SUBCASE("bad directions") {
        CHECK(thrown_code([&] { b_L(f, {0, 0}); }) == Err::ZeroDirection);
        CHECK(thrown_code([&] { b_L(f, {-1, 2}); }) == Err::InadmissibleOrder);
        SigPtr w1 = share(Signature::weyl(1, 1));
        PolyPair single = PolyPair::make(1, {v(w1, Axis::X, 0)});
        CHECK(thrown_code([&] { b_L(single, {1, 1}); }) == Err::ArityMismatch);
    }

    SUBCASE("localizing strips nothing here") {
        DirectionalResult loc = b_L(f, {1, 1}, true);
        CHECK(loc.localized);
        CHECK(qp_equal(loc.b, qp({2, 1})));
        CHECK(qp_equal(b_L(f, {1, 0}, true).b, qp({1, 1})));
    }

    SUBCASE("deterministic across repeat runs") {
        DirectionalResult r2 = b_L(f, {1, 1});
        CHECK(qp_equal(r.b, r2.b));
        REQUIRE(r.I3.size() == r2.I3.size());
        for (size_t i = 0; i < r.I3.size(); ++i) CHECK(r.I3[i] == r2.I3[i]);
    }
}

TEST_CASE("degree-by-degree oracle") {
    PolyPair f = normal_crossing();

    auto o = b_L_oracle(f, {1, 1}, 3);
    REQUIRE(o.has_value());
    CHECK(qp_equal(*o, qp({2, 1})));

    o = b_L_oracle(f, {0, 1}, 3);
    REQUIRE(o.has_value());
    CHECK(qp_equal(*o, qp({1, 1})));

    o = b_L_oracle(f, {1, 2}, 2);
    REQUIRE(o.has_value());
    CHECK(qp_equal(*o, qp({3, 1})));

    CHECK_FALSE(b_L_oracle(f, {1, 1}, 0).has_value());

    SUBCASE("the square pair needs degree two in its own direction") {
        PolyPair g = square_pair();
        CHECK_FALSE(b_L_oracle(g, {1, 0}, 1).has_value());
        auto og = b_L_oracle(g, {1, 0}, 4);
        REQUIRE(og.has_value());
        // (lambda + 1)(lambda + 1/2)
        CHECK(qp_equal(*og, qp({1, 3, 1}, {2, 2, 1})));
    }

    SUBCASE("bad directions") {
        CHECK(thrown_code([&] { b_L_oracle(f, {0, 0}, 2); }) == Err::ZeroDirection);
    }
}

TEST_CASE("pipeline agrees with the oracle and satisfies the defining property") {
    SigPtr w = share(Signature::weyl(2, 2));
    WeylElement x1 = v(w, Axis::X, 0), x2 = v(w, Axis::X, 1);
    PolyPair cusp = PolyPair::make(2, {x1 * x1 + x2 * x2 * x2, x2});

    struct Case {
        PolyPair f;
        std::array<long, 2> L;
    };
    std::vector<Case> cases = {
        {normal_crossing(), {1, 1}}, {normal_crossing(), {2, 1}}, {square_pair(), {1, 0}},
        {square_pair(), {1, 1}},     {square_pair(), {2, 3}},     {cusp, {1, 0}},
        {cusp, {1, 1}},
    };

    for (const auto& c : cases) {
        CAPTURE(c.L[0]);
        CAPTURE(c.L[1]);
        DirectionalResult r = b_L(c.f, c.L);
        auto o = b_L_oracle(c.f, c.L, 8);
        REQUIRE(o.has_value());
        CHECK(qp_equal(r.b, *o));

        // Defining membership: b(L(s)) lands in gr^L of the Malgrange ideal.
        std::vector<long> Lv{r.L[0], r.L[1]};
        auto gr = initial_ideal(malgrange_ideal(c.f), Lv);
        MarkedBasis G = buchberger(gr, TermOrder::graded());
        CHECK(normal_form(rewrite_in_s(r.b, c.f, r.L), G).is_zero());

        // Minimality factor by factor, and every root negative rational.
        auto fac = qp_rational_roots(r.b);
        REQUIRE(fac.complete());
        for (const auto& [root, mult] : fac.roots) {
            CHECK(root < 0);
            QPoly smaller = qp_divexact(r.b, QPoly{-root, mpq_class(1)});
            CHECK_FALSE(normal_form(rewrite_in_s(smaller, c.f, r.L), G).is_zero());
        }
    }
}

TEST_CASE("scaling a direction rescales the roots") {
    PolyPair f = normal_crossing();

    DirectionalResult raw = b_L(f, {2, 2}, false, {}, false);
    CHECK(raw.L == std::array<long, 2>{2, 2});
    CHECK(qp_equal(raw.b, qp({4, 1}))); // lambda + 4 = monic of b_{(1,1)}(lambda/2)
    QPoly expected = qp_monic(qp_compose_linear(b_L(f, {1, 1}).b, mpq_class(1, 2), 0));
    CHECK(qp_equal(raw.b, expected));

    DirectionalResult raw2 = b_L(f, {3, 0}, false, {}, false);
    CHECK(raw2.L == std::array<long, 2>{3, 0});
    CHECK(qp_equal(raw2.b, qp({3, 1})));
    CHECK(qp_equal(raw2.b, qp_monic(qp_compose_linear(b_L(f, {1, 0}).b, mpq_class(1, 3), 0))));
}

TEST_CASE("local strip") {
    SigPtr lsig = share(Signature::lambda_ring(1, 2, {1, 1}));
    WeylElement lam = v(lsig, Axis::LAM), x1 = v(lsig, Axis::X, 0);
    std::vector<unsigned> local{lsig->x(0)};

    // <(1 + x1)(lambda + 2)>: the unit 1 + x1 frees lambda + 2 locally.
    std::vector<WeylElement> I3{(k(lsig, 1) + x1) * (lam + k(lsig, 2))};

    CHECK(qp_equal(local_strip(qp({2, 3, 1}), I3, local), qp({2, 1})));
    CHECK(qp_equal(local_strip(qp({2, 1}), I3, local), qp({2, 1})));
    CHECK(qp_equal(local_strip(qp({1}), I3, local), qp({1})));
    CHECK(qp_equal(local_strip(qp({5}), I3, local), qp({1}))); // monic normalization

    // Unit ideal locally: everything strips down to 1.
    std::vector<WeylElement> unit{k(lsig, 1) + x1};
    CHECK(qp_equal(local_strip(qp({2, 3, 1}), unit, local), qp({1})));

    // Nothing to strip against.
    CHECK(qp_equal(local_strip(qp({2, 3, 1}), {}, local), qp({2, 3, 1})));

    // x1 (lambda + 2) is not a unit multiple: no strip happens.
    std::vector<WeylElement> pinned{x1 * (lam + k(lsig, 2))};
    CHECK(qp_equal(local_strip(qp({2, 3, 1}), pinned, local), qp({2, 3, 1})));
}

TEST_CASE("localization separates the origin from far singularities") {
    SigPtr w = share(Signature::weyl(2, 2));
    WeylElement x1 = v(w, Axis::X, 0), x2 = v(w, Axis::X, 1);

    // f1 = x1 (x1 - 1)^2 is normal crossing at the origin; the double root
    // at x1 = 1 contributes lambda + 1/2 globally and must vanish locally.
    WeylElement f1 = x1 * (x1 - k(w, 1)) * (x1 - k(w, 1));
    PolyPair f = PolyPair::make(2, {f1, x2});

    DirectionalResult global = b_L(f, {1, 0});
    CHECK(qp_equal(global.b, qp({1, 3, 1}, {2, 2, 1}))); // (lambda+1)(lambda+1/2)

    DirectionalResult local = b_L(f, {1, 0}, true);
    CHECK(local.localized);
    CHECK(qp_equal(local.b, qp({1, 1}))); // lambda + 1

    SUBCASE("a singular origin keeps its factors") {
        PolyPair g = square_pair();
        DirectionalResult loc = b_L(g, {1, 0}, true);
        CHECK(qp_equal(loc.b, qp({1, 3, 1}, {2, 2, 1})));
    }

    SUBCASE("localization requires vanishing constant terms") {
        PolyPair off = PolyPair::make(2, {x1 + k(w, 1), x2});
        CHECK(thrown_code([&] { b_L(off, {1, 1}, true); }) == Err::HypothesisViolated);
        CHECK_FALSE(b_L(off, {1, 1}).b.empty()); // global run is still fine
    }
}
