#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bsfan/family.hpp"

#include <random>

using namespace bsfan;

namespace {

Err thrown_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Err::Internal;
}

SigPtr xsig() { return share(Signature::weyl(2, 2)); }

WeylElement xvar(const SigPtr& sig, unsigned i) { return WeylElement::variable(sig, Axis::X, i); }

const FamilyCheck& row(const FamilyReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return c;
    static FamilyCheck missing;
    REQUIRE(false);
    return missing;
}

} // namespace

TEST_CASE("rho reads the minimal weighted degree in x") {
    SigPtr sig = xsig();
    auto x1 = xvar(sig, 0), x2 = xvar(sig, 1);
    CHECK(rho(x1 * x1 + x2 * x2 * x2, {3, 2}) == 6);
    CHECK(rho(x1 * x1 * x1 + x2 * x2, {3, 2}) == 4);
    CHECK(rho(WeylElement::constant(sig, Scalar(5)), {3, 2}) == 0);
    CHECK(rho(x1 + x2 * x2, {2, 1}) == 2);
    CHECK(thrown_code([&] { rho(WeylElement::zero(sig), {1, 1}); }) == Err::ZeroElement);
}

TEST_CASE("hypothesis rows for the reference family") {
    auto spec = FamilySpec::make(2, 3, 3, 2);
    CHECK(spec.alpha1() == std::array<long, 2>{3, 2});
    CHECK(spec.alpha2() == std::array<long, 2>{2, 3});
    CHECK(spec.N1() == 6);
    CHECK(spec.N2() == 6);
    CHECK(rho(spec.f2(), spec.alpha1()) == 4);
    CHECK(rho(spec.f1(), spec.alpha2()) == 4);

    auto report = validate(spec);
    CHECK(report.pass());
    CHECK(report.checks.size() == 4);
    CHECK(row(report, "bc > ad").detail == "bc = 9, ad = 4");

    std::vector<long> w{0, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    CHECK(spec.W1() == w);
    CHECK(spec.W2() == w);
}

TEST_CASE("degenerate and tail violations are rows, not errors") {
    auto flat = FamilySpec::make(1, 1, 1, 1);
    auto report = validate(flat);
    CHECK_FALSE(report.pass());
    CHECK_FALSE(row(report, "bc > ad").pass);
    CHECK(row(report, "bc > ad").detail == "bc = 1, ad = 1");
    CHECK(row(report, "C(y) != 0").pass);
    CHECK(thrown_code([&] { explicit_b(flat); }) == Err::HypothesisViolated);

    SigPtr sig = xsig();
    auto low = FamilySpec::make(2, 3, 3, 2, 0, Scalar(1), Scalar(1), Scalar(1), Scalar(1),
                                xvar(sig, 0), WeylElement::zero(sig));
    auto tail = validate(low);
    CHECK_FALSE(tail.pass());
    CHECK(row(tail, "rho_alpha1(g1) > ab").detail == "rho = 3, needs > 6");

    // alpha1-degree of x1^2 x2^2 is 10 > 6, so this tail is admissible
    auto high = FamilySpec::make(2, 3, 3, 2, 0, Scalar(1), Scalar(1), Scalar(1), Scalar(1),
                                 xvar(sig, 0) * xvar(sig, 0) * xvar(sig, 1) * xvar(sig, 1),
                                 WeylElement::zero(sig));
    CHECK(validate(high).pass());
    CHECK(explicit_b(high).degree() == 22);

    auto zero_coeff = FamilySpec::make(2, 3, 3, 2, 0, Scalar(0), Scalar(1), Scalar(1), Scalar(1),
                                       WeylElement::zero(sig), WeylElement::zero(sig));
    CHECK_FALSE(row(validate(zero_coeff), "C(y) != 0").pass);

    CHECK(thrown_code([&] { FamilySpec::make(0, 3, 3, 2); }) == Err::HypothesisViolated);
    CHECK(thrown_code([&] {
              FamilySpec::make(2, 3, 3, 2, 0, Scalar(1), Scalar(1), Scalar(1), Scalar(1),
                               WeylElement::variable(sig, Axis::DX, 0), WeylElement::zero(sig));
          }) == Err::HypothesisViolated);
}

TEST_CASE("the closed-form polynomial for exponents (2,3,3,2)") {
    auto b = explicit_b(FamilySpec::make(2, 3, 3, 2));
    CHECK(b.degree() == 22);
    CHECK(b.str() ==
          "(s2 + 1)(s1 + 1)"
          "(4*s1 + 6*s2 + 5)(4*s1 + 6*s2 + 7)(4*s1 + 6*s2 + 8)(4*s1 + 6*s2 + 9)"
          "(4*s1 + 6*s2 + 10)(4*s1 + 6*s2 + 11)(4*s1 + 6*s2 + 12)(4*s1 + 6*s2 + 13)"
          "(4*s1 + 6*s2 + 14)(4*s1 + 6*s2 + 15)"
          "(6*s1 + 4*s2 + 5)(6*s1 + 4*s2 + 7)(6*s1 + 4*s2 + 8)(6*s1 + 4*s2 + 9)"
          "(6*s1 + 4*s2 + 10)(6*s1 + 4*s2 + 11)(6*s1 + 4*s2 + 12)(6*s1 + 4*s2 + 13)"
          "(6*s1 + 4*s2 + 14)(6*s1 + 4*s2 + 15)");

    // the trivial factors and the sizing identity deg = 2 + |W1| + |W2|
    auto spec = FamilySpec::make(2, 3, 3, 2);
    CHECK(b.degree() == 2 + long(spec.W1().size()) + long(spec.W2().size()));
    bool s1p1 = false, s2p1 = false;
    for (const auto& f : b.factors) {
        if (f.l == std::array<long, 2>{1, 0} && f.a == 1) s1p1 = true;
        if (f.l == std::array<long, 2>{0, 1} && f.a == 1) s2p1 = true;
        CHECK(f.a > 0);
    }
    CHECK(s1p1);
    CHECK(s2p1);

    // parameter coefficients do not change the generic polynomial
    SigPtr sig = xsig();
    auto par = FamilySpec::make(2, 3, 3, 2, 1, Scalar::parameter(0), Scalar(1), Scalar(1),
                                Scalar(1), WeylElement::zero(sig), WeylElement::zero(sig));
    CHECK(explicit_b(par).str() == b.str());
}

TEST_CASE("swapping the two polynomials mirrors the factors") {
    // (a,b,c1,c2,g1) <-> (d,c,c4,c3,g2) exchanges s1 and s2
    auto b1 = explicit_b(FamilySpec::make(1, 2, 3, 2));
    auto b2 = explicit_b(FamilySpec::make(2, 3, 2, 1));
    CHECK(b1.degree() == b2.degree());
    FactoredBS mirror;
    for (const auto& f : b1.factors) mirror.push({f.l[1], f.l[0]}, f.a, f.mult);
    CHECK(mirror.str() == b2.str());

    // both W sets contain 0, so the smallest constants a+b and c+d appear
    auto spec = FamilySpec::make(1, 2, 3, 2);
    CHECK(spec.W1().front() == 0);
    CHECK(spec.W2().front() == 0);
}

TEST_CASE("randomized specialization checks of the generic polynomial") {
    SigPtr sig = xsig();
    auto z = WeylElement::zero(sig);
    auto spec = FamilySpec::make(1, 2, 2, 1, 4, Scalar::parameter(0), Scalar::parameter(1),
                                 Scalar::parameter(2), Scalar::parameter(3), z, z);
    CHECK(validate(spec).pass());
    auto b = explicit_b(spec);
    CHECK(b.str() == "(s2 + 1)(s1 + 1)(s1 + 2*s2 + 3)(2*s1 + s2 + 3)");

    auto report = generic_verify(spec, 2, 7, 5);
    REQUIRE(report.trials.size() == 2);
    CHECK(report.pass());
    for (const auto& t : report.trials) {
        CHECK(t.member);
        REQUIRE(t.certificate.has_value());
        PolyPair pair =
            PolyPair::make(2, {spec.f1().specialize(t.y0), spec.f2().specialize(t.y0)});
        CHECK(action_check(*t.certificate, pair));
        for (const auto& q : t.y0) CHECK(q != 0);
    }
    CHECK(report.trials[0].y0 == std::vector<mpq_class>{mpq_class(-3), mpq_class(3),
                                                        mpq_class(-3, 5), mpq_class(1)});

    // same seed, same draws and verdicts
    auto again = generic_verify(spec, 2, 7, 5);
    REQUIRE(again.trials.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
        CHECK(again.trials[i].y0 == report.trials[i].y0);
        CHECK(again.trials[i].member == report.trials[i].member);
    }

    // no trials: vacuous pass, but the polynomial is still reported
    auto vac = generic_verify(spec, 0, 1);
    CHECK(vac.pass());
    CHECK(vac.trials.empty());
    CHECK(vac.b.degree() == 4);
}

TEST_CASE("zero parameter draws are rejected and redrawn") {
    SigPtr sig = xsig();
    auto z = WeylElement::zero(sig);
    auto spec = FamilySpec::make(1, 2, 2, 1, 1, Scalar::parameter(0), Scalar(1), Scalar(1),
                                 Scalar(1), z, z);
    // seed 2's first numerator draw is 0, which kills C(y); the trial must
    // land on a nonzero redraw
    {
        std::mt19937_64 rng(2);
        CHECK(long(rng() % 11) - 5 == 0);
    }
    auto report = generic_verify(spec, 1, 2, 5, {}, false);
    REQUIRE(report.trials.size() == 1);
    CHECK(report.trials[0].member);
    CHECK(report.trials[0].y0[0] != 0);
    CHECK_FALSE(report.trials[0].certificate.has_value());

    CHECK(thrown_code([&] { generic_verify(spec, 1, 2, 0); }) == Err::ArityMismatch);
}
