#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <optional>
#include <set>

#include "bsfan/error.hpp"
#include "bsfan/fan.hpp"

using namespace bsfan;

namespace {

using Ray = std::array<long, 2>;

WeylElement v(const SigPtr& sig, Axis a, unsigned i = 0) {
    return WeylElement::variable(sig, a, i);
}

PolyPair pair2(std::vector<WeylElement> comps) { return PolyPair::make(2, std::move(comps)); }

PolyPair normal_crossing() {
    SigPtr w = share(Signature::weyl(2, 2));
    return pair2({v(w, Axis::X, 0), v(w, Axis::X, 1)});
}

// Splits the quadrant at (3,1): the lowest slope where x2^3 overtakes x1^2.
PolyPair two_cone_pair() {
    SigPtr w = share(Signature::weyl(2, 2));
    auto x1 = v(w, Axis::X, 0), x2 = v(w, Axis::X, 1);
    return pair2({x1 * x1 + x2 * x2 * x2, x2});
}

PolyPair six_cone_pair() {
    SigPtr w = share(Signature::weyl(2, 2));
    auto x1 = v(w, Axis::X, 0), x2 = v(w, Axis::X, 1);
    return pair2({x1 + x2 * x2, x2 + x1 * x1});
}

PolyPair cusp_pair() {
    SigPtr w = share(Signature::weyl(2, 2));
    auto x1 = v(w, Axis::X, 0), x2 = v(w, Axis::X, 1);
    return pair2({x1 * x1 + x2 * x2 * x2, x1 * x1 * x1 + x2 * x2});
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

bool same_basis(const MarkedBasis& a, const MarkedBasis& b) {
    if (a.elems.size() != b.elems.size()) return false;
    for (size_t i = 0; i < a.elems.size(); ++i) {
        if (!(a.marks[i] == b.marks[i])) return false;
        if (!(a.elems[i] - b.elems[i]).is_zero()) return false;
    }
    return true;
}

// Interval coverage: cones sorted by slope, consecutive boundaries shared,
// spanning the whole quadrant.
void check_coverage(const RestrictedFan& fan) {
    REQUIRE(!fan.cones.empty());
    CHECK(fan.cones.front().cone.ray_low == Ray{1, 0});
    CHECK(fan.cones.back().cone.ray_high == Ray{0, 1});
    for (size_t i = 0; i + 1 < fan.cones.size(); ++i)
        CHECK(fan.cones[i].cone.ray_high == fan.cones[i + 1].cone.ray_low);
    for (const auto& c : fan.cones) {
        CHECK(!c.cone.empty);
        CHECK(!c.cone.is_ray());
        CHECK(c.cone.contains(c.witness[0], c.witness[1]));
    }
    for (const auto& wall : fan.walls) {
        bool shared = false;
        for (size_t i = 0; i + 1 < fan.cones.size(); ++i)
            shared |= fan.cones[i].cone.ray_high == wall;
        CHECK(shared);
    }
}

} // namespace

TEST_CASE("normal crossing fan is a single cone") {
    PolyPair f = normal_crossing();
    RestrictedFan fan = restricted_fan(f);

    REQUIRE(fan.cones.size() == 1);
    CHECK(fan.walls.empty());
    CHECK(fan.cones[0].witness == Ray{1, 1});
    CHECK(fan.cones[0].basis.elems.size() == 4);
    check_coverage(fan);

    CHECK(skeleton(fan) == std::vector<Ray>{{1, 0}, {0, 1}});
    CHECK(skeleton(fan, false).empty());

    for (const auto& g : fan.hgens) {
        // homogenized generators have constant total degree across terms
        std::vector<long> ones(fan.hsig->slots(), 1);
        long d = -1;
        for (const auto& [m, c] : g.terms()) {
            long t = mono_weight(m, ones);
            if (d < 0) d = t;
            CHECK(t == d);
        }
    }

    KappaResult kp = kappa(f, fan);
    CHECK(kp.kappa == Ray{0, 0});
    CHECK(kp.rows.size() == 4);
    for (const auto& row : kp.rows) CHECK(row.diff == 0);
}

TEST_CASE("two cone fan splits at the expected ray") {
    PolyPair f = two_cone_pair();
    RestrictedFan fan = restricted_fan(f);

    REQUIRE(fan.cones.size() == 2);
    CHECK(fan.walls.empty());
    check_coverage(fan);
    CHECK(fan.cones[0].cone.ray_high == Ray{3, 1});
    CHECK(skeleton(fan) == std::vector<Ray>{{1, 0}, {3, 1}, {0, 1}});
    CHECK(skeleton(fan, false) == std::vector<Ray>{{3, 1}});

    CHECK(!same_basis(fan.cones[0].basis, fan.cones[1].basis));

    KappaResult kp = kappa(f, fan);
    CHECK(kp.kappa == Ray{1, 0});
    for (const auto& row : kp.rows) CHECK(row.diff >= 0);

    // a second run reproduces the fan exactly
    RestrictedFan again = restricted_fan(f);
    REQUIRE(again.cones.size() == fan.cones.size());
    for (size_t i = 0; i < fan.cones.size(); ++i) {
        CHECK(again.cones[i].witness == fan.cones[i].witness);
        CHECK(again.cones[i].cone.ray_low == fan.cones[i].cone.ray_low);
        CHECK(again.cones[i].cone.ray_high == fan.cones[i].cone.ray_high);
        CHECK(same_basis(again.cones[i].basis, fan.cones[i].basis));
    }
}

TEST_CASE("six cone fan agrees with a direction grid") {
    PolyPair f = six_cone_pair();
    RestrictedFan fan = restricted_fan(f);

    REQUIRE(fan.cones.size() == 6);
    check_coverage(fan);
    CHECK(skeleton(fan) ==
          std::vector<Ray>{{1, 0}, {2, 1}, {3, 2}, {1, 1}, {2, 3}, {1, 2}, {0, 1}});

    // every grid direction lands in the matching cone with the same basis
    for (long a = 1; a <= 5; ++a) {
        for (long b = 1; b <= 5; ++b) {
            MarkedBasis B = lh_basis(fan.hgens, {a, b});
            GroebnerCone C = groebner_cone(B);
            if (C.is_ray()) {
                // (a,b) sits on a facet; both neighbours must exist
                bool facet = false;
                for (size_t i = 0; i + 1 < fan.cones.size(); ++i) {
                    auto r = fan.cones[i].cone.ray_high;
                    facet |= r[0] * b == r[1] * a;
                }
                CHECK(facet);
                continue;
            }
            bool found = false;
            for (const auto& c : fan.cones) {
                if (c.cone.ray_low != C.ray_low || c.cone.ray_high != C.ray_high) continue;
                found = true;
                CHECK(same_basis(c.basis, B));
            }
            CHECK(found);
        }
    }

    // interior probes of each cone reproduce the stored basis
    for (const auto& c : fan.cones) {
        Ray lo = c.cone.ray_low, hi = c.cone.ray_high;
        Ray probes[2] = {{lo[0] + hi[0], lo[1] + hi[1]},
                         {2 * lo[0] + hi[0], 2 * lo[1] + hi[1]}};
        for (const auto& d : probes) {
            CHECK(c.cone.contains(d[0], d[1]));
            MarkedBasis B = lh_basis(fan.hgens, {d[0], d[1]});
            CHECK(same_basis(c.basis, B));
        }
    }

    KappaResult kp = kappa(f, fan);
    CHECK(kp.kappa == Ray{3, 0});
}

TEST_CASE("fan input and budget errors") {
    CHECK(thrown_code([] { skeleton(RestrictedFan{}); }) == Err::EmptyFan);

    PolyPair f = two_cone_pair();
    FanOptions tight;
    tight.cone_budget = 0;
    CHECK(thrown_code([&] { restricted_fan(f, tight); }) == Err::FanBudgetExceeded);
    tight.cone_budget = 1;
    CHECK(thrown_code([&] { restricted_fan(f, tight); }) == Err::FanBudgetExceeded);
    tight.cone_budget = 2;
    CHECK(restricted_fan(f, tight).cones.size() == 2);

    SigPtr w = share(Signature::weyl(2, 3));
    auto x1 = v(w, Axis::X, 0);
    PolyPair triple = PolyPair::make(2, {x1, x1, x1});
    CHECK(thrown_code([&] { restricted_fan(triple); }) == Err::ArityMismatch);

    // kappa against a fan built from a different pair
    RestrictedFan fan = restricted_fan(f);
    PolyPair g = normal_crossing();
    KappaResult kp = kappa(g, fan); // same signature: fine, recipe only reads the fan
    CHECK(kp.rows.size() > 0);
}

TEST_CASE("cusp pair fan golden values") {
    PolyPair f = cusp_pair();
    RestrictedFan fan = restricted_fan(f);

    REQUIRE(fan.cones.size() == 8);
    check_coverage(fan);
    CHECK(fan.hgens.size() == 31);

    CHECK(skeleton(fan) == std::vector<Ray>{{1, 0},
                                            {2, 1},
                                            {3, 2},
                                            {4, 3},
                                            {1, 1},
                                            {3, 4},
                                            {2, 3},
                                            {1, 2},
                                            {0, 1}});
    CHECK(fan.walls == std::vector<Ray>{{2, 1}, {3, 2}, {1, 1}, {2, 3}, {1, 2}});

    std::vector<Ray> witnesses;
    for (const auto& c : fan.cones) witnesses.push_back(c.witness);
    CHECK(witnesses == std::vector<Ray>{{3, 1},
                                        {5, 3},
                                        {4, 3},
                                        {5, 4},
                                        {3, 4},
                                        {5, 7},
                                        {3, 5},
                                        {1, 3}});

    KappaResult kp = kappa(f, fan);
    CHECK(kp.kappa == Ray{7, 0});
    long observed_max = 0;
    for (const auto& row : kp.rows) {
        CHECK(row.diff >= 0);
        CHECK(row.diff == row.ord_v1 - row.ord_mark);
        observed_max = std::max(observed_max, row.diff);
    }
    CHECK(observed_max == 7);
}
