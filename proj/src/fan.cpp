#include "bsfan/fan.hpp"

#include <algorithm>
#include <numeric>

#include "bsfan/error.hpp"

namespace bsfan {

namespace {

using Ray = std::array<long, 2>;

// Slopes l2/l1 over the quadrant; (1,0) is 0 and (0,1) is +infinity.
int slope_cmp(const Ray& a, const Ray& b) {
    __int128 lhs = static_cast<__int128>(a[1]) * b[0];
    __int128 rhs = static_cast<__int128>(b[1]) * a[0];
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

Ray primitive(Ray r) {
    long g = std::gcd(r[0], r[1]);
    if (g > 1) {
        r[0] /= g;
        r[1] /= g;
    }
    return r;
}

Ray mediant(const Ray& a, const Ray& b) { return primitive({a[0] + b[0], a[1] + b[1]}); }

// Covered slope intervals; walls are zero-width entries splitting gaps.
struct Interval {
    Ray lo, hi;
    int cone = -1; // index into fan.cones, -1 for a wall
};

} // namespace

RestrictedFan restricted_fan(const PolyPair& f, const FanOptions& opts) {
    if (f.p != 2) fail(Err::ArityMismatch, "the restricted fan is specific to pairs");

    RestrictedFan fan;
    MarkedBasis G0 = buchberger(malgrange_ideal(f), TermOrder::graded(), opts.gb);
    fan.hgens.reserve(G0.elems.size());
    for (const WeylElement& g : G0.elems) fan.hgens.push_back(g.homogenize());
    if (fan.hgens.empty()) fail(Err::Internal, "empty homogenized basis");
    fan.hsig = fan.hgens.front().sig_ptr();

    std::vector<Interval> covered;
    auto insert_sorted = [&](Interval iv) {
        for (const Interval& e : covered)
            if (slope_cmp(iv.lo, e.hi) < 0 && slope_cmp(e.lo, iv.hi) < 0)
                fail(Err::Internal, "fan cones overlap");
        auto pos = std::find_if(covered.begin(), covered.end(), [&](const Interval& e) {
            int c = slope_cmp(iv.lo, e.lo);
            return c < 0 || (c == 0 && slope_cmp(iv.hi, e.hi) < 0);
        });
        covered.insert(pos, std::move(iv));
    };

    const Ray axis_lo{1, 0}, axis_hi{0, 1};
    while (true) {
        // First slope gap not yet covered.
        Ray cur = axis_lo;
        bool found = false;
        Ray gap_lo{}, gap_hi{};
        for (const Interval& e : covered) {
            if (slope_cmp(cur, e.lo) < 0) {
                found = true;
                gap_lo = cur;
                gap_hi = e.lo;
                break;
            }
            if (slope_cmp(cur, e.hi) < 0) cur = e.hi;
        }
        if (!found && slope_cmp(cur, axis_hi) < 0) {
            found = true;
            gap_lo = cur;
            gap_hi = axis_hi;
        }
        if (!found) break;

        if (fan.cones.size() + fan.walls.size() >= opts.cone_budget)
            fail(Err::FanBudgetExceeded, "cone budget exhausted; raise --cone-budget");

        Ray probe = mediant(gap_lo, gap_hi);
        MarkedBasis B = lh_basis(fan.hgens, {probe[0], probe[1]}, opts.gb);
        GroebnerCone C = groebner_cone(B);
        if (C.empty) fail(Err::Internal, "probe direction produced an empty cone");

        if (C.is_ray()) {
            // Landed exactly on a wall: remember the breakpoint, the two
            // sides get probed on later rounds.
            fan.walls.push_back(C.ray_low);
            insert_sorted({C.ray_low, C.ray_low, -1});
            continue;
        }
        fan.cones.push_back({C, probe, std::move(B)});
        insert_sorted({C.ray_low, C.ray_high, static_cast<int>(fan.cones.size()) - 1});
    }

    // Present cones in slope order regardless of discovery order.
    std::vector<FanCone> sorted;
    sorted.reserve(fan.cones.size());
    for (const Interval& e : covered)
        if (e.cone >= 0) sorted.push_back(std::move(fan.cones[e.cone]));
    fan.cones = std::move(sorted);
    std::sort(fan.walls.begin(), fan.walls.end(),
              [](const Ray& a, const Ray& b) { return slope_cmp(a, b) < 0; });
    return fan;
}

std::vector<std::array<long, 2>> skeleton(const RestrictedFan& fan, bool include_boundary) {
    if (fan.cones.empty()) fail(Err::EmptyFan, "fan without maximal cones has no skeleton");
    std::vector<Ray> rays;
    for (const FanCone& c : fan.cones) {
        rays.push_back(c.cone.ray_low);
        rays.push_back(c.cone.ray_high);
    }
    std::sort(rays.begin(), rays.end(), [](const Ray& a, const Ray& b) { return slope_cmp(a, b) < 0; });
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    if (!include_boundary) {
        rays.erase(std::remove_if(rays.begin(), rays.end(),
                                  [](const Ray& r) { return r == Ray{1, 0} || r == Ray{0, 1}; }),
                   rays.end());
    }
    return rays;
}

KappaResult kappa(const PolyPair& f, const RestrictedFan& fan) {
    KappaResult res;
    if (fan.cones.empty()) return res;
    if (fan.hsig->n != f.n || fan.hsig->p != f.p)
        fail(Err::SignatureMismatch, "fan was built from a different pair shape");

    std::vector<long> w1 = v_weights(*fan.hsig, {1, 0});
    for (const FanCone& c : fan.cones) {
        for (size_t k = 0; k < c.basis.elems.size(); ++k) {
            KappaRow row;
            row.element = c.basis.elems[k];
            row.ord_v1 = row.element.max_weight(w1);
            row.ord_mark = mono_weight(c.basis.marks[k], w1);
            row.diff = row.ord_v1 - row.ord_mark;
            if (row.diff < 0) fail(Err::Internal, "marked monomial exceeds the element's order");
            res.kappa[0] = std::max(res.kappa[0], row.diff);
            res.rows.push_back(std::move(row));
        }
    }
    return res;
}

} // namespace bsfan
