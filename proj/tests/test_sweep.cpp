#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "preeb/generators.hpp"
#include "preeb/sweep.hpp"

using namespace preeb;

namespace {

Polynomial circle(double cx, double cy, double r, bool inside_positive) {
    double s = inside_positive ? -1.0 : 1.0;
    return Polynomial(2, {{{2, 0}, s},
                          {{0, 2}, s},
                          {{1, 0}, -2.0 * cx * s},
                          {{0, 1}, -2.0 * cy * s},
                          {{0, 0}, s * (cx * cx + cy * cy) - s * r * r}});
}

AlgebraicDomain annulus() {
    return AlgebraicDomain(2, {circle(0, 0, 2.0, true), circle(0, 0, 1.0, false)}, 2.5);
}

AlgebraicDomain disk() { return AlgebraicDomain(2, {circle(0, 0, 1.0, true)}, 1.5); }

}  // namespace

TEST_CASE("resultant eliminates the second variable") {
    // Circle and its vertical-tangency condition.
    Polynomial f(2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}, {{0, 0}, -1.0}});
    Polynomial fy = f.partial(1);
    Polynomial res = resultant_x2(f, fy);
    REQUIRE(res.nvars() == 1);
    std::vector<double> roots = real_roots(res, Interval(-2.0, 2.0));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(roots[1] == doctest::Approx(1.0).epsilon(1e-9));

    // A common factor makes the resultant vanish identically.
    CHECK_THROWS_AS(resultant_x2(f, f), DegenerateInput);
    // Inputs must involve the second variable.
    Polynomial only_x1(2, {{{1, 0}, 1.0}});
    CHECK_THROWS_AS(resultant_x2(only_x1, fy), DegenerateInput);
}

TEST_CASE("critical x-values of the annulus") {
    std::vector<CriticalPoint> cps = critical_x_values(annulus());
    REQUIRE(cps.size() == 4);
    CHECK(cps[0].xvalue == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(cps[1].xvalue == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(cps[2].xvalue == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cps[3].xvalue == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(cps[0].curve == 0);
    CHECK(cps[1].curve == 1);
    CHECK(cps[2].curve == 1);
    CHECK(cps[3].curve == 0);
    for (const auto& c : cps) CHECK(std::fabs(c.x[1]) < 1e-8);
}

TEST_CASE("critical x-values that collide are rejected") {
    // Two stacked holes with nearly equal radii produce tangencies closer
    // than the separation tolerance.
    AlgebraicDomain dom = make_stack(3, 0.0, 0.4, 0.4, 1e-9);
    CHECK_THROWS_AS(critical_x_values(dom), DegeneratePosition);
}

TEST_CASE("slab components of the annulus") {
    std::vector<Interval> mid = slab_components(annulus(), 0.0);
    REQUIRE(mid.size() == 2);
    CHECK(mid[0].lo == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(mid[0].hi == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(mid[1].lo == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(mid[1].hi == doctest::Approx(2.0).epsilon(1e-9));

    std::vector<Interval> outer = slab_components(annulus(), 1.5);
    REQUIRE(outer.size() == 1);
    CHECK(outer[0].lo == doctest::Approx(-std::sqrt(4.0 - 2.25)).epsilon(1e-9));
    CHECK(outer[0].hi == doctest::Approx(std::sqrt(4.0 - 2.25)).epsilon(1e-9));

    // Critical levels are rejected in strict mode...
    CHECK_THROWS_AS(slab_components(annulus(), 1.0), TangencyAtLevel);

    // ...but the permissive decomposition merges through the touch point.
    std::vector<Interval> touch = fiber_components(annulus(), 1.0, /*strict=*/false);
    REQUIRE(touch.size() == 1);
    CHECK(touch[0].lo == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-8));
    CHECK(touch[0].hi == doctest::Approx(std::sqrt(3.0)).epsilon(1e-8));

    // At the extreme level the fiber is a single point.
    std::vector<Interval> tip = fiber_components(annulus(), 2.0, /*strict=*/false);
    REQUIRE(tip.size() == 1);
    CHECK(tip[0].width() == doctest::Approx(0.0).epsilon(1e-7));

    // Boundary hits report which curve produced each endpoint.
    std::vector<BoundaryHit> hits;
    fiber_components(annulus(), 0.0, /*strict=*/true, {}, &hits);
    REQUIRE(hits.size() == 4);
    int outer_hits = 0, inner_hits = 0;
    for (const auto& h : hits) {
        if (h.curve == 0) ++outer_hits;
        if (h.curve == 1) ++inner_hits;
    }
    CHECK(outer_hits == 2);
    CHECK(inner_hits == 2);
}

TEST_CASE("graph of the disk is a single edge") {
    ReebGraph g = build_poincare_reeb(disk());
    REQUIRE(g.vertices().size() == 2);
    REQUIRE(g.edges().size() == 1);
    CHECK(g.vertices()[0].value == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(g.vertices()[1].value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(g.vertices()[0].critical);
    CHECK(g.vertices()[1].critical);
    CHECK(g.edges()[0].interval.lo == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(g.edges()[0].interval.hi == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(betti1(g) == 0);
}

TEST_CASE("graph of the annulus is a cycle with two whiskers") {
    ReebGraph g = build_poincare_reeb(annulus());
    REQUIRE(g.vertices().size() == 4);
    REQUIRE(g.edges().size() == 4);
    std::vector<int> degs = g.degree_sequence();
    CHECK(degs == std::vector<int>{1, 1, 3, 3});
    CHECK(betti1(g) == 1);
    CHECK(connected_components(g) == 1);

    // Values are the four critical levels, embeds sit on the correct curves.
    std::vector<double> vals;
    for (const auto& v : g.vertices()) {
        vals.push_back(v.value);
        CHECK(v.critical);
        REQUIRE(v.embed.has_value());
        double r2 = (*v.embed)[0] * (*v.embed)[0] + (*v.embed)[1] * (*v.embed)[1];
        bool on_outer = std::fabs(r2 - 4.0) < 1e-6;
        bool on_inner = std::fabs(r2 - 1.0) < 1e-6;
        CHECK((on_outer || on_inner));
    }
    std::sort(vals.begin(), vals.end());
    CHECK(vals[0] == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(vals[1] == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(vals[2] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(vals[3] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("graph of chain(3)") {
    ReebGraph g = build_poincare_reeb(make_chain(3));
    CHECK(g.vertices().size() == 6);
    CHECK(g.edges().size() == 7);
    CHECK(g.count_degree(1) == 2);
    CHECK(g.count_degree(3) == 4);
    CHECK(betti1(g) == 2);
}

TEST_CASE("graph of stack(3), faithful and merged") {
    AlgebraicDomain dom = make_stack(3);
    ReebGraph faithful = build_poincare_reeb(dom);
    CHECK(faithful.vertices().size() == 6);
    CHECK(faithful.edges().size() == 7);
    CHECK(betti1(faithful) == 2);

    SweepOptions opts;
    opts.merge_window = 1e-2;
    ReebGraph merged = build_poincare_reeb(dom, opts);
    CHECK(merged.vertices().size() == 4);
    CHECK(merged.edges().size() == 5);
    CHECK(merged.count_degree(1) == 2);
    CHECK(merged.count_degree(4) == 2);
    CHECK(betti1(merged) == 2);
}

TEST_CASE("property: edge count over a level equals the fiber component count") {
    AlgebraicDomain dom = annulus();
    ReebGraph g = build_poincare_reeb(dom);
    std::vector<double> criticals = {-2.0, -1.0, 1.0, 2.0};
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int tested = 0;
    while (tested < 50) {
        double t = u(rng);
        bool near_crit = false;
        for (double c : criticals)
            if (std::fabs(t - c) < 1e-3) near_crit = true;
        if (near_crit) continue;
        ++tested;
        size_t comps = slab_components(dom, t).size();
        size_t edges_over = 0;
        for (const auto& e : g.edges())
            if (e.interval.lo < t && t < e.interval.hi) ++edges_over;
        CHECK(comps == edges_over);
    }
}

TEST_CASE("property: slab component intervals are disjoint and ordered") {
    AlgebraicDomain dom = make_chain(4);
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(-dom.bound, dom.bound);
    int tested = 0;
    while (tested < 60) {
        double t = u(rng);
        std::vector<Interval> comps;
        try {
            comps = slab_components(dom, t);
        } catch (const Error&) {
            continue;  // tangential or empty level
        }
        ++tested;
        for (size_t i = 0; i + 1 < comps.size(); ++i) {
            CHECK(comps[i].hi < comps[i + 1].lo);
        }
        // Component interiors really lie in the domain.
        for (const auto& c : comps)
            if (c.width() > 1e-9)
                CHECK(classify(dom, {t, c.mid()}).tag == Region::Interior);
    }
}
