#include <doctest.h>

#include "preeb/reeb_graph.hpp"

using namespace preeb;

namespace {

// Path with the given vertex values; returns the graph.
ReebGraph make_path(const std::vector<double>& values, bool mark_critical = false) {
    ReebGraph g;
    std::vector<int> ids;
    for (double v : values) ids.push_back(g.add_vertex(v, std::nullopt, mark_critical));
    for (size_t i = 0; i + 1 < ids.size(); ++i)
        g.add_edge(ids[i], ids[i + 1],
                   Interval(std::min(values[i], values[i + 1]),
                            std::max(values[i], values[i + 1])));
    return g;
}

ReebGraph make_cycle(int n) {
    ReebGraph g;
    std::vector<int> ids;
    for (int i = 0; i < n; ++i) ids.push_back(g.add_vertex(i));
    for (int i = 0; i < n; ++i) {
        int a = ids[i], b = ids[(i + 1) % n];
        double lo = std::min(g.vertices()[a].value, g.vertices()[b].value);
        double hi = std::max(g.vertices()[a].value, g.vertices()[b].value);
        g.add_edge(a, b, Interval(lo, hi));
    }
    return g;
}

}  // namespace

TEST_CASE("graph basics") {
    ReebGraph g;
    int a = g.add_vertex(0.0);
    int b = g.add_vertex(1.0);
    g.add_edge(a, b, Interval(0.0, 1.0));
    CHECK(g.degree(a) == 1);
    CHECK(g.degree(b) == 1);
    CHECK_THROWS_AS(g.add_edge(a, a, Interval(0.0, 0.0)), DegenerateInput);
    CHECK_THROWS_AS(g.add_edge(a, 5, Interval(0.0, 1.0)), DimensionError);

    CHECK(connected_components(g) == 1);
    CHECK(betti1(g) == 0);
}

TEST_CASE("canonical order sorts by value") {
    ReebGraph g;
    int a = g.add_vertex(2.0);
    int b = g.add_vertex(-1.0);
    int c = g.add_vertex(0.5);
    g.add_edge(a, c, Interval(0.5, 2.0));
    g.add_edge(c, b, Interval(-1.0, 0.5));
    ReebGraph s = g.canonical_order();
    REQUIRE(s.vertices().size() == 3);
    CHECK(s.vertices()[0].value == doctest::Approx(-1.0));
    CHECK(s.vertices()[1].value == doctest::Approx(0.5));
    CHECK(s.vertices()[2].value == doctest::Approx(2.0));
    for (const auto& e : s.edges()) CHECK(e.a < e.b);
}

TEST_CASE("smoothing a path leaves a single edge") {
    ReebGraph g = make_path({0, 1, 2, 3, 4});
    ReebGraph s = smooth_degree2(g, /*keep_critical=*/false);
    CHECK(s.vertices().size() == 2);
    CHECK(s.edges().size() == 1);
    CHECK(s.edges()[0].interval.lo == doctest::Approx(0.0));
    CHECK(s.edges()[0].interval.hi == doctest::Approx(4.0));
    CHECK(betti1(s) == 0);
}

TEST_CASE("smoothing respects the keep-critical flag") {
    ReebGraph g;
    int a = g.add_vertex(0.0, std::nullopt, true);
    int m = g.add_vertex(1.0, std::nullopt, true);  // critical degree-2 vertex
    int p = g.add_vertex(0.5, std::nullopt, false); // plain degree-2 vertex
    int b = g.add_vertex(2.0, std::nullopt, true);
    g.add_edge(a, p, Interval(0.0, 0.5));
    g.add_edge(p, m, Interval(0.5, 1.0));
    g.add_edge(m, b, Interval(1.0, 2.0));

    ReebGraph keep = smooth_degree2(g, /*keep_critical=*/true);
    CHECK(keep.vertices().size() == 3);  // plain vertex removed, critical kept
    CHECK(keep.edges().size() == 2);

    ReebGraph all = smooth_degree2(g, /*keep_critical=*/false);
    CHECK(all.vertices().size() == 2);
    CHECK(all.edges().size() == 1);
}

TEST_CASE("smoothing never creates loops and halts cycles at three vertices") {
    // Two vertices joined by parallel edges: both degree 2, nothing to do.
    ReebGraph banana;
    int u = banana.add_vertex(0.0);
    int v = banana.add_vertex(1.0);
    banana.add_edge(u, v, Interval(0, 1));
    banana.add_edge(u, v, Interval(0, 1));
    ReebGraph sb = smooth_degree2(banana, false);
    CHECK(sb.vertices().size() == 2);
    CHECK(sb.edges().size() == 2);
    CHECK(betti1(sb) == 1);

    // A bare 5-cycle shrinks to a triangle and stops.
    ReebGraph c5 = make_cycle(5);
    ReebGraph sc = smooth_degree2(c5, false);
    CHECK(sc.vertices().size() == 3);
    CHECK(sc.edges().size() == 3);
    CHECK(betti1(sc) == 1);

    // A cycle hanging off a higher-degree vertex keeps collapsing into
    // parallel edges.
    ReebGraph theta;
    int x = theta.add_vertex(0.0);
    int y = theta.add_vertex(2.0);
    int top = theta.add_vertex(1.0);
    int bot = theta.add_vertex(1.0);
    int mid = theta.add_vertex(1.0);
    theta.add_edge(x, top, Interval(0, 1));
    theta.add_edge(top, y, Interval(1, 2));
    theta.add_edge(x, bot, Interval(0, 1));
    theta.add_edge(bot, y, Interval(1, 2));
    theta.add_edge(x, mid, Interval(0, 1));
    theta.add_edge(mid, y, Interval(1, 2));
    ReebGraph st = smooth_degree2(theta, false);
    CHECK(st.vertices().size() == 2);
    CHECK(st.edges().size() == 3);
    CHECK(betti1(st) == 2);
}

TEST_CASE("smoothing preserves betti1 and high-degree structure") {
    ReebGraph g;
    // Star with subdivided arms plus one doubled arm: degrees 4,1,1,1.
    int hub = g.add_vertex(0.0);
    for (int arm = 0; arm < 3; ++arm) {
        int m = g.add_vertex(1.0 + arm);
        int tip = g.add_vertex(2.0 + arm);
        g.add_edge(hub, m, Interval(0, 1));
        g.add_edge(m, tip, Interval(1, 2));
    }
    int back = g.add_vertex(5.0);
    g.add_edge(hub, back, Interval(0, 5));
    g.add_edge(hub, back, Interval(0, 5));

    ReebGraph s = smooth_degree2(g, false);
    CHECK(betti1(s) == betti1(g));
    CHECK(s.count_degree(5) == g.count_degree(5));
    CHECK(s.count_degree(1) == 3);
    // The doubled-arm endpoint keeps degree 2: removing it would need a loop.
    CHECK(s.count_degree(2) == 1);
    CHECK(s.vertices().size() == 5);
}

TEST_CASE("merging close critical vertices contracts their edges") {
    ReebGraph g;
    int a = g.add_vertex(1.0, std::nullopt, true);
    int b = g.add_vertex(1.0005, std::nullopt, true);
    int c = g.add_vertex(0.0, std::nullopt, true);
    int d = g.add_vertex(2.0, std::nullopt, true);
    g.add_edge(a, b, Interval(1.0, 1.0005));
    g.add_edge(c, a, Interval(0.0, 1.0));
    g.add_edge(b, d, Interval(1.0005, 2.0));

    ReebGraph m = merge_close_critical(g, 1e-2);
    CHECK(m.vertices().size() == 3);
    CHECK(m.edges().size() == 2);
    CHECK(betti1(m) == betti1(g));
    // Merged vertex sits at the mean value.
    bool found = false;
    for (const auto& v : m.vertices())
        if (v.value == doctest::Approx(1.00025)) found = v.critical;
    CHECK(found);

    // Outside the window nothing merges.
    ReebGraph none = merge_close_critical(g, 1e-5);
    CHECK(none.vertices().size() == 4);

    // Non-critical endpoints are never merged.
    ReebGraph h;
    int p = h.add_vertex(1.0, std::nullopt, false);
    int q = h.add_vertex(1.0001, std::nullopt, true);
    h.add_edge(p, q, Interval(1.0, 1.0001));
    CHECK(merge_close_critical(h, 1e-2).vertices().size() == 2);

    CHECK_THROWS_AS(merge_close_critical(g, -1.0), ConfigError);
}

TEST_CASE("merging a chain of close critical vertices") {
    // Five critical vertices 1e-3 apart, consecutive edges, plus pendants on
    // the ends; the whole cluster contracts to one vertex.
    ReebGraph g;
    std::vector<int> close;
    for (int i = 0; i < 5; ++i)
        close.push_back(g.add_vertex(1.0 + 1e-3 * i, std::nullopt, true));
    for (int i = 0; i + 1 < 5; ++i)
        g.add_edge(close[i], close[i + 1], Interval(1.0, 1.01));
    int left = g.add_vertex(0.0, std::nullopt, true);
    int right = g.add_vertex(2.0, std::nullopt, true);
    g.add_edge(left, close[0], Interval(0, 1));
    g.add_edge(close[4], right, Interval(1, 2));

    ReebGraph m = merge_close_critical(g, 1e-2);
    CHECK(m.vertices().size() == 3);
    CHECK(m.edges().size() == 2);
    CHECK(m.count_degree(2) == 1);
    CHECK(betti1(m) == 0);
}

TEST_CASE("isomorphism recognizes relabelings and rejects structure changes") {
    ReebGraph p1 = make_path({0, 1, 2});
    ReebGraph p2 = make_path({5, -1, 3});  // same shape, different values
    IsoResult r = isomorphic(p1, p2);
    CHECK(r.isomorphic);
    REQUIRE(r.mapping.size() == 3);
    // The mapping is a genuine bijection preserving degree.
    std::vector<bool> hit(3, false);
    for (int i = 0; i < 3; ++i) {
        CHECK(p1.degree(i) == p2.degree(r.mapping[i]));
        hit[r.mapping[i]] = true;
    }
    CHECK(hit[0]);
    CHECK(hit[1]);
    CHECK(hit[2]);

    // A 3-star is not a 3-path (degree sequences differ).
    ReebGraph star;
    int hub = star.add_vertex(0.0);
    for (int i = 0; i < 3; ++i) {
        int t = star.add_vertex(1.0 + i);
        star.add_edge(hub, t, Interval(0, 1));
    }
    CHECK_FALSE(isomorphic(make_path({0, 1, 2, 3}), star).isomorphic);

    ReebGraph tri = make_cycle(3);
    CHECK_FALSE(isomorphic(p1, tri).isomorphic);

    // Same degree sequence, different edge multiset: C4 vs two bananas.
    ReebGraph c4 = make_cycle(4);
    ReebGraph bananas;
    int a = bananas.add_vertex(0.0);
    int b = bananas.add_vertex(1.0);
    int c = bananas.add_vertex(2.0);
    int d = bananas.add_vertex(3.0);
    bananas.add_edge(a, b, Interval(0, 1));
    bananas.add_edge(a, b, Interval(0, 1));
    bananas.add_edge(c, d, Interval(2, 3));
    bananas.add_edge(c, d, Interval(2, 3));
    CHECK_FALSE(isomorphic(c4, bananas).isomorphic);

    // Parallel edges count: theta vs subdivided theta.
    ReebGraph theta;
    int x = theta.add_vertex(0.0);
    int y = theta.add_vertex(1.0);
    theta.add_edge(x, y, Interval(0, 1));
    theta.add_edge(x, y, Interval(0, 1));
    theta.add_edge(x, y, Interval(0, 1));
    ReebGraph theta2;
    int x2 = theta2.add_vertex(0.0);
    int y2 = theta2.add_vertex(1.0);
    theta2.add_edge(x2, y2, Interval(0, 1));
    theta2.add_edge(x2, y2, Interval(0, 1));
    theta2.add_edge(x2, y2, Interval(0, 1));
    CHECK(isomorphic(theta, theta2).isomorphic);
}

TEST_CASE("isomorphism is an equivalence relation on small graphs") {
    std::vector<ReebGraph> zoo;
    zoo.push_back(make_path({0, 1, 2, 3}));
    zoo.push_back(make_path({9, 1, -2, 4}));
    zoo.push_back(make_cycle(4));
    zoo.push_back(make_cycle(5));

    for (size_t i = 0; i < zoo.size(); ++i) {
        CHECK(isomorphic(zoo[i], zoo[i]).isomorphic);  // reflexive
        for (size_t j = 0; j < zoo.size(); ++j) {
            bool ij = isomorphic(zoo[i], zoo[j]).isomorphic;
            bool ji = isomorphic(zoo[j], zoo[i]).isomorphic;
            CHECK(ij == ji);  // symmetric
            for (size_t k = 0; k < zoo.size(); ++k) {
                bool jk = isomorphic(zoo[j], zoo[k]).isomorphic;
                bool ik = isomorphic(zoo[i], zoo[k]).isomorphic;
                if (ij && jk) CHECK(ik);  // transitive
            }
        }
    }
}

TEST_CASE("isomorphism refuses oversized graphs") {
    std::vector<double> vals(65);
    for (int i = 0; i < 65; ++i) vals[i] = i;
    ReebGraph big = make_path(vals);
    CHECK_THROWS_AS(isomorphic(big, big), SizeLimit);
}

TEST_CASE("betti and components") {
    ReebGraph g = make_cycle(6);
    CHECK(betti1(g) == 1);
    int iso_v = g.add_vertex(99.0);
    (void)iso_v;
    CHECK(connected_components(g) == 2);
    CHECK(betti1(g) == 1);  // E - V + C = 6 - 7 + 2
}
