#include "preeb/reeb_graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace preeb {

int ReebGraph::add_vertex(double value, std::optional<std::array<double, 2>> embed,
                          bool critical) {
    int id = static_cast<int>(vertices_.size());
    vertices_.push_back({id, value, embed, critical});
    return id;
}

int ReebGraph::add_edge(int a, int b, Interval interval,
                        std::vector<std::array<double, 2>> polyline) {
    if (a < 0 || b < 0 || a >= static_cast<int>(vertices_.size()) ||
        b >= static_cast<int>(vertices_.size()))
        throw DimensionError("ReebGraph::add_edge: endpoint out of range");
    if (a == b) throw DegenerateInput("ReebGraph::add_edge: loop edges are not allowed");
    int id = static_cast<int>(edges_.size());
    edges_.push_back({id, a, b, interval, std::move(polyline)});
    return id;
}

int ReebGraph::degree(int v) const {
    int d = 0;
    for (const auto& e : edges_) d += (e.a == v) + (e.b == v);
    return d;
}

std::vector<int> ReebGraph::degree_sequence() const {
    std::vector<int> deg(vertices_.size(), 0);
    for (const auto& e : edges_) {
        ++deg[static_cast<size_t>(e.a)];
        ++deg[static_cast<size_t>(e.b)];
    }
    std::sort(deg.begin(), deg.end());
    return deg;
}

int ReebGraph::count_degree(int d) const {
    std::vector<int> deg(vertices_.size(), 0);
    for (const auto& e : edges_) {
        ++deg[static_cast<size_t>(e.a)];
        ++deg[static_cast<size_t>(e.b)];
    }
    return static_cast<int>(std::count(deg.begin(), deg.end(), d));
}

ReebGraph ReebGraph::canonical_order() const {
    std::vector<int> order(vertices_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (vertices_[static_cast<size_t>(x)].value != vertices_[static_cast<size_t>(y)].value)
            return vertices_[static_cast<size_t>(x)].value <
                   vertices_[static_cast<size_t>(y)].value;
        return x < y;
    });
    std::vector<int> newid(vertices_.size());
    ReebGraph out;
    for (size_t i = 0; i < order.size(); ++i) {
        const auto& v = vertices_[static_cast<size_t>(order[i])];
        newid[static_cast<size_t>(order[i])] =
            out.add_vertex(v.value, v.embed, v.critical);
    }
    std::vector<ReebEdge> es = edges_;
    for (auto& e : es) {
        e.a = newid[static_cast<size_t>(e.a)];
        e.b = newid[static_cast<size_t>(e.b)];
        if (e.a > e.b) {
            std::swap(e.a, e.b);
            std::reverse(e.polyline.begin(), e.polyline.end());
        }
    }
    std::sort(es.begin(), es.end(), [](const ReebEdge& x, const ReebEdge& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.id < y.id;
    });
    for (const auto& e : es) out.add_edge(e.a, e.b, e.interval, e.polyline);
    return out;
}

namespace {

struct MutableEdge {
    int a, b;
    Interval interval;
    std::vector<std::array<double, 2>> polyline;
    bool alive = true;
};

ReebGraph rebuild(const std::vector<ReebVertex>& verts, const std::vector<bool>& vertex_alive,
                  const std::vector<MutableEdge>& edges) {
    ReebGraph out;
    std::vector<int> newid(verts.size(), -1);
    for (size_t i = 0; i < verts.size(); ++i)
        if (vertex_alive[i])
            newid[i] = out.add_vertex(verts[i].value, verts[i].embed, verts[i].critical);
    for (const auto& e : edges)
        if (e.alive)
            out.add_edge(newid[static_cast<size_t>(e.a)], newid[static_cast<size_t>(e.b)],
                         e.interval, e.polyline);
    return out.canonical_order();
}

}  // namespace

ReebGraph smooth_degree2(const ReebGraph& g, bool keep_critical) {
    std::vector<ReebVertex> verts = g.vertices();
    std::vector<bool> alive(verts.size(), true);
    std::vector<MutableEdge> edges;
    for (const auto& e : g.edges()) {
        std::vector<std::array<double, 2>> pl = e.polyline;
        if (pl.empty()) {
            auto ea = verts[static_cast<size_t>(e.a)].embed;
            auto eb = verts[static_cast<size_t>(e.b)].embed;
            if (ea && eb) pl = {*ea, *eb};
        }
        edges.push_back({e.a, e.b, e.interval, std::move(pl), true});
    }

    auto incident = [&](int v) {
        std::vector<size_t> out;
        for (size_t i = 0; i < edges.size(); ++i)
            if (edges[i].alive && (edges[i].a == v || edges[i].b == v)) out.push_back(i);
        return out;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t v = 0; v < verts.size(); ++v) {
            if (!alive[v]) continue;
            if (keep_critical && verts[v].critical) continue;
            auto inc = incident(static_cast<int>(v));
            if (inc.size() != 2) continue;
            MutableEdge& e1 = edges[inc[0]];
            MutableEdge& e2 = edges[inc[1]];
            int u = e1.a == static_cast<int>(v) ? e1.b : e1.a;
            int w = e2.a == static_cast<int>(v) ? e2.b : e2.a;
            // Never create a loop; and a bare cycle is left with three
            // vertices rather than collapsed toward one.
            if (u == w) continue;
            auto deg = [&](int x) { return incident(x).size(); };
            bool uw_adjacent = false;
            for (const auto& e : edges)
                if (e.alive && ((e.a == u && e.b == w) || (e.a == w && e.b == u)))
                    uw_adjacent = true;
            if (uw_adjacent && deg(u) == 2 && deg(w) == 2) continue;

            // Orient polylines so the chain flows u -> v -> w.
            std::vector<std::array<double, 2>> pl;
            auto append = [&pl](const std::vector<std::array<double, 2>>& part, bool reversed) {
                if (reversed) {
                    for (auto it = part.rbegin(); it != part.rend(); ++it) {
                        if (!pl.empty() && pl.back() == *it) continue;
                        pl.push_back(*it);
                    }
                } else {
                    for (const auto& p : part) {
                        if (!pl.empty() && pl.back() == p) continue;
                        pl.push_back(p);
                    }
                }
            };
            append(e1.polyline, e1.a == static_cast<int>(v));
            append(e2.polyline, e2.b == static_cast<int>(v));

            double lo = std::min(e1.interval.lo, e2.interval.lo);
            double hi = std::max(e1.interval.hi, e2.interval.hi);
            e1.alive = false;
            e2.alive = false;
            alive[v] = false;
            edges.push_back({u, w, Interval(lo, hi), std::move(pl), true});
            changed = true;
        }
    }
    return rebuild(verts, alive, edges);
}

ReebGraph merge_close_critical(const ReebGraph& g, double window) {
    if (window < 0.0) throw ConfigError("merge_close_critical: window must be >= 0");
    const auto& verts = g.vertices();
    std::vector<int> parent(verts.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    for (const auto& e : g.edges()) {
        const auto& va = verts[static_cast<size_t>(e.a)];
        const auto& vb = verts[static_cast<size_t>(e.b)];
        if (va.critical && vb.critical && std::fabs(va.value - vb.value) <= window) {
            parent[static_cast<size_t>(find(e.a))] = find(e.b);
        }
    }

    // One representative vertex per class, at the mean value of its members.
    std::map<int, std::vector<int>> classes;
    for (size_t i = 0; i < verts.size(); ++i)
        classes[find(static_cast<int>(i))].push_back(static_cast<int>(i));

    ReebGraph out;
    std::vector<int> newid(verts.size(), -1);
    for (const auto& [root, members] : classes) {
        double value = 0.0;
        std::optional<std::array<double, 2>> embed;
        bool critical = false;
        for (int m : members) {
            value += verts[static_cast<size_t>(m)].value;
            critical = critical || verts[static_cast<size_t>(m)].critical;
            if (!embed && verts[static_cast<size_t>(m)].embed)
                embed = verts[static_cast<size_t>(m)].embed;
        }
        value /= static_cast<double>(members.size());
        int id = out.add_vertex(value, embed, critical);
        for (int m : members) newid[static_cast<size_t>(m)] = id;
    }
    for (const auto& e : g.edges()) {
        int a = newid[static_cast<size_t>(e.a)];
        int b = newid[static_cast<size_t>(e.b)];
        if (a == b) continue;  // contracted
        out.add_edge(a, b, e.interval, e.polyline);
    }
    return out.canonical_order();
}

namespace {

// Adjacency multiset keyed by neighbor vertex with edge multiplicities.
std::vector<std::map<int, int>> adjacency(const ReebGraph& g) {
    std::vector<std::map<int, int>> adj(g.vertices().size());
    for (const auto& e : g.edges()) {
        adj[static_cast<size_t>(e.a)][e.b] += 1;
        adj[static_cast<size_t>(e.b)][e.a] += 1;
    }
    return adj;
}

}  // namespace

IsoResult isomorphic(const ReebGraph& a, const ReebGraph& b) {
    const size_t na = a.vertices().size();
    const size_t nb = b.vertices().size();
    if (na > 64 || nb > 64)
        throw SizeLimit("isomorphic: graphs above 64 vertices are not supported");
    IsoResult res;
    if (na != nb || a.edges().size() != b.edges().size()) return res;
    if (a.degree_sequence() != b.degree_sequence()) return res;

    auto adja = adjacency(a);
    auto adjb = adjacency(b);
    std::vector<int> dega(na), degb(nb);
    for (size_t i = 0; i < na; ++i)
        for (const auto& [n, m] : adja[i]) dega[i] += m;
    for (size_t i = 0; i < nb; ++i)
        for (const auto& [n, m] : adjb[i]) degb[i] += m;

    // Order source vertices by decreasing degree for early pruning.
    std::vector<int> order(na);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (dega[static_cast<size_t>(x)] != dega[static_cast<size_t>(y)])
            return dega[static_cast<size_t>(x)] > dega[static_cast<size_t>(y)];
        return x < y;
    });

    std::vector<int> map_ab(na, -1), map_ba(nb, -1);

    std::function<bool(size_t)> extend = [&](size_t pos) -> bool {
        if (pos == na) return true;
        int va = order[pos];
        for (size_t vb = 0; vb < nb; ++vb) {
            if (map_ba[vb] != -1) continue;
            if (degb[vb] != dega[static_cast<size_t>(va)]) continue;
            // Every already-mapped neighbor of va must be a neighbor of vb
            // with identical multiplicity, and vice versa.
            bool ok = true;
            int mapped_edges_a = 0;
            for (const auto& [n, m] : adja[static_cast<size_t>(va)]) {
                if (map_ab[static_cast<size_t>(n)] == -1) continue;
                mapped_edges_a += m;
                auto it = adjb[vb].find(map_ab[static_cast<size_t>(n)]);
                if (it == adjb[vb].end() || it->second != m) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            int mapped_edges_b = 0;
            for (const auto& [n, m] : adjb[vb])
                if (map_ba[static_cast<size_t>(n)] != -1) mapped_edges_b += m;
            if (mapped_edges_b != mapped_edges_a) continue;

            map_ab[static_cast<size_t>(va)] = static_cast<int>(vb);
            map_ba[vb] = va;
            if (extend(pos + 1)) return true;
            map_ab[static_cast<size_t>(va)] = -1;
            map_ba[vb] = -1;
        }
        return false;
    };

    if (extend(0)) {
        res.isomorphic = true;
        res.mapping = map_ab;
    }
    return res;
}

int connected_components(const ReebGraph& g) {
    const size_t n = g.vertices().size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    for (const auto& e : g.edges()) parent[static_cast<size_t>(find(e.a))] = find(e.b);
    int comps = 0;
    for (size_t i = 0; i < n; ++i)
        if (find(static_cast<int>(i)) == static_cast<int>(i)) ++comps;
    return comps;
}

int betti1(const ReebGraph& g) {
    if (g.vertices().empty()) return 0;
    return static_cast<int>(g.edges().size()) - static_cast<int>(g.vertices().size()) +
           connected_components(g);
}

}  // namespace preeb
