#include "preeb/mapper.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

namespace preeb {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) {
        for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

// Single-linkage components at radius eps, accelerated by bucketing points
// into cells of side eps and probing the 3^d neighborhood.
std::vector<int> link_clusters(const std::vector<std::vector<double>>& pts, double eps) {
    const size_t n = pts.size();
    UnionFind uf(n);
    if (n == 0) return {};
    const size_t dim = pts[0].size();

    auto cell_of = [&](const std::vector<double>& p) {
        std::vector<std::int64_t> c(dim);
        for (size_t d = 0; d < dim; ++d)
            c[d] = static_cast<std::int64_t>(std::floor(p[d] / eps));
        return c;
    };
    std::map<std::vector<std::int64_t>, std::vector<int>> buckets;
    for (size_t i = 0; i < n; ++i) buckets[cell_of(pts[i])].push_back(static_cast<int>(i));

    const double eps2 = eps * eps;
    std::vector<std::int64_t> probe(dim);
    for (const auto& [cell, members] : buckets) {
        // Enumerate neighbor cells by odometer over {-1,0,1}^dim.
        std::vector<int> offs(dim, -1);
        while (true) {
            for (size_t d = 0; d < dim; ++d) probe[d] = cell[d] + offs[d];
            auto it = buckets.find(probe);
            if (it != buckets.end()) {
                for (int a : members)
                    for (int b : it->second) {
                        if (b <= a) continue;
                        double d2 = 0.0;
                        for (size_t d = 0; d < dim; ++d) {
                            double diff = pts[a][d] - pts[b][d];
                            d2 += diff * diff;
                        }
                        if (d2 <= eps2) uf.unite(a, b);
                    }
            }
            size_t d = 0;
            while (d < dim && offs[d] == 1) offs[d++] = -1;
            if (d == dim) break;
            ++offs[d];
        }
    }

    std::vector<int> label(n);
    std::unordered_map<int, int> remap;
    for (size_t i = 0; i < n; ++i) {
        int root = uf.find(static_cast<int>(i));
        auto it = remap.find(root);
        if (it == remap.end())
            it = remap.emplace(root, static_cast<int>(remap.size())).first;
        label[i] = it->second;
    }
    return label;
}

}  // namespace

ReebGraph mapper_reeb(const LiftResult& lift, const MapperConfig& cfg) {
    if (cfg.n_intervals < 1)
        throw ConfigError("mapper_reeb: need at least one interval");
    if (!(cfg.overlap >= 0.0) || cfg.overlap >= 1.0)
        throw ConfigError("mapper_reeb: overlap must lie in [0, 1)");
    if (cfg.epsilon < 0.0)
        throw ConfigError("mapper_reeb: linkage radius must be nonnegative");
    if (lift.samples.empty())
        throw DegenerateInput("mapper_reeb: lift carries no samples");

    double eps = cfg.epsilon > 0.0 ? cfg.epsilon : 3.0 * lift.pitch;
    if (!(eps > 0.0)) throw ConfigError("mapper_reeb: linkage radius resolves to zero");

    double gmin = lift.samples[0].g, gmax = lift.samples[0].g;
    for (const auto& s : lift.samples) {
        gmin = std::min(gmin, s.g);
        gmax = std::max(gmax, s.g);
    }
    double range = gmax - gmin;
    if (range <= 0.0)
        throw DegenerateInput("mapper_reeb: height function is constant on the samples");

    const int n = cfg.n_intervals;
    const double L = range / ((n - 1) * (1.0 - cfg.overlap) + 1.0);
    const double step = L * (1.0 - cfg.overlap);
    const double slack = 1e-12 * range;

    // Membership of each sample in each interval it meets.
    std::vector<std::vector<int>> members(n);
    for (size_t i = 0; i < lift.samples.size(); ++i) {
        double g = lift.samples[i].g;
        int lo = 0, hi = n - 1;
        if (step > 0.0) {
            lo = static_cast<int>(std::ceil((g - gmin - L - slack) / step));
            hi = static_cast<int>(std::floor((g - gmin + slack) / step));
        }
        lo = std::max(lo, 0);
        hi = std::min(hi, n - 1);
        for (int q = lo; q <= hi; ++q) {
            double start = gmin + q * step;
            if (g >= start - slack && g <= start + L + slack)
                members[q].push_back(static_cast<int>(i));
        }
    }

    ReebGraph g;
    // cluster_of[q] maps sample index -> vertex id within interval q.
    std::vector<std::unordered_map<int, int>> cluster_of(n);
    for (int q = 0; q < n; ++q) {
        if (members[q].empty()) continue;
        // In the base metric all samples over one base point coincide, so
        // cluster one representative per base and fan the labels back out.
        std::vector<std::vector<double>> pts;
        std::vector<int> point_of_member(members[q].size());
        if (cfg.metric == Metric::Base) {
            std::unordered_map<int, int> point_of_base;
            for (size_t i = 0; i < members[q].size(); ++i) {
                const auto& s = lift.samples[members[q][i]];
                auto it = point_of_base.find(s.base_id);
                if (it == point_of_base.end()) {
                    it = point_of_base.emplace(s.base_id, static_cast<int>(pts.size()))
                             .first;
                    pts.push_back(s.x);
                }
                point_of_member[i] = it->second;
            }
        } else {
            for (size_t i = 0; i < members[q].size(); ++i) {
                const auto& s = lift.samples[members[q][i]];
                std::vector<double> p = s.x;
                p.insert(p.end(), s.y.begin(), s.y.end());
                point_of_member[i] = static_cast<int>(pts.size());
                pts.push_back(std::move(p));
            }
        }
        std::vector<int> point_label = link_clusters(pts, eps);
        std::vector<int> label(members[q].size());
        for (size_t i = 0; i < members[q].size(); ++i)
            label[i] = point_label[point_of_member[i]];
        int n_clusters = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;

        // Every member must land in exactly one cluster.
        if (static_cast<int>(label.size()) != static_cast<int>(members[q].size()))
            throw ClusterInstability("mapper_reeb: clustering lost samples");

        std::vector<double> sum_g(n_clusters, 0.0);
        std::vector<std::array<double, 2>> sum_xy(n_clusters, {0.0, 0.0});
        std::vector<int> count(n_clusters, 0);
        for (size_t i = 0; i < label.size(); ++i) {
            const auto& s = lift.samples[members[q][i]];
            sum_g[label[i]] += s.g;
            sum_xy[label[i]][0] += s.x[0];
            sum_xy[label[i]][1] += s.x.size() > 1 ? s.x[1] : 0.0;
            ++count[label[i]];
        }
        std::vector<int> vertex_ids(n_clusters);
        for (int c = 0; c < n_clusters; ++c) {
            if (count[c] == 0)
                throw ClusterInstability("mapper_reeb: empty cluster emitted");
            std::array<double, 2> embed{sum_xy[c][0] / count[c], sum_xy[c][1] / count[c]};
            vertex_ids[c] = g.add_vertex(sum_g[c] / count[c], embed, false);
        }
        for (size_t i = 0; i < label.size(); ++i)
            cluster_of[q].emplace(members[q][i], vertex_ids[label[i]]);
    }

    // Nerve edges: adjacent intervals whose clusters share a sample.
    std::set<std::pair<int, int>> seen;
    for (int q = 0; q + 1 < n; ++q) {
        for (const auto& [si, va] : cluster_of[q]) {
            auto it = cluster_of[q + 1].find(si);
            if (it == cluster_of[q + 1].end()) continue;
            int vb = it->second;
            if (va == vb)
                throw ClusterInstability("mapper_reeb: one cluster spans two intervals");
            auto key = std::minmax(va, vb);
            if (!seen.insert({key.first, key.second}).second) continue;
            double a = g.vertices()[va].value, b = g.vertices()[vb].value;
            g.add_edge(va, vb, Interval(std::min(a, b), std::max(a, b)));
        }
    }

    return smooth_degree2(g, /*keep_critical=*/false).canonical_order();
}

}  // namespace preeb
