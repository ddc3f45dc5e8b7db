#include "preeb/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <unordered_map>

namespace preeb {

namespace {

using detail::UniPoly;

// Coefficients of p viewed as a polynomial in x2 whose coefficients are
// univariate polynomials in x1; index = power of x2.
std::vector<UniPoly> coeffs_in_x2(const Polynomial& p) {
    if (p.nvars() != 2) throw DimensionError("coeffs_in_x2: bivariate polynomial required");
    std::vector<std::vector<double>> rows;
    for (const auto& [e, c] : p.terms()) {
        size_t d2 = static_cast<size_t>(e[1]);
        size_t d1 = static_cast<size_t>(e[0]);
        if (rows.size() <= d2) rows.resize(d2 + 1);
        if (rows[d2].size() <= d1) rows[d2].resize(d1 + 1, 0.0);
        rows[d2][d1] = c;
    }
    std::vector<UniPoly> out;
    for (auto& r : rows) out.emplace_back(std::move(r));
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

// Determinant of a small matrix of univariate polynomials by column-mask
// expansion with memoization.
Polynomial poly_det(const std::vector<std::vector<UniPoly>>& m) {
    const size_t n = m.size();
    if (n > 16) throw DegenerateInput("resultant: Sylvester matrix too large");
    std::unordered_map<uint32_t, UniPoly> memo;
    std::function<UniPoly(size_t, uint32_t)> det = [&](size_t row,
                                                       uint32_t mask) -> UniPoly {
        if (row == n) return UniPoly(std::vector<double>{1.0});
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        UniPoly acc;
        int sign = 1;
        for (size_t col = 0; col < n; ++col) {
            uint32_t bit = 1u << col;
            if (mask & bit) continue;
            if (!m[row][col].is_zero()) {
                UniPoly sub = det(row + 1, mask | bit);
                UniPoly term = m[row][col] * sub;
                acc = sign > 0 ? acc + term : acc - term;
            }
            sign = -sign;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    return detail::from_dense(det(0, 0));
}

struct TaggedRoot {
    double x2 = 0.0;
    int curve = -1;
    bool tangential = false;
};

// 2-D Newton for {f = 0, g = 0}.
bool newton2(const Polynomial& f, const Polynomial& g, std::array<double, 2>& x,
             double bound) {
    Polynomial fx = f.partial(0), fy = f.partial(1);
    Polynomial gx = g.partial(0), gy = g.partial(1);
    for (int it = 0; it < 40; ++it) {
        std::vector<double> p{x[0], x[1]};
        double rf = f.eval(p), rg = g.eval(p);
        double a = fx.eval(p), b = fy.eval(p);
        double c = gx.eval(p), d = gy.eval(p);
        double det = a * d - b * c;
        if (std::fabs(det) < 1e-14) return false;
        double dx = (d * rf - b * rg) / det;
        double dy = (-c * rf + a * rg) / det;
        x[0] -= dx;
        x[1] -= dy;
        if (std::fabs(x[0]) > bound * 4 || std::fabs(x[1]) > bound * 4) return false;
        if (std::fabs(dx) + std::fabs(dy) < 1e-15) break;
    }
    std::vector<double> p{x[0], x[1]};
    double scale = f.scale_at(p) + g.scale_at(p);
    return std::fabs(f.eval(p)) <= 1e-11 * scale && std::fabs(g.eval(p)) <= 1e-11 * scale;
}

}  // namespace

Polynomial resultant_x2(const Polynomial& f, const Polynomial& g) {
    std::vector<UniPoly> A = coeffs_in_x2(f);
    std::vector<UniPoly> B = coeffs_in_x2(g);
    if (A.size() < 2 || B.size() < 1)
        throw DegenerateInput("resultant_x2: inputs must depend on x2 / be nonzero");
    const size_t m = A.size() - 1;  // deg_{x2} f
    const size_t n = B.size() - 1;  // deg_{x2} g
    if (n == 0 && B[0].is_zero()) throw DegenerateInput("resultant_x2: g is zero");
    const size_t size = m + n;
    std::vector<std::vector<UniPoly>> s(size, std::vector<UniPoly>(size));
    // n rows of f's coefficients, highest degree first, then m rows of g's.
    for (size_t r = 0; r < n; ++r)
        for (size_t i = 0; i <= m; ++i) s[r][r + i] = A[m - i];
    for (size_t r = 0; r < m; ++r)
        for (size_t i = 0; i <= n; ++i) s[n + r][r + i] = B[n - i];
    Polynomial res = poly_det(s);
    double scale = 0.0;
    for (const auto& [e, c] : res.terms()) scale += std::fabs(c);
    if (scale < 1e-300) throw DegenerateInput("resultant_x2: resultant vanishes identically");
    return res;
}

std::vector<CriticalPoint> critical_x_values(const AlgebraicDomain& dom,
                                             const SweepOptions& opts) {
    if (dom.k != 2) throw DimensionError("critical_x_values: requires a planar domain");
    const double R = dom.bound;
    std::vector<CriticalPoint> cps;

    for (size_t j = 0; j < dom.boundary_polys.size(); ++j) {
        const Polynomial& f = dom.boundary_polys[j];
        Polynomial fy = f.partial(1);
        if (fy.is_zero())
            throw DegenerateInput("critical_x_values: boundary component " +
                                  std::to_string(j) + " does not depend on x2");
        Polynomial res = resultant_x2(f, fy);
        if (res.nvars() != 1 || res.total_degree() < 1) {
            if (res.total_degree() == 0) continue;  // nonzero constant: no tangency
            throw DegenerateInput("critical_x_values: unexpected resultant");
        }
        std::vector<RealRoot> ts;
        try {
            ts = isolate_real_roots(res, Interval(-R, R), opts.root_rho);
        } catch (const DegenerateInput&) {
            throw DegenerateInput("critical_x_values: degenerate resultant for component " +
                                  std::to_string(j));
        }
        for (const auto& tr : ts) {
            double t = tr.value;
            // Candidate x2 from both f(t,.) and fy(t,.); Newton decides.
            std::vector<double> cand;
            for (const Polynomial* q : {&f, static_cast<const Polynomial*>(&fy)}) {
                Polynomial slice = q->restrict_var(0, t);
                if (slice.is_zero()) continue;
                try {
                    for (const auto& r : isolate_real_roots(slice, Interval(-R, R),
                                                            opts.root_rho))
                        cand.push_back(r.value);
                } catch (const DegenerateInput&) {
                    continue;
                }
            }
            for (double s : cand) {
                std::array<double, 2> p{t, s};
                if (!newton2(f, fy, p, R)) continue;
                Membership m;
                try {
                    m = classify(dom, {p[0], p[1]}, opts.tau_b);
                } catch (const AmbiguousBoundary&) {
                    continue;  // disjointness failure surfaces in validate()
                }
                if (m.tag != Region::Boundary || m.boundary_index != static_cast<int>(j))
                    continue;
                bool dup = false;
                for (const auto& c : cps)
                    if (std::fabs(c.x[0] - p[0]) < 1e-9 && std::fabs(c.x[1] - p[1]) < 1e-9)
                        dup = true;
                if (!dup) cps.push_back({p, static_cast<int>(j), p[0]});
            }
        }
    }

    std::sort(cps.begin(), cps.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return a.xvalue < b.xvalue; });
    for (size_t i = 0; i + 1 < cps.size(); ++i) {
        if (cps[i + 1].xvalue - cps[i].xvalue < opts.sigma)
            throw DegeneratePosition(
                "critical_x_values: two critical x-values separated by less than sigma; "
                "perturb the domain");
    }
    return cps;
}

std::vector<Interval> fiber_components(const AlgebraicDomain& dom, double t, bool strict,
                                       const SweepOptions& opts,
                                       std::vector<BoundaryHit>* hits) {
    if (dom.k != 2) throw DimensionError("fiber_components: requires a planar domain");
    const double R = dom.bound;

    std::vector<TaggedRoot> roots;
    for (size_t j = 0; j < dom.boundary_polys.size(); ++j) {
        Polynomial slice = dom.boundary_polys[j].restrict_var(0, t);
        if (slice.is_zero())
            throw DegenerateInput("fiber_components: boundary component vanishes on the line");
        if (slice.total_degree() == 0) continue;
        std::vector<RealRoot> rs;
        try {
            rs = isolate_real_roots(slice, Interval(-R, R), opts.root_rho);
        } catch (const DegenerateInput&) {
            continue;
        }
        for (const auto& r : rs) roots.push_back({r.value, static_cast<int>(j), r.tangential});
    }
    if (strict)
        for (const auto& r : roots)
            if (r.tangential)
                throw TangencyAtLevel(
                    "fiber_components: tangential boundary root; level is critical");

    std::sort(roots.begin(), roots.end(),
              [](const TaggedRoot& a, const TaggedRoot& b) { return a.x2 < b.x2; });

    // Membership of each gap between consecutive roots (window ends included).
    std::vector<double> bps;
    bps.push_back(-R);
    for (const auto& r : roots) bps.push_back(r.x2);
    bps.push_back(R);
    std::vector<bool> in_d(bps.size() - 1, false);
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
        if (bps[i + 1] - bps[i] < opts.root_rho) {
            in_d[i] = false;  // zero-width gap between merged roots
            continue;
        }
        double mid = 0.5 * (bps[i] + bps[i + 1]);
        Membership m = classify(dom, {t, mid}, opts.tau_b);
        in_d[i] = m.tag == Region::Interior;
    }
    if (!in_d.empty() && (in_d.front() || in_d.back()))
        throw SweepError("fiber_components: domain reaches the bounding window");

    std::vector<Interval> comps;
    auto add_hit = [&](double x2, int curve) {
        if (hits) hits->push_back({x2, curve});
    };

    size_t gap = 0;
    while (gap < in_d.size()) {
        if (!in_d[gap]) {
            ++gap;
            continue;
        }
        size_t start_gap = gap;
        size_t end_gap = gap;
        while (end_gap + 1 < in_d.size() && in_d[end_gap + 1]) {
            // Interior on both sides of root end_gap+1: the boundary touches
            // the fiber from inside; merging is only legal at critical levels.
            if (strict)
                throw TangencyAtLevel(
                    "fiber_components: boundary point interior to a fiber component");
            add_hit(bps[end_gap + 1], roots[end_gap].curve);
            ++end_gap;
        }
        double lo = bps[start_gap];
        double hi = bps[end_gap + 1];
        comps.emplace_back(lo, hi);
        add_hit(lo, start_gap > 0 ? roots[start_gap - 1].curve : -1);
        add_hit(hi, end_gap < roots.size() ? roots[end_gap].curve : -1);
        gap = end_gap + 1;
    }

    // Isolated touch points: roots classified Boundary with exterior on both
    // sides become single-point components.
    for (size_t i = 0; i < roots.size(); ++i) {
        bool left_in = in_d[i];
        bool right_in = in_d[i + 1];
        if (left_in || right_in) continue;
        Membership m;
        try {
            m = classify(dom, {t, roots[i].x2}, opts.tau_b);
        } catch (const AmbiguousBoundary&) {
            continue;
        }
        if (m.tag == Region::Boundary) {
            if (strict)
                throw TangencyAtLevel("fiber_components: isolated fiber touch point");
            comps.emplace_back(roots[i].x2, roots[i].x2);
            add_hit(roots[i].x2, roots[i].curve);
        }
    }

    std::sort(comps.begin(), comps.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    return comps;
}

std::vector<Interval> slab_components(const AlgebraicDomain& dom, double t,
                                      const SweepOptions& opts) {
    return fiber_components(dom, t, /*strict=*/true, opts);
}

ReebGraph build_poincare_reeb(const AlgebraicDomain& dom, const SweepOptions& opts) {
    std::vector<CriticalPoint> cps = critical_x_values(dom, opts);
    if (cps.size() < 2)
        throw SweepError("build_poincare_reeb: fewer than two critical x-values");

    const size_t m = cps.size();
    ReebGraph g;

    // Nodes at critical levels.
    struct LevelNode {
        Interval comp;
        int node = -1;
    };
    std::vector<std::vector<LevelNode>> level_nodes(m);
    for (size_t i = 0; i < m; ++i) {
        double v = cps[i].xvalue;
        std::vector<Interval> comps = fiber_components(dom, v, /*strict=*/false, opts);
        double tol_embed = 1e-6 * (1.0 + dom.bound);
        int crit_comp = -1;
        for (size_t q = 0; q < comps.size(); ++q)
            if (comps[q].contains(cps[i].x[1], tol_embed)) {
                if (crit_comp >= 0) {
                    // Prefer the tighter container (a touch point may sit at
                    // the shared endpoint of a degenerate pair).
                    if (comps[q].width() < comps[static_cast<size_t>(crit_comp)].width())
                        crit_comp = static_cast<int>(q);
                } else {
                    crit_comp = static_cast<int>(q);
                }
            }
        if (crit_comp < 0)
            throw SweepError("build_poincare_reeb: critical point missing from its fiber");
        for (size_t q = 0; q < comps.size(); ++q) {
            bool is_crit = static_cast<int>(q) == crit_comp;
            std::array<double, 2> embed =
                is_crit ? cps[i].x : std::array<double, 2>{v, comps[q].mid()};
            int node = g.add_vertex(v, embed, is_crit);
            level_nodes[i].push_back({comps[q], node});
        }
    }

    // Slab nodes and gluing edges.
    for (size_t i = 0; i + 1 < m; ++i) {
        double vl = cps[i].xvalue;
        double vr = cps[i + 1].xvalue;
        double width = vr - vl;
        double t_mid = vl + width * 0.5;
        double t_third = vl + width / 3.0;
        double h = std::max(width * 1e-3, 1e-9);

        std::vector<Interval> mid = slab_components(dom, t_mid, opts);
        std::vector<Interval> third = slab_components(dom, t_third, opts);
        if (mid.size() != third.size())
            throw SweepError("build_poincare_reeb: slab component count not constant");
        std::vector<Interval> la = fiber_components(dom, vl + h, /*strict=*/false, opts);
        std::vector<Interval> ra = fiber_components(dom, vr - h, /*strict=*/false, opts);
        if (la.size() != mid.size() || ra.size() != mid.size())
            throw SweepError("build_poincare_reeb: avatar component count mismatch");

        double tol_ov = 1e-7 * (1.0 + dom.bound);
        for (size_t q = 0; q < mid.size(); ++q) {
            int slab_node =
                g.add_vertex(t_mid, std::array<double, 2>{t_mid, mid[q].mid()}, false);
            // Left gluing: components at vl whose interval meets the avatar.
            int glued = 0;
            for (const auto& ln : level_nodes[i]) {
                if (ln.comp.overlaps(la[q], tol_ov)) {
                    g.add_edge(ln.node, slab_node, Interval(vl, t_mid));
                    ++glued;
                }
            }
            if (glued != 1)
                throw SweepError("build_poincare_reeb: slab component glues to " +
                                 std::to_string(glued) + " components on the left");
            glued = 0;
            for (const auto& rn : level_nodes[i + 1]) {
                if (rn.comp.overlaps(ra[q], tol_ov)) {
                    g.add_edge(slab_node, rn.node, Interval(t_mid, vr));
                    ++glued;
                }
            }
            if (glued != 1)
                throw SweepError("build_poincare_reeb: slab component glues to " +
                                 std::to_string(glued) + " components on the right");
        }
    }

    ReebGraph faithful = smooth_degree2(g, /*keep_critical=*/true);
    if (opts.merge_window > 0.0)
        faithful = merge_close_critical(faithful, opts.merge_window);
    if (opts.smooth_all) faithful = smooth_degree2(faithful, /*keep_critical=*/false);
    return faithful.canonical_order();
}

}  // namespace preeb
