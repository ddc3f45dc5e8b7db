#include "preeb/domain.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace preeb {

namespace {

double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Deterministic unit direction from the engine (hand-rolled Box-Muller so the
// stream is identical across standard libraries).
std::vector<double> random_unit(std::mt19937_64& rng, int k) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> v(static_cast<size_t>(k));
    while (true) {
        for (int i = 0; i < k; i += 2) {
            double u1 = std::max(unif(rng), 1e-300);
            double u2 = unif(rng);
            double r = std::sqrt(-2.0 * std::log(u1));
            v[static_cast<size_t>(i)] = r * std::cos(2.0 * M_PI * u2);
            if (i + 1 < k) v[static_cast<size_t>(i + 1)] = r * std::sin(2.0 * M_PI * u2);
        }
        double n = norm(v);
        if (n > 1e-8) {
            for (double& x : v) x /= n;
            return v;
        }
    }
}

// One-dimensional Newton along the gradient direction; pulls a near-zero of f
// onto the zero set to machine precision.
void polish_onto(const Polynomial& f, std::vector<double>& x) {
    for (int it = 0; it < 4; ++it) {
        double v = f.eval(x);
        std::vector<double> g = gradient_at(f, x);
        double g2 = 0.0;
        for (double gi : g) g2 += gi * gi;
        if (g2 < 1e-18) return;
        for (size_t i = 0; i < x.size(); ++i) x[i] -= v * g[i] / g2;
    }
}

// Gauss-Newton for the two-constraint system {f=0, h=0} from a starting
// point; used to hunt for boundary-component intersections.  Returns the
// converged point when the residual drops below tol.
std::optional<std::vector<double>> solve_pair(const Polynomial& f, const Polynomial& h,
                                              std::vector<double> x, double radius,
                                              double tol) {
    const int k = static_cast<int>(x.size());
    for (int it = 0; it < 60; ++it) {
        double rf = f.eval(x);
        double rh = h.eval(x);
        if (std::fabs(rf) <= tol && std::fabs(rh) <= tol) {
            if (norm(x) <= radius * 1.5) return x;
            return std::nullopt;
        }
        std::vector<double> gf = gradient_at(f, x);
        std::vector<double> gh = gradient_at(h, x);
        // Minimum-norm step: J^T (J J^T)^{-1} r with J the 2xk Jacobian.
        double a = 0.0, b = 0.0, c = 0.0;
        for (int i = 0; i < k; ++i) {
            a += gf[static_cast<size_t>(i)] * gf[static_cast<size_t>(i)];
            b += gf[static_cast<size_t>(i)] * gh[static_cast<size_t>(i)];
            c += gh[static_cast<size_t>(i)] * gh[static_cast<size_t>(i)];
        }
        double det = a * c - b * b;
        if (std::fabs(det) < 1e-14 * (a * c + 1e-30)) return std::nullopt;
        double l1 = (c * rf - b * rh) / det;
        double l2 = (-b * rf + a * rh) / det;
        double step2 = 0.0;
        for (int i = 0; i < k; ++i) {
            double s = gf[static_cast<size_t>(i)] * l1 + gh[static_cast<size_t>(i)] * l2;
            x[static_cast<size_t>(i)] -= s;
            step2 += s * s;
        }
        if (norm(x) > radius * 4.0) return std::nullopt;
        if (std::sqrt(step2) < 1e-15) break;
    }
    double rf = f.eval(x);
    double rh = h.eval(x);
    if (std::fabs(rf) <= tol && std::fabs(rh) <= tol && norm(x) <= radius * 1.5) return x;
    return std::nullopt;
}

}  // namespace

AlgebraicDomain::AlgebraicDomain(int k_, std::vector<Polynomial> polys, double bound_)
    : k(k_), boundary_polys(std::move(polys)), bound(bound_) {
    if (k < 1) throw DimensionError("AlgebraicDomain: k must be positive");
    if (boundary_polys.empty())
        throw DegenerateInput("AlgebraicDomain: at least one boundary polynomial required");
    for (const auto& f : boundary_polys)
        if (f.nvars() != k)
            throw DimensionError("AlgebraicDomain: boundary polynomial arity != k");
    if (!(bound > 0.0)) throw DegenerateInput("AlgebraicDomain: bound must be positive");
}

Membership classify(const AlgebraicDomain& dom, const std::vector<double>& x, double tau_b) {
    if (static_cast<int>(x.size()) != dom.k)
        throw DimensionError("classify: point dimension != k");
    int near = -1;
    bool all_positive = true;
    for (size_t j = 0; j < dom.boundary_polys.size(); ++j) {
        double v = dom.boundary_polys[j].eval(x);
        if (std::fabs(v) <= tau_b) {
            if (near >= 0)
                throw AmbiguousBoundary(
                    "classify: two boundary constraints near zero at one point");
            near = static_cast<int>(j);
        } else if (v < 0.0) {
            all_positive = false;
        }
    }
    if (near >= 0) {
        if (all_positive) return {Region::Boundary, near};
        return {Region::Exterior, -1};
    }
    if (all_positive) return {Region::Interior, -1};
    return {Region::Exterior, -1};
}

ValidationReport validate(const AlgebraicDomain& dom, const ValidationConfig& cfg) {
    ValidationReport rep;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const double R = dom.bound;
    const size_t l = dom.boundary_polys.size();

    std::vector<std::vector<Polynomial>> grads(l);
    for (size_t j = 0; j < l; ++j)
        for (int i = 0; i < dom.k; ++i) grads[j].push_back(dom.boundary_polys[j].partial(i));

    // --- Locate boundary points by intersecting random lines with each zero
    // set, then check gradient regularity there.
    rep.regularity_ok = true;
    rep.min_gradient_norm = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < l; ++j) {
        const Polynomial& f = dom.boundary_polys[j];
        int found = 0;
        int attempts = 0;
        const int max_attempts = cfg.samples * 40;
        while (found < cfg.samples && attempts < max_attempts) {
            ++attempts;
            std::vector<double> a(static_cast<size_t>(dom.k));
            for (double& v : a) v = unif(rng) * R * 0.9;
            std::vector<double> d = random_unit(rng, dom.k);
            Polynomial line = compose_line(f, a, d);
            if (line.is_zero()) continue;
            std::vector<RealRoot> roots;
            try {
                roots = isolate_real_roots(line, Interval(-2.0 * R, 2.0 * R));
            } catch (const DegenerateInput&) {
                continue;
            }
            for (const auto& r : roots) {
                std::vector<double> p(a);
                for (size_t i = 0; i < p.size(); ++i) p[i] += r.value * d[i];
                if (norm(p) > R * (1.0 + 1e-9)) continue;
                polish_onto(f, p);
                double gn = 0.0;
                for (int i = 0; i < dom.k; ++i) {
                    double gi = grads[j][static_cast<size_t>(i)].eval(p);
                    gn += gi * gi;
                }
                gn = std::sqrt(gn);
                if (gn < rep.min_gradient_norm) {
                    rep.min_gradient_norm = gn;
                    rep.min_gradient_point = p;
                }
                if (gn <= cfg.delta_g && rep.regularity_ok) {
                    rep.regularity_ok = false;
                    rep.regularity_issue = ValidationIssue{
                        p, "boundary gradient norm below delta_g on component " +
                               std::to_string(j)};
                }
                rep.boundary_samples.emplace_back(std::move(p), static_cast<int>(j));
                if (++found >= cfg.samples) break;
            }
        }
        if (found == 0) {
            rep.regularity_ok = false;
            rep.regularity_issue = ValidationIssue{
                {}, "no points located on boundary component " + std::to_string(j)};
        }
    }

    // --- Disjointness: no located boundary point of one component may lie
    // near another component.  Screen the samples, then refine the most
    // suspicious starts with a two-constraint Gauss-Newton search so genuine
    // intersections are actually found rather than straddled.
    rep.disjointness_ok = true;
    {
        struct Suspect {
            double dist;
            size_t sample;
            size_t other;
        };
        std::vector<Suspect> suspects;
        for (size_t s = 0; s < rep.boundary_samples.size() && rep.disjointness_ok; ++s) {
            const auto& [p, j] = rep.boundary_samples[s];
            if (p.empty()) continue;
            for (size_t o = 0; o < l; ++o) {
                if (static_cast<int>(o) == j) continue;
                double v = std::fabs(dom.boundary_polys[o].eval(p));
                if (v < cfg.tau_b) {
                    rep.disjointness_ok = false;
                    rep.disjointness_issue = ValidationIssue{
                        p, "boundary components " + std::to_string(j) + " and " +
                               std::to_string(o) + " meet within tau_b"};
                    break;
                }
                suspects.push_back({v, s, o});
            }
        }
        if (rep.disjointness_ok && !suspects.empty()) {
            std::sort(suspects.begin(), suspects.end(),
                      [](const Suspect& a, const Suspect& b) { return a.dist < b.dist; });
            size_t tries = std::min<size_t>(suspects.size(), 24);
            for (size_t t = 0; t < tries && rep.disjointness_ok; ++t) {
                const auto& [p, j] = rep.boundary_samples[suspects[t].sample];
                auto hit = solve_pair(dom.boundary_polys[static_cast<size_t>(j)],
                                      dom.boundary_polys[suspects[t].other], p, R,
                                      cfg.tau_b);
                if (hit) {
                    rep.disjointness_ok = false;
                    rep.disjointness_issue = ValidationIssue{
                        *hit, "boundary components " + std::to_string(j) + " and " +
                                  std::to_string(suspects[t].other) +
                                  " intersect (refined from nearby samples)"};
                }
            }
        }
    }

    // --- Boundedness: along a dense scan of rays from the origin, the domain
    // must be left behind before radius R.
    rep.boundedness_ok = true;
    {
        int rays = std::max(cfg.samples, 64);
        for (int i = 0; i < rays && rep.boundedness_ok; ++i) {
            std::vector<double> u;
            if (dom.k == 2) {
                double th = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(rays);
                u = {std::cos(th), std::sin(th)};
            } else {
                u = random_unit(rng, dom.k);
            }
            double far = -1.0;
            std::vector<double> origin(static_cast<size_t>(dom.k), 0.0);
            for (const auto& f : dom.boundary_polys) {
                Polynomial line = compose_line(f, origin, u);
                if (line.is_zero()) continue;
                std::vector<RealRoot> roots;
                try {
                    roots = isolate_real_roots(line, Interval(0.0, R));
                } catch (const DegenerateInput&) {
                    continue;
                }
                for (const auto& r : roots) far = std::max(far, r.value);
            }
            auto probe = [&](double s) -> bool {
                std::vector<double> p(u);
                for (double& v : p) v *= s;
                try {
                    return classify(dom, p, cfg.tau_b).tag == Region::Exterior;
                } catch (const AmbiguousBoundary&) {
                    // Ambiguity on a probe point is a disjointness problem,
                    // not a boundedness one; treat the probe as exterior.
                    return true;
                }
            };
            bool ok;
            std::vector<double> witness(u);
            if (far < 0.0) {
                ok = probe(R);
                for (double& v : witness) v *= R;
            } else {
                double mid = 0.5 * (far + R);
                ok = probe(mid) && probe(R);
                for (double& v : witness) v *= mid;
            }
            if (!ok) {
                rep.boundedness_ok = false;
                rep.boundedness_issue =
                    ValidationIssue{witness, "domain extends to the bounding radius"};
            }
        }
    }

    if (!std::isfinite(rep.min_gradient_norm)) rep.min_gradient_norm = 0.0;
    return rep;
}

}  // namespace preeb
