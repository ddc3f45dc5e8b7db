#include "preeb/lift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "preeb/sweep.hpp"

namespace preeb {

namespace {

// Unit vectors from normalized Gaussian draws; Box-Muller keeps the stream
// identical across standard libraries.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0, u2 = 0.0;
        do {
            u1 = uniform01();
        } while (u1 <= 1e-300);
        u2 = uniform01();
        double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return mag * std::cos(2.0 * M_PI * u2);
    }

    std::vector<double> unit_vector(int dim) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::vector<double> v(dim);
            double norm2 = 0.0;
            for (int i = 0; i < dim; ++i) {
                v[i] = next();
                norm2 += v[i] * v[i];
            }
            if (norm2 > 1e-12) {
                double inv = 1.0 / std::sqrt(norm2);
                for (double& c : v) c *= inv;
                return v;
            }
        }
        throw DegenerateInput("unit_vector: random draws degenerate");
    }

private:
    double uniform01() {
        return (rng_() >> 11) * (1.0 / 9007199254740992.0);  // 53-bit mantissa
    }

    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Smallest r >= 0 with sum_j c_j (r*u_j)^(2*m_j) == target (target > 0).
double fiber_radius(const std::vector<double>& u, const std::vector<int>& exps,
                    const std::vector<double>& coeffs, double target) {
    bool all_quadratic = true;
    for (int m : exps)
        if (m != 1) all_quadratic = false;
    if (all_quadratic) {
        double q = 0.0;
        for (size_t j = 0; j < u.size(); ++j) q += coeffs[j] * u[j] * u[j];
        return std::sqrt(target / q);
    }
    auto h = [&](double r) {
        double s = 0.0;
        for (size_t j = 0; j < u.size(); ++j) {
            double base = r * u[j];
            double p = 1.0;
            for (int e = 0; e < 2 * exps[j]; ++e) p *= base;
            s += coeffs[j] * p;
        }
        return s;
    };
    double hi = 1.0;
    int guard = 0;
    while (h(hi) < target && guard++ < 400) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 120; ++it) {
        double mid = 0.5 * (lo + hi);
        (h(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Newton refinement of a boundary coordinate along one vertical line.
double polish_on_curve(const Polynomial& slice, double s) {
    detail::UniPoly p = detail::to_dense(slice);
    detail::UniPoly dp = p.derivative();
    for (int it = 0; it < 8; ++it) {
        double d = dp.eval(s);
        if (std::fabs(d) < 1e-300) break;
        double step = p.eval(s) / d;
        if (!std::isfinite(step) || std::fabs(step) > 1.0) break;
        s -= step;
        if (std::fabs(step) < 1e-16) break;
    }
    return s;
}

}  // namespace

LiftSpec::LiftSpec(AlgebraicDomain d, int k0_, std::vector<int> e, std::vector<double> c,
                   bool allow)
    : dom(std::move(d)), k0(k0_), exps(std::move(e)), coeffs(std::move(c)),
      allow_low_codim(allow) {}

Polynomial build_lift(const LiftSpec& spec) {
    const int k = spec.dom.k;
    const int kp = spec.k0 - k;
    int min_codim = spec.allow_low_codim ? 1 : 2;
    if (kp < min_codim)
        throw DimensionError("build_lift: ambient dimension must exceed the base dimension "
                             "by at least " + std::to_string(min_codim));
    std::vector<int> exps = spec.exps.empty() ? std::vector<int>(kp, 1) : spec.exps;
    std::vector<double> coeffs =
        spec.coeffs.empty() ? std::vector<double>(kp, 1.0) : spec.coeffs;
    if (static_cast<int>(exps.size()) != kp || static_cast<int>(coeffs.size()) != kp)
        throw DimensionError("build_lift: exponent/coefficient lists must have one entry "
                             "per fiber coordinate");
    for (int m : exps)
        if (m < 1) throw DegenerateInput("build_lift: fiber exponents must be >= 1");
    for (double c : coeffs)
        if (!(c > 0.0)) throw DegenerateInput("build_lift: fiber coefficients must be > 0");

    Polynomial P = product(spec.dom.boundary_polys, k);
    Polynomial F = embed_vars(P, spec.k0, 0);
    for (int j = 0; j < kp; ++j) {
        Polynomial yj = Polynomial::variable(spec.k0, k + j);
        Polynomial pw = Polynomial::constant(spec.k0, 1.0);
        for (int e = 0; e < 2 * exps[j]; ++e) pw = pw * yj;
        F = F - pw.scaled(coeffs[j]);
    }
    return F;
}

LiftResult sample_surface(const LiftSpec& spec_in, int n_base, int n_fiber,
                          std::uint64_t seed, double tau_s) {
    LiftSpec spec = spec_in;
    const int k = spec.dom.k;
    if (k != 2) throw DimensionError("sample_surface: planar base domains only");
    if (n_base < 4) throw DegenerateInput("sample_surface: need at least 4 base points");
    if (n_fiber < 1) throw DegenerateInput("sample_surface: need at least 1 fiber sample");
    const int kp = spec.k0 - k;
    if (spec.exps.empty()) spec.exps.assign(kp, 1);
    if (spec.coeffs.empty()) spec.coeffs.assign(kp, 1.0);

    LiftResult out;
    out.spec = spec;
    out.F = build_lift(spec);
    out.n_fiber = n_fiber;
    out.seed = seed;
    out.tau_s = tau_s;

    GaussianSource gauss(seed);
    for (int i = 0; i < n_fiber; ++i) out.directions.push_back(gauss.unit_vector(kp));

    const double R = spec.dom.bound;
    const int nx = std::max<int>(2, static_cast<int>(std::llround(std::sqrt(
                                       static_cast<double>(n_base)))));
    out.pitch = 2.0 * R / (nx - 1);

    Polynomial P = product(spec.dom.boundary_polys, k);
    SweepOptions sw;

    auto emit_base = [&](double x1, double x2) {
        double pv = P.eval({x1, x2});
        if (pv < -tau_s) {
            Membership m = classify(spec.dom, {x1, x2});
            if (m.tag != Region::Exterior)
                throw ClassifyError("sample_surface: negative product value inside the "
                                    "domain at (" + std::to_string(x1) + ", " +
                                    std::to_string(x2) + ")");
            return;
        }
        int id = static_cast<int>(out.bases.size());
        out.bases.push_back({x1, x2});
        if (pv <= tau_s) {
            LiftSample s;
            s.x = {x1, x2};
            s.y.assign(kp, 0.0);
            s.g = x1;
            s.base_id = id;
            out.samples.push_back(std::move(s));
            return;
        }
        for (const auto& u : out.directions) {
            double r = fiber_radius(u, spec.exps, spec.coeffs, pv);
            LiftSample s;
            s.x = {x1, x2};
            s.y.resize(kp);
            for (int j = 0; j < kp; ++j) s.y[j] = r * u[j];
            s.g = x1;
            s.base_id = id;
            out.samples.push_back(std::move(s));
        }
    };

    for (int i = 0; i < nx; ++i) {
        double t = -R + i * out.pitch;
        for (int j = 0; j < nx; ++j) emit_base(t, -R + j * out.pitch);

        // Boundary base points harvested from the fiber decomposition.
        std::vector<BoundaryHit> hits;
        try {
            fiber_components(spec.dom, t, /*strict=*/false, sw, &hits);
        } catch (const SweepError&) {
            throw;
        } catch (const Error&) {
            continue;  // column tangent to a degenerate configuration: skip
        }
        std::vector<double> ys;
        for (const auto& h : hits) {
            double s = h.x2;
            if (h.curve >= 0)
                s = polish_on_curve(spec.dom.boundary_polys[h.curve].restrict_var(0, t), s);
            ys.push_back(s);
        }
        std::sort(ys.begin(), ys.end());
        ys.erase(std::unique(ys.begin(), ys.end(),
                             [](double a, double b) { return std::fabs(a - b) < 1e-12; }),
                 ys.end());
        for (double s : ys) emit_base(t, s);
    }

    if (out.samples.empty())
        throw DegenerateInput("sample_surface: no base point met the membership rule");
    return out;
}

namespace {

// Solves A x = b in place by Gaussian elimination with partial pivoting.
bool solve_linear(std::vector<std::vector<double>> A, std::vector<double> b,
                  std::vector<double>& x) {
    const size_t n = A.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
        if (std::fabs(A[piv][col]) < 1e-300) return false;
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (size_t r = col + 1; r < n; ++r) {
            double f = A[r][col] / A[col][col];
            for (size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (size_t ri = n; ri-- > 0;) {
        double s = b[ri];
        for (size_t c = ri + 1; c < n; ++c) s -= A[ri][c] * x[c];
        x[ri] = s / A[ri][ri];
    }
    return true;
}

}  // namespace

RegularityReport verify_regularity(const LiftResult& lift, double delta) {
    const int n = lift.F.nvars();
    const int k = lift.spec.dom.k;
    std::vector<Polynomial> grad(n);
    for (int i = 0; i < n; ++i) grad[i] = lift.F.partial(i);
    std::vector<std::vector<Polynomial>> hess(n, std::vector<Polynomial>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) hess[i][j] = grad[i].partial(j);

    auto grad_at = [&](const std::vector<double>& p) {
        std::vector<double> g(n);
        for (int i = 0; i < n; ++i) g[i] = grad[i].eval(p);
        return g;
    };
    auto norm = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double c : v) s += c * c;
        return std::sqrt(s);
    };

    RegularityReport rep;
    rep.n_samples = lift.samples.size();
    if (lift.samples.empty())
        throw DegenerateInput("verify_regularity: lift carries no samples");

    double fiber_extent = 0.0;
    std::vector<std::pair<double, size_t>> scored;
    scored.reserve(lift.samples.size());
    double best = std::numeric_limits<double>::infinity();
    size_t best_idx = 0;
    for (size_t i = 0; i < lift.samples.size(); ++i) {
        const auto& s = lift.samples[i];
        std::vector<double> p = s.x;
        p.insert(p.end(), s.y.begin(), s.y.end());
        for (double c : s.y) fiber_extent = std::max(fiber_extent, std::fabs(c));
        double gn = norm(grad_at(p));
        scored.emplace_back(gn, i);
        if (gn < best) {
            best = gn;
            best_idx = i;
        }
    }
    rep.min_gradient_norm = best;
    {
        const auto& s = lift.samples[best_idx];
        rep.min_gradient_point = s.x;
        rep.min_gradient_point.insert(rep.min_gradient_point.end(), s.y.begin(),
                                      s.y.end());
    }

    const size_t n_polish = std::min<size_t>(16, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + n_polish, scored.end());

    const double box_base = lift.spec.dom.bound + lift.pitch;
    const double box_fiber = fiber_extent + 1.0;
    for (size_t w = 0; w < n_polish; ++w) {
        const auto& s = lift.samples[scored[w].second];
        std::vector<double> p = s.x;
        p.insert(p.end(), s.y.begin(), s.y.end());

        bool alive = true;
        for (int it = 0; it < 60 && alive; ++it) {
            std::vector<double> g = grad_at(p);
            std::vector<std::vector<double>> H(n, std::vector<double>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) H[i][j] = hess[i][j].eval(p);
            std::vector<double> step;
            for (double& c : g) c = -c;
            if (!solve_linear(H, g, step)) {
                alive = false;
                break;
            }
            double sl = norm(step);
            if (!std::isfinite(sl) || sl > 1e6) {
                alive = false;
                break;
            }
            for (int i = 0; i < n; ++i) p[i] += step[i];
            if (sl < 1e-14) break;
        }
        if (!alive) continue;

        double gn = norm(grad_at(p));
        double fv = lift.F.eval(p);
        double fscale = lift.F.scale_at(p);
        bool in_box = true;
        for (int i = 0; i < k; ++i)
            if (std::fabs(p[i]) > box_base) in_box = false;
        for (int i = k; i < n; ++i)
            if (std::fabs(p[i]) > box_fiber) in_box = false;
        if (gn <= delta && std::fabs(fv) <= 1e-8 * (1.0 + fscale) && in_box) {
            rep.ok = false;
            rep.singular_point = p;
            rep.singular_gradient_norm = gn;
            rep.singular_value = fv;
            return rep;
        }
    }

    rep.ok = rep.min_gradient_norm > delta;
    return rep;
}

}  // namespace preeb
