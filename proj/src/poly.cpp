#include "preeb/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace preeb {

namespace {

// Exact integer power by squaring; exponents here are small non-negative ints.
double ipow(double base, int e) {
    double r = 1.0;
    double b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

int exp_sum(const Polynomial::Exponents& e) {
    int s = 0;
    for (int v : e) s += v;
    return s;
}

}  // namespace

Polynomial::Polynomial(int nvars, const std::vector<std::pair<Exponents, double>>& terms)
    : nvars_(check_nvars(nvars)) {
    for (const auto& [e, c] : terms) add_term(e, c);
    check_degree_cap();
}

Polynomial Polynomial::constant(int nvars, double c) {
    Polynomial p(nvars);
    p.add_term(Exponents(static_cast<size_t>(nvars), 0), c);
    return p;
}

Polynomial Polynomial::variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw DimensionError("Polynomial::variable: index out of range");
    Polynomial p(nvars);
    Exponents e(static_cast<size_t>(nvars), 0);
    e[static_cast<size_t>(i)] = 1;
    p.add_term(e, 1.0);
    return p;
}

void Polynomial::add_term(const Exponents& e, double c) {
    if (static_cast<int>(e.size()) != nvars_)
        throw DimensionError("Polynomial: exponent vector length != nvars");
    for (int v : e)
        if (v < 0) throw DegenerateInput("Polynomial: negative exponent");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0.0) terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

void Polynomial::check_degree_cap() const {
    if (total_degree() > kMaxTotalDegree)
        throw DegreeOverflow("Polynomial: total degree exceeds " +
                             std::to_string(kMaxTotalDegree));
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, exp_sum(e));
    return d;
}

double Polynomial::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial::eval(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != nvars_)
        throw DimensionError("Polynomial::eval: point dimension != nvars");
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) t *= ipow(x[i], e[i]);
        acc += t;
    }
    return acc;
}

double Polynomial::scale_at(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != nvars_)
        throw DimensionError("Polynomial::scale_at: point dimension != nvars");
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = std::fabs(c);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) t *= ipow(std::max(1.0, std::fabs(x[i])), e[i]);
        acc += t;
    }
    return acc;
}

Polynomial Polynomial::partial(int i) const {
    if (i < 0 || i >= nvars_) throw DimensionError("Polynomial::partial: index out of range");
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[static_cast<size_t>(i)] == 0) continue;
        Exponents d = e;
        double k = d[static_cast<size_t>(i)];
        d[static_cast<size_t>(i)] -= 1;
        out.add_term(d, c * k);
    }
    return out;
}

Polynomial Polynomial::restrict_var(int i, double t) const {
    if (i < 0 || i >= nvars_) throw DimensionError("Polynomial::restrict_var: index out of range");
    Polynomial out(nvars_ - 1);
    for (const auto& [e, c] : terms_) {
        Exponents d;
        d.reserve(e.size() - 1);
        for (size_t j = 0; j < e.size(); ++j)
            if (static_cast<int>(j) != i) d.push_back(e[j]);
        out.add_term(d, c * ipow(t, e[static_cast<size_t>(i)]));
    }
    return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw DimensionError("Polynomial::operator+: nvars mismatch");
    Polynomial out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw DimensionError("Polynomial::operator-: nvars mismatch");
    Polynomial out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
}

Polynomial Polynomial::operator-() const { return scaled(-1.0); }

Polynomial Polynomial::scaled(double s) const {
    Polynomial out(nvars_);
    if (s == 0.0) return out;
    for (const auto& [e, c] : terms_) out.add_term(e, c * s);
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw DimensionError("Polynomial::operator*: nvars mismatch");
    Polynomial out(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    out.check_degree_cap();
    return out;
}

bool Polynomial::same_terms(const Polynomial& o, double tol) const {
    if (nvars_ != o.nvars_) return false;
    auto covered = [tol](const TermMap& a, const TermMap& b) {
        for (const auto& [e, c] : a) {
            auto it = b.find(e);
            double other = it == b.end() ? 0.0 : it->second;
            if (std::fabs(c - other) > tol) return false;
        }
        return true;
    };
    return covered(terms_, o.terms_) && covered(o.terms_, terms_);
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << (c >= 0 ? " + " : " - ");
        else if (c < 0)
            os << "-";
        os << std::fabs(c);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*x" << i + 1;
            if (e[i] > 1) os << "^" << e[i];
        }
        first = false;
    }
    return os.str();
}

Polynomial product(const std::vector<Polynomial>& ps, int nvars) {
    Polynomial acc = Polynomial::constant(nvars, 1.0);
    for (const auto& p : ps) acc = acc * p;
    return acc;
}

Polynomial embed_vars(const Polynomial& p, int new_nvars, int offset) {
    if (offset < 0 || p.nvars() + offset > new_nvars)
        throw DimensionError("embed_vars: target space too small");
    Polynomial out(new_nvars);
    std::vector<std::pair<Polynomial::Exponents, double>> terms;
    for (const auto& [e, c] : p.terms()) {
        Polynomial::Exponents d(static_cast<size_t>(new_nvars), 0);
        for (size_t i = 0; i < e.size(); ++i) d[i + static_cast<size_t>(offset)] = e[i];
        terms.emplace_back(std::move(d), c);
    }
    return Polynomial(new_nvars, terms);
}

std::vector<double> gradient_at(const Polynomial& p, const std::vector<double>& x) {
    std::vector<double> g(static_cast<size_t>(p.nvars()));
    for (int i = 0; i < p.nvars(); ++i) g[static_cast<size_t>(i)] = p.partial(i).eval(x);
    return g;
}

Polynomial compose_line(const Polynomial& p, const std::vector<double>& a,
                        const std::vector<double>& d) {
    if (static_cast<int>(a.size()) != p.nvars() || a.size() != d.size())
        throw DimensionError("compose_line: base/direction dimension mismatch");
    using detail::UniPoly;
    UniPoly acc;
    for (const auto& [e, c] : p.terms()) {
        UniPoly term(std::vector<double>{c});
        for (size_t i = 0; i < e.size(); ++i) {
            UniPoly lin(std::vector<double>{a[i], d[i]});
            for (int k = 0; k < e[i]; ++k) term = term * lin;
        }
        acc = acc + term;
    }
    return detail::from_dense(acc);
}

// ---------------------------------------------------------------------------
// Dense univariate machinery.
// ---------------------------------------------------------------------------

namespace detail {

void UniPoly::trim() {
    while (!c.empty() && c.back() == 0.0) c.pop_back();
}

double UniPoly::eval(double t) const {
    double acc = 0.0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (c.size() <= 1) return UniPoly();
    std::vector<double> d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return UniPoly(std::move(d));
}

double UniPoly::coeff_scale() const {
    double s = 0.0;
    for (double v : c) s += std::fabs(v);
    return s;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<double> r(std::max(c.size(), o.c.size()), 0.0);
    for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
    std::vector<double> r(std::max(c.size(), o.c.size()), 0.0);
    for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] -= o.c[i];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (c.empty() || o.c.empty()) return UniPoly();
    std::vector<double> r(c.size() + o.c.size() - 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::scaled(double s) const {
    std::vector<double> r = c;
    for (double& v : r) v *= s;
    return UniPoly(std::move(r));
}

UniPoly to_dense(const Polynomial& p) {
    if (p.nvars() != 1) throw DimensionError("to_dense: polynomial must be univariate");
    std::vector<double> c;
    for (const auto& [e, v] : p.terms()) {
        size_t k = static_cast<size_t>(e[0]);
        if (c.size() <= k) c.resize(k + 1, 0.0);
        c[k] = v;
    }
    return UniPoly(std::move(c));
}

Polynomial from_dense(const UniPoly& u) {
    std::vector<std::pair<Polynomial::Exponents, double>> terms;
    for (size_t i = 0; i < u.c.size(); ++i)
        if (u.c[i] != 0.0) terms.push_back({{static_cast<int>(i)}, u.c[i]});
    return Polynomial(1, terms);
}

namespace {

// Magnitude bound for |p| near t, for zero/tangency thresholds.
double local_scale(const UniPoly& p, double t) {
    double acc = 1.0;
    double at = std::max(1.0, std::fabs(t));
    double pw = 1.0;
    for (double v : p.c) {
        acc += std::fabs(v) * pw;
        pw *= at;
    }
    return acc;
}

// Bisection to width rho on a bracketing interval, then a short Newton polish
// kept inside the bracket.
double refine_root(const UniPoly& p, double a, double b, double rho) {
    double fa = p.eval(a);
    for (int it = 0; it < 200 && (b - a) > rho * 0.25; ++it) {
        double m = 0.5 * (a + b);
        double fm = p.eval(m);
        if (fm == 0.0) return m;
        if ((fa < 0) != (fm < 0)) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    double r = 0.5 * (a + b);
    UniPoly dp = p.derivative();
    for (int it = 0; it < 4; ++it) {
        double f = p.eval(r);
        double df = dp.eval(r);
        if (df == 0.0) break;
        double step = f / df;
        double next = r - step;
        if (next < a || next > b) break;
        r = next;
    }
    return r;
}

void push_root(std::vector<RealRoot>& roots, double value, bool tangential, double merge_tol) {
    for (auto& r : roots) {
        if (std::fabs(r.value - value) <= merge_tol) {
            r.tangential = r.tangential || tangential;
            return;
        }
    }
    roots.push_back({value, tangential});
}

}  // namespace

std::vector<RealRoot> isolate_real_roots(const UniPoly& p, double lo, double hi, double rho) {
    std::vector<RealRoot> roots;
    if (p.is_zero()) throw DegenerateInput("isolate_real_roots: zero polynomial");
    if (p.degree() == 0) return roots;

    double merge_tol = std::max(rho * 4.0, (hi - lo) * 1e-14);

    if (p.degree() == 1) {
        double r = -p.c[0] / p.c[1];
        if (r >= lo && r <= hi) roots.push_back({r, false});
        return roots;
    }

    // Breakpoints: window ends plus the critical points of p.  Between
    // consecutive breakpoints p is monotone, so one sign check suffices.
    UniPoly dp = p.derivative();
    std::vector<RealRoot> crit = isolate_real_roots(dp, lo, hi, rho);

    std::vector<double> bps;
    bps.push_back(lo);
    for (const auto& c : crit)
        if (c.value > lo && c.value < hi) bps.push_back(c.value);
    bps.push_back(hi);

    // A critical point where p itself (numerically) vanishes is a multiple
    // root; the derivative sign test separates touch (even multiplicity) from
    // crossing (odd multiplicity >= 3).
    std::vector<bool> bp_is_root(bps.size(), false);
    for (size_t i = 0; i < bps.size(); ++i) {
        double t = bps[i];
        double zero_tol = 1e-9 * local_scale(p, t) * std::max(rho / 1e-10, 1.0);
        if (std::fabs(p.eval(t)) <= zero_tol) {
            double h = std::max(rho * 10.0, (hi - lo) * 1e-9);
            double left = p.eval(t - h);
            double right = p.eval(t + h);
            bool crossing = (left < 0) != (right < 0) && left != 0.0 && right != 0.0;
            bool interior_crit = i > 0 && i + 1 < bps.size();
            push_root(roots, t, interior_crit && !crossing, merge_tol);
            bp_is_root[i] = true;
        }
    }

    for (size_t i = 0; i + 1 < bps.size(); ++i) {
        if (bp_is_root[i] || bp_is_root[i + 1]) continue;
        double a = bps[i], b = bps[i + 1];
        double fa = p.eval(a), fb = p.eval(b);
        if ((fa < 0) == (fb < 0)) continue;
        double r = refine_root(p, a, b, rho);
        push_root(roots, r, false, merge_tol);
    }

    std::sort(roots.begin(), roots.end(),
              [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
    return roots;
}

}  // namespace detail

std::vector<RealRoot> isolate_real_roots(const Polynomial& p, const Interval& window,
                                         double rho) {
    if (p.nvars() != 1) throw DimensionError("isolate_real_roots: polynomial must be univariate");
    if (p.is_zero()) throw DegenerateInput("isolate_real_roots: zero polynomial");
    return detail::isolate_real_roots(detail::to_dense(p), window.lo, window.hi, rho);
}

std::vector<double> real_roots(const Polynomial& p, const Interval& window, double rho) {
    std::vector<double> out;
    for (const auto& r : isolate_real_roots(p, window, rho)) out.push_back(r.value);
    return out;
}

}  // namespace preeb
