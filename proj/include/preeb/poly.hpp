// Sparse multivariate polynomials over double coefficients.
//
// A polynomial is a map from exponent multi-indices to nonzero coefficients.
// The representation is normalized on every mutation: zero coefficients are
// dropped and the total-degree cap is enforced, so downstream code can rely on
// `terms()` containing only genuine monomials.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "preeb/errors.hpp"

namespace preeb {

// Total-degree cap for any constructed polynomial; bounds blowup of products.
inline constexpr int kMaxTotalDegree = 64;

// Closed interval [lo, hi] on the real line.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double l, double h) : lo(l), hi(h) {
        if (!(l <= h)) throw DegenerateInput("Interval: lo must be <= hi");
    }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double t, double tol = 0.0) const {
        return t >= lo - tol && t <= hi + tol;
    }
    bool overlaps(const Interval& o, double tol = 0.0) const {
        return lo <= o.hi + tol && o.lo <= hi + tol;
    }
};

// One isolated real root; `tangential` marks even-multiplicity roots, where
// the polynomial touches zero without a sign change.
struct RealRoot {
    double value = 0.0;
    bool tangential = false;
};

class Polynomial {
  public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, double>;

    Polynomial() = default;
    explicit Polynomial(int nvars) : nvars_(check_nvars(nvars)) {}

    // Builds from raw terms; duplicates are summed, zeros dropped.
    Polynomial(int nvars, const std::vector<std::pair<Exponents, double>>& terms);

    static Polynomial constant(int nvars, double c);
    static Polynomial variable(int nvars, int i);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int total_degree() const;  // -1 for the zero polynomial

    double coeff(const Exponents& e) const;

    double eval(const std::vector<double>& x) const;

    // d/dx_i.
    Polynomial partial(int i) const;

    // Substitutes x_i = t; the result has one variable fewer (indices above i
    // shift down by one).
    Polynomial restrict_var(int i, double t) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial scaled(double s) const;

    bool same_terms(const Polynomial& o, double tol = 0.0) const;

    // Sum of |coeff| * max(1,|x_i|)^e, a magnitude bound used for tolerance
    // scaling in root finding and residual checks.
    double scale_at(const std::vector<double>& x) const;

    std::string to_string() const;

  private:
    static int check_nvars(int n) {
        if (n < 0) throw DimensionError("Polynomial: nvars must be >= 0");
        return n;
    }
    void add_term(const Exponents& e, double c);
    void check_degree_cap() const;

    int nvars_ = 0;
    TermMap terms_;
};

// Product of a list of polynomials over shared variables; empty list gives the
// constant 1 (in `nvars` variables).
Polynomial product(const std::vector<Polynomial>& ps, int nvars);

// Embeds p into a larger variable space: variable i becomes variable i+offset.
Polynomial embed_vars(const Polynomial& p, int new_nvars, int offset);

// Gradient evaluated at x (length nvars).
std::vector<double> gradient_at(const Polynomial& p, const std::vector<double>& x);

// Restriction of p to the parametric line x = a + s*d; univariate in s.
Polynomial compose_line(const Polynomial& p, const std::vector<double>& a,
                        const std::vector<double>& d);

// All real roots of a univariate polynomial inside the window, each reported
// once, sorted ascending.  Even-multiplicity roots carry tangential = true.
// Throws DimensionError unless p.nvars() == 1 and DegenerateInput if p is the
// zero polynomial.
std::vector<RealRoot> isolate_real_roots(const Polynomial& p, const Interval& window,
                                         double rho = 1e-10);

// Values-only convenience wrapper around isolate_real_roots.
std::vector<double> real_roots(const Polynomial& p, const Interval& window,
                               double rho = 1e-10);

namespace detail {

// Dense univariate polynomial, coefficient of s^i at index i.  Internal
// workhorse for root isolation and resultants.
struct UniPoly {
    std::vector<double> c;

    UniPoly() = default;
    explicit UniPoly(std::vector<double> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim();
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    double eval(double t) const;
    UniPoly derivative() const;
    double coeff_scale() const;

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly scaled(double s) const;
};

UniPoly to_dense(const Polynomial& p);
Polynomial from_dense(const UniPoly& u);

std::vector<RealRoot> isolate_real_roots(const UniPoly& p, double lo, double hi,
                                         double rho);

}  // namespace detail

}  // namespace preeb
