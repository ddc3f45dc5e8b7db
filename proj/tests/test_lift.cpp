#include <cmath>
#include <map>
#include <vector>

#include <doctest.h>

#include "preeb/generators.hpp"
#include "preeb/lift.hpp"

using namespace preeb;

namespace {

Polynomial circle2(double cx, double cy, double r, bool inside_positive) {
    Polynomial x1 = Polynomial::variable(2, 0);
    Polynomial x2 = Polynomial::variable(2, 1);
    Polynomial dx = x1 - Polynomial::constant(2, cx);
    Polynomial dy = x2 - Polynomial::constant(2, cy);
    Polynomial q = dx * dx + dy * dy - Polynomial::constant(2, r * r);
    return inside_positive ? -q : q;
}

AlgebraicDomain broken_lens() {
    // Two unit circles whose boundaries cross: violates pairwise disjointness,
    // so the lifted hypersurface has genuine singular points above the
    // crossings at (1/2, +-sqrt(3)/2).
    return AlgebraicDomain(2,
                           {circle2(0.0, 0.0, 1.0, true),
                            circle2(1.0, 0.0, 1.0, true)},
                           2.5);
}

}  // namespace

TEST_CASE("build_lift assembles the expected polynomial") {
    AlgebraicDomain disk = make_chain(1);
    Polynomial F = build_lift(LiftSpec(disk, 4));
    // F = 1 - x1^2 - x2^2 - y1^2 - y2^2 in variables (x1, x2, y1, y2).
    CHECK(F.nvars() == 4);
    CHECK(F.coeff({0, 0, 0, 0}) == doctest::Approx(1.0));
    CHECK(F.coeff({2, 0, 0, 0}) == doctest::Approx(-1.0));
    CHECK(F.coeff({0, 2, 0, 0}) == doctest::Approx(-1.0));
    CHECK(F.coeff({0, 0, 2, 0}) == doctest::Approx(-1.0));
    CHECK(F.coeff({0, 0, 0, 2}) == doctest::Approx(-1.0));
    CHECK(F.terms().size() == 5);
    CHECK(F.eval({0.0, 0.0, 0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(F.eval({1.0, 0.0, 0.0, 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("build_lift honors custom exponents and coefficients") {
    AlgebraicDomain disk = make_chain(1);
    Polynomial F = build_lift(LiftSpec(disk, 4, {2, 1}, {3.0, 1.0}));
    // F = (1 - x1^2 - x2^2) - 3 y1^4 - y2^2.
    CHECK(F.coeff({0, 0, 4, 0}) == doctest::Approx(-3.0));
    CHECK(F.coeff({0, 0, 0, 2}) == doctest::Approx(-1.0));
    CHECK(F.coeff({0, 0, 2, 0}) == doctest::Approx(0.0));
}

TEST_CASE("build_lift validates the codimension and parameters") {
    AlgebraicDomain disk = make_chain(1);
    CHECK_THROWS_AS(build_lift(LiftSpec(disk, 3)), DimensionError);
    CHECK_NOTHROW(build_lift(LiftSpec(disk, 3, {}, {}, true)));
    CHECK_THROWS_AS(build_lift(LiftSpec(disk, 2, {}, {}, true)), DimensionError);
    CHECK_THROWS_AS(build_lift(LiftSpec(disk, 4, {1}, {})), DimensionError);
    CHECK_THROWS_AS(build_lift(LiftSpec(disk, 4, {1, 0}, {})), DegenerateInput);
    CHECK_THROWS_AS(build_lift(LiftSpec(disk, 4, {1, 1}, {1.0, -2.0})), DegenerateInput);
    CHECK_THROWS_AS(build_lift(LiftSpec(disk, 4, {1, 1}, {1.0})), DimensionError);
}

TEST_CASE("sample_surface: every sample lies on the hypersurface") {
    AlgebraicDomain disk = make_chain(1);
    LiftResult lift = sample_surface(LiftSpec(disk, 4), 1600, 8);
    REQUIRE(!lift.samples.empty());
    for (const LiftSample& s : lift.samples) {
        std::vector<double> p = {s.x[0], s.x[1], s.y[0], s.y[1]};
        CHECK(std::abs(lift.F.eval(p)) < 1e-9);
        CHECK(s.g == s.x[0]);
        // For the unit disk the surface is the unit 3-sphere.
        double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
        CHECK(std::abs(r2 - 1.0) < 1e-9);
    }
}

TEST_CASE("sample_surface: fiber dichotomy") {
    AlgebraicDomain disk = make_chain(1);
    const std::size_t n_fiber = 6;
    LiftResult lift = sample_surface(LiftSpec(disk, 4), 900, n_fiber);

    std::map<int, std::vector<const LiftSample*>> by_base;
    for (const LiftSample& s : lift.samples) by_base[s.base_id].push_back(&s);
    REQUIRE(by_base.size() == lift.bases.size());

    std::size_t n_boundary = 0;
    for (const auto& [id, group] : by_base) {
        const auto& base = lift.bases[static_cast<std::size_t>(id)];
        double p = 1.0 - base[0] * base[0] - base[1] * base[1];
        if (p > lift.tau_s) {
            CHECK(group.size() == n_fiber);
        } else {
            // Boundary base: the fiber collapses to a single point at y = 0.
            REQUIRE(group.size() == 1);
            CHECK(group[0]->y[0] == 0.0);
            CHECK(group[0]->y[1] == 0.0);
            CHECK(std::abs(base[0] * base[0] + base[1] * base[1] - 1.0) < 1e-6);
            ++n_boundary;
        }
    }
    CHECK(n_boundary > 0);
}

TEST_CASE("sample_surface is deterministic in the seed") {
    AlgebraicDomain ann = make_chain(2);
    LiftResult a = sample_surface(LiftSpec(ann, 4), 400, 4, 123);
    LiftResult b = sample_surface(LiftSpec(ann, 4), 400, 4, 123);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].x == b.samples[i].x);
        CHECK(a.samples[i].y == b.samples[i].y);
        CHECK(a.samples[i].base_id == b.samples[i].base_id);
    }
    LiftResult c = sample_surface(LiftSpec(ann, 4), 400, 4, 456);
    REQUIRE(!c.directions.empty());
    bool differs = false;
    for (std::size_t j = 0; j < c.directions[0].size(); ++j)
        if (c.directions[0][j] != a.directions[0][j]) differs = true;
    CHECK(differs);
}

TEST_CASE("sample_surface rejects bad parameters") {
    AlgebraicDomain disk = make_chain(1);
    CHECK_THROWS_AS(sample_surface(LiftSpec(disk, 4), 2, 8), DegenerateInput);
    CHECK_THROWS_AS(sample_surface(LiftSpec(disk, 4), 400, 0), DegenerateInput);
}

TEST_CASE("verify_regularity accepts the round lifts") {
    AlgebraicDomain disk = make_chain(1);
    LiftResult lift = sample_surface(LiftSpec(disk, 4), 900, 6);
    RegularityReport rep = verify_regularity(lift);
    CHECK(rep.ok);
    // On the unit 3-sphere |grad F| = 2|p| = 2 everywhere.
    CHECK(rep.min_gradient_norm == doctest::Approx(2.0).epsilon(1e-6));

    AlgebraicDomain ann = make_chain(2);
    LiftResult lift2 = sample_surface(LiftSpec(ann, 4), 2500, 6);
    RegularityReport rep2 = verify_regularity(lift2);
    CHECK(rep2.ok);
    // With P = (1.69 - s)(s - 0.16), s = x1^2 + x2^2, the on-surface gradient
    // norm is minimal on the inner circle: |grad P| = 2*0.4*1.53 = 1.224.
    CHECK(rep2.min_gradient_norm > 1.2);
    CHECK(rep2.min_gradient_norm < 1.25);
}

TEST_CASE("verify_regularity accepts a higher-exponent lift") {
    AlgebraicDomain ann = make_chain(2);
    LiftResult lift = sample_surface(LiftSpec(ann, 4, {2, 1}, {3.0, 1.0}), 900, 6);
    for (const LiftSample& s : lift.samples) {
        std::vector<double> p = {s.x[0], s.x[1], s.y[0], s.y[1]};
        CHECK(std::abs(lift.F.eval(p)) < 1e-8);
    }
    CHECK(verify_regularity(lift).ok);
}

TEST_CASE("verify_regularity finds the singular points of a crossed lift") {
    LiftResult lift = sample_surface(LiftSpec(broken_lens(), 4), 4096, 6);
    RegularityReport rep = verify_regularity(lift);
    REQUIRE_FALSE(rep.ok);
    REQUIRE(rep.singular_point.has_value());
    const std::vector<double>& w = *rep.singular_point;
    REQUIRE(w.size() == 4);
    CHECK(rep.singular_gradient_norm <= 1e-6);
    CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(std::abs(w[1]) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-4));
    CHECK(std::abs(w[2]) < 1e-4);
    CHECK(std::abs(w[3]) < 1e-4);
}
