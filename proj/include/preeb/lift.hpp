#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "preeb/domain.hpp"
#include "preeb/poly.hpp"

namespace preeb {

// Recipe for the lifted hypersurface
//   F(x, y) = prod_j f_j(x) - sum_j coeffs[j] * y_j^(2*exps[j])
// living in R^k0 with k0 = dom.k + coeffs.size().
struct LiftSpec {
    AlgebraicDomain dom;
    int k0 = 4;
    std::vector<int> exps;      // m_j >= 1; empty -> all ones
    std::vector<double> coeffs; // c_j > 0;  empty -> all ones
    bool allow_low_codim = false; // permit k0 == dom.k + 1

    LiftSpec() = default;
    LiftSpec(AlgebraicDomain d, int k0_, std::vector<int> e = {},
             std::vector<double> c = {}, bool allow = false);

    int codim() const { return k0 - dom.k; }
};

Polynomial build_lift(const LiftSpec& spec);

struct LiftSample {
    std::vector<double> x; // base coordinates (dom.k of them)
    std::vector<double> y; // fiber coordinates (k0 - dom.k of them)
    double g = 0.0;        // height = x[0]
    int base_id = -1;
};

struct LiftResult {
    LiftSpec spec;
    Polynomial F;
    std::vector<std::vector<double>> bases; // distinct base points
    std::vector<LiftSample> samples;
    double pitch = 0.0;
    int n_fiber = 0;
    std::uint64_t seed = 0;
    double tau_s = 0.0;
    std::vector<std::vector<double>> directions; // unit vectors in fiber space
};

inline constexpr double kDefaultTauS = 1e-9;

// Samples the zero set of F over the base grid: interior base points carry
// n_fiber points on their fiber sphere, boundary base points carry the single
// point y = 0.
LiftResult sample_surface(const LiftSpec& spec, int n_base = 4096, int n_fiber = 8,
                          std::uint64_t seed = 20240817, double tau_s = kDefaultTauS);

struct RegularityReport {
    bool ok = false;
    double min_gradient_norm = 0.0;
    std::vector<double> min_gradient_point; // sample attaining the minimum
    std::size_t n_samples = 0;
    // Populated when a genuine singular point of {F = 0} was located.
    std::optional<std::vector<double>> singular_point;
    double singular_gradient_norm = 0.0;
    double singular_value = 0.0; // F at the singular point
};

// Screens every sample's gradient norm against delta and refines the worst
// offenders toward critical points of F; fails when a critical point is found
// on the zero set within the sampled region.
RegularityReport verify_regularity(const LiftResult& lift, double delta = 1e-6);

}  // namespace preeb
