// Compact planar (and generally k-dimensional) algebraic domains.
//
// A domain is the bounded open region { x : f_j(x) > 0 for all j } whose
// closure is bounded by the zero sets of the f_j.  Validation checks, by
// sampling, the standing assumptions: each boundary piece is regular (nonzero
// gradient), the pieces are pairwise disjoint, and the closure stays inside
// the declared ball.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "preeb/poly.hpp"

namespace preeb {

struct AlgebraicDomain {
    int k = 2;                               // ambient dimension
    std::vector<Polynomial> boundary_polys;  // f_j, each in k variables
    double bound = 0.0;                      // closure claimed inside ball of this radius

    AlgebraicDomain() = default;
    AlgebraicDomain(int k_, std::vector<Polynomial> polys, double bound_);
};

enum class Region { Interior, Boundary, Exterior };

struct Membership {
    Region tag = Region::Exterior;
    int boundary_index = -1;  // defined when tag == Boundary
};

inline constexpr double kDefaultTauB = 1e-9;

// Classifies a point against the domain with boundary tolerance tau_b.
// Throws AmbiguousBoundary when two or more constraints are near zero.
Membership classify(const AlgebraicDomain& dom, const std::vector<double>& x,
                    double tau_b = kDefaultTauB);

struct ValidationConfig {
    int samples = 1000;        // boundary points to locate per component
    double tau_b = kDefaultTauB;
    double delta_g = 1e-6;     // minimal allowed boundary gradient norm
    std::uint64_t seed = 20240817;
};

struct ValidationIssue {
    std::vector<double> witness;
    std::string what;
};

struct ValidationReport {
    bool regularity_ok = false;
    bool disjointness_ok = false;
    bool boundedness_ok = false;
    double min_gradient_norm = 0.0;
    std::vector<double> min_gradient_point;
    // Located boundary points, tagged by component index; kept for reuse and
    // for assertions over the validation sample set.
    std::vector<std::pair<std::vector<double>, int>> boundary_samples;
    std::optional<ValidationIssue> regularity_issue;
    std::optional<ValidationIssue> disjointness_issue;
    std::optional<ValidationIssue> boundedness_issue;

    bool all_ok() const { return regularity_ok && disjointness_ok && boundedness_ok; }
};

// Sampling-based validation; never throws on mathematical failure, it reports.
ValidationReport validate(const AlgebraicDomain& dom, const ValidationConfig& cfg = {});

}  // namespace preeb
