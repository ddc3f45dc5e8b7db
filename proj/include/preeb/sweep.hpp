// Sweep construction of the Reeb-type graph of a planar algebraic domain
// under projection to the first coordinate.
//
// Critical x-values are the tangency points of vertical lines with the
// boundary curves, found by eliminating x2 with a Sylvester resultant and
// polishing with 2-D Newton.  Between consecutive critical values the fiber
// component structure is constant; components at representative levels and at
// the critical levels themselves become graph nodes, glued by x2-interval
// overlap.
#pragma once

#include <array>
#include <vector>

#include "preeb/domain.hpp"
#include "preeb/reeb_graph.hpp"

namespace preeb {

struct CriticalPoint {
    std::array<double, 2> x{0.0, 0.0};
    int curve = -1;       // boundary component index
    double xvalue = 0.0;  // x[0], kept explicit for sorting and reporting
};

struct SweepOptions {
    double tau_b = kDefaultTauB;
    double sigma = 1e-7;        // minimal separation of critical x-values
    double root_rho = 1e-10;
    double merge_window = 0.0;  // contract critical vertices closer than this
    bool smooth_all = false;    // also smooth critical degree-2 vertices
};

// Resultant of f and g with respect to x2 (both bivariate); univariate in x1.
// Throws DegenerateInput when the resultant vanishes identically.
Polynomial resultant_x2(const Polynomial& f, const Polynomial& g);

// All vertical-tangency points on the closure boundary, sorted by x-value.
// Throws DegeneratePosition when two of them come closer than sigma in x.
std::vector<CriticalPoint> critical_x_values(const AlgebraicDomain& dom,
                                             const SweepOptions& opts = {});

// Connected components of the fiber over x1 = t as closed x2-intervals,
// bottom to top.  Throws TangencyAtLevel when t is critical (tangential
// root or a boundary point interior to the fiber), because such a level must
// not represent a slab.
std::vector<Interval> slab_components(const AlgebraicDomain& dom, double t,
                                      const SweepOptions& opts = {});

// One endpoint of a fiber component (or an isolated fiber touch point).
struct BoundaryHit {
    double x2 = 0.0;
    int curve = -1;
};

// Permissive fiber decomposition used at critical levels and for boundary
// harvesting: tangential touches merge or create single-point components
// instead of throwing.  Hits collects all boundary points of the fiber.
std::vector<Interval> fiber_components(const AlgebraicDomain& dom, double t, bool strict,
                                       const SweepOptions& opts = {},
                                       std::vector<BoundaryHit>* hits = nullptr);

// Full sweep: faithful graph with critical vertices kept; optional merge
// window and full smoothing applied at the end.
ReebGraph build_poincare_reeb(const AlgebraicDomain& dom, const SweepOptions& opts = {});

}  // namespace preeb
