#pragma once

#include "preeb/domain.hpp"

namespace preeb {

// Disk with l-1 circular holes lined up along the x1-axis: the projection's
// Reeb graph is a chain of l-1 cycles.
AlgebraicDomain make_chain(int l, double r_outer = 0.0, double r_hole = 0.4,
                           double gap = 0.4);

// Disk with l-1 circular holes stacked along the x2-axis, radii staggered so
// the critical x1-values stay distinct: the cycles sit in parallel, and all
// share endpoints after merging nearby critical values.
AlgebraicDomain make_stack(int l, double r_outer = 0.0, double r_hole = 0.4,
                           double gap = 0.4, double stagger = 1e-3);

}  // namespace preeb
