#pragma once

#include <string>

#include "preeb/domain.hpp"
#include "preeb/reeb_graph.hpp"

namespace preeb {

// Renders the domain boundary curves (marching squares over the bounding box)
// and, when given, the embedded graph on top of them.
std::string render_svg(const AlgebraicDomain& dom, const ReebGraph* graph = nullptr,
                       int grid = 256);

}  // namespace preeb
