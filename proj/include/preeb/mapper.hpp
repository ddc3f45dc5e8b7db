#pragma once

#include "preeb/lift.hpp"
#include "preeb/reeb_graph.hpp"

namespace preeb {

enum class Metric {
    Base,    // cluster on the base coordinates of each sample
    Ambient, // cluster on the full (x, y) coordinates
};

struct MapperConfig {
    int n_intervals = 20;
    double overlap = 0.35;   // fraction of each interval shared with the next
    double epsilon = 0.0;    // linkage radius; 0 -> 3 * grid pitch
    Metric metric = Metric::Base;
};

// Estimates the Reeb graph of the height function on the sampled surface:
// overlapping intervals of the height range, single-linkage clusters per
// interval, nerve edges between clusters of adjacent intervals that share a
// sample. Degree-2 vertices are smoothed away.
ReebGraph mapper_reeb(const LiftResult& lift, const MapperConfig& cfg = {});

}  // namespace preeb
