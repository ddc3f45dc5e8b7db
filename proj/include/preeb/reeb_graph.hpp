// Reeb graphs as embedded multigraphs.
//
// Vertices carry the function value and optionally a plane embedding; edges
// carry the value interval they span and an optional polyline.  Parallel
// edges are allowed, loop edges are not.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "preeb/poly.hpp"

namespace preeb {

struct ReebVertex {
    int id = 0;
    double value = 0.0;
    std::optional<std::array<double, 2>> embed;
    bool critical = false;
};

struct ReebEdge {
    int id = 0;
    int a = 0;
    int b = 0;
    Interval interval;
    std::vector<std::array<double, 2>> polyline;
};

class ReebGraph {
  public:
    int add_vertex(double value, std::optional<std::array<double, 2>> embed = std::nullopt,
                   bool critical = false);
    int add_edge(int a, int b, Interval interval,
                 std::vector<std::array<double, 2>> polyline = {});

    const std::vector<ReebVertex>& vertices() const { return vertices_; }
    const std::vector<ReebEdge>& edges() const { return edges_; }

    int degree(int v) const;
    std::vector<int> degree_sequence() const;  // sorted ascending
    int count_degree(int d) const;

    // Renumbers vertices by (value, id) and edges by endpoint order; output
    // is deterministic for serialization.
    ReebGraph canonical_order() const;

  private:
    std::vector<ReebVertex> vertices_;
    std::vector<ReebEdge> edges_;
};

// Removes degree-2 vertices, concatenating their edges.  With keep_critical,
// vertices flagged critical survive.  Smoothing never creates a loop edge: a
// vertex whose two edges share the far endpoint is kept, and a bare cycle of
// degree-2 vertices stops shrinking at three vertices.
ReebGraph smooth_degree2(const ReebGraph& g, bool keep_critical);

// Contracts edges between critical vertices whose values differ by at most
// `window`; used to collapse near-coincident events into ideal vertices.
ReebGraph merge_close_critical(const ReebGraph& g, double window);

struct IsoResult {
    bool isomorphic = false;
    std::vector<int> mapping;  // vertex i of a -> mapping[i] of b
};

// Multigraph isomorphism (values ignored) by backtracking with degree
// pruning.  Throws SizeLimit above 64 vertices.
IsoResult isomorphic(const ReebGraph& a, const ReebGraph& b);

int connected_components(const ReebGraph& g);

// First Betti number: E - V + number of components.
int betti1(const ReebGraph& g);

}  // namespace preeb
