#pragma once

#include <string>

#include "preeb/domain.hpp"
#include "preeb/lift.hpp"
#include "preeb/reeb_graph.hpp"

namespace preeb {

// JSON serialization.  Readers throw ParseError on malformed input.
std::string polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const std::string& text);

std::string domain_to_json(const AlgebraicDomain& dom);
AlgebraicDomain domain_from_json(const std::string& text);

std::string graph_to_json(const ReebGraph& g);
ReebGraph graph_from_json(const std::string& text);

// Sampled lift surfaces stream as JSON Lines: a header record with the
// construction parameters, then one record per sample.  Reading rebuilds the
// defining polynomial and regroups samples into base points; the random
// directions are not persisted.
std::string lift_to_jsonl(const LiftResult& lift);
LiftResult lift_from_jsonl(const std::string& text);

// Graphviz rendering with deterministic ordering; labels show the vertex
// value (4 decimals) and degree.
std::string graph_to_dot(const ReebGraph& g);

// Whole-file helpers.  read_text_file throws ParseError when the file cannot
// be opened; write_text_file throws Error on write failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace preeb
