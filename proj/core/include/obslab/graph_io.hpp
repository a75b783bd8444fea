#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "obslab/graph.hpp"

namespace obslab {

// A graph plus the optional label table carried through I/O.
struct LabelledGraph {
  Graph graph;
  std::vector<std::string> labels;  // empty, or one entry per vertex
};

// {"n": <int>, "edges": [[u,v], ...]} with u < v in lexicographic order.
nlohmann::ordered_json graph_to_json(const Graph& g, const std::vector<std::string>& labels = {});
// Throws InvalidInput on malformed documents.
LabelledGraph graph_from_json(const nlohmann::json& j);

// "n m" header followed by one "u v" line per edge.
std::string graph_to_edgelist(const Graph& g);
Graph graph_from_edgelist(const std::string& text);

// Accepts either format; JSON is recognised by a leading '{'.
LabelledGraph read_graph(std::istream& in);

nlohmann::ordered_json vertex_set_to_json(const VertexSet& s);
VertexSet vertex_set_from_json(const Graph& g, const nlohmann::json& j);

}  // namespace obslab
