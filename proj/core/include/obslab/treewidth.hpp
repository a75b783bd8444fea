#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "obslab/graph.hpp"
#include "obslab/structures.hpp"

namespace obslab {

// Bags indexed by tree node; tree_edges join node indices.
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;
  std::vector<std::pair<int, int>> tree_edges;

  // Largest bag size minus one; -1 without bags.
  int width() const;
};

struct TreewidthResult {
  int width = 0;
  TreeDecomposition decomposition;
  std::vector<int> elimination_order;
};

struct ExactOptions {
  int guard = 22;
};

// Optimal width with a certifying decomposition. Graphs without edges get
// width 0. Throws ScaleLimit above the guard (which may not exceed 64).
TreewidthResult treewidth_exact(const Graph& g, const ExactOptions& opts = {});

// Better of min-fill and min-degree elimination.
TreewidthResult tw_upper(const Graph& g);
// max(clique number - 1, minor-min-width); the clique term is a greedy
// clique above 64 vertices.
int tw_lower(const Graph& g);

// Decomposition induced by an elimination order (a permutation of V(G)).
TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<int>& order);
// Largest number of later neighbours in the fill-in graph of `order`.
int elimination_width(const Graph& g, const std::vector<int>& order);

// First violated axiom: "tree", "range", "vertex-coverage", "edge-coverage"
// or "connectivity".
Validation verify_decomposition(const Graph& g, const TreeDecomposition& td);

// PACE .td text: "s td <bags> <width+1> <n>", then "b <id> <v...>" and tree
// edges, all 1-based.
std::string to_pace(const TreeDecomposition& td, int n);
// Returns the decomposition and the vertex count from the header.
std::pair<TreeDecomposition, int> from_pace(std::istream& in);

}  // namespace obslab
