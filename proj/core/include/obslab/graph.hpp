#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "obslab/vertex_set.hpp"

namespace obslab {

// Undirected edge, always stored with first < second.
using Edge = std::pair<int, int>;

// Adjacency rows are dense bitsets; larger graphs raise ScaleLimit.
inline constexpr int kMaxOrder = 1 << 15;

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Finite simple undirected graph on vertices 0..n-1. Immutable; build one
// with GraphBuilder or the edge-list constructor.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  // Throws InvalidInput on out-of-range endpoints or self-loops. Repeated
  // edges are merged.
  Graph(int n, std::span<const Edge> edges);

  int order() const { return n_; }
  int size() const { return m_; }

  bool adjacent(int u, int v) const { return rows_[static_cast<std::size_t>(u)].contains(v); }
  const VertexSet& neighbors(int v) const { return rows_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return rows_[static_cast<std::size_t>(v)].size(); }
  int max_degree() const;

  VertexSet all() const { return VertexSet::full(n_); }
  VertexSet empty_set() const { return VertexSet(n_); }
  VertexSet make_set(std::span<const int> members) const;
  VertexSet make_set(std::initializer_list<int> members) const;

  // Closed neighbourhood N[v].
  VertexSet closed_neighbors(int v) const;
  // Vertices outside X with a neighbour in X.
  VertexSet neighbors_of_set(const VertexSet& x) const;

  // Sorted lexicographically.
  std::vector<Edge> edges() const;

  bool valid_vertex(int v) const { return v >= 0 && v < n_; }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }

 private:
  friend class GraphBuilder;

  int n_ = 0;
  int m_ = 0;
  std::vector<VertexSet> rows_;
};

// Mutable adjacency used while constructing a Graph.
class GraphBuilder {
 public:
  explicit GraphBuilder(int n = 0) : n_(n) { adj_.resize(static_cast<std::size_t>(n)); }

  int order() const { return n_; }
  int add_vertex();
  // Returns the first index of `count` new vertices.
  int add_vertices(int count);
  // Throws InvalidInput on out-of-range endpoints or a self-loop.
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  bool adjacent(int u, int v) const;

  Graph build() const;

 private:
  int n_;
  std::vector<std::vector<int>> adj_;
};

// Simple directed graph; (u,v) and (v,u) may coexist, self-arcs may not.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n);
  Digraph(int n, std::span<const std::pair<int, int>> arcs);

  int order() const { return n_; }
  bool has_arc(int u, int v) const { return out_[static_cast<std::size_t>(u)].contains(v); }
  const VertexSet& out_neighbors(int v) const { return out_[static_cast<std::size_t>(v)]; }
  std::vector<std::pair<int, int>> arcs() const;

 private:
  int n_ = 0;
  std::vector<VertexSet> out_;
};

// An induced path p1 - ... - pk of a host graph. Construction rejects any
// sequence that is not an induced path.
class InducedPath {
 public:
  InducedPath(const Graph& g, std::vector<int> vertices);

  const std::vector<int>& vertices() const { return vertices_; }
  int front() const { return vertices_.front(); }
  int back() const { return vertices_.back(); }
  // Number of edges.
  int length() const { return static_cast<int>(vertices_.size()) - 1; }
  // Vertices other than the two ends.
  std::vector<int> interior() const;

 private:
  std::vector<int> vertices_;
};

bool is_induced_path(const Graph& g, std::span<const int> vertices);

struct InducedSubgraph {
  Graph graph;
  std::vector<int> old_to_new;  // -1 for vertices outside X
  std::vector<int> new_to_old;
};

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& x);
InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> x);

enum class SetRelation { complete, anticomplete, mixed };

// X and Y must be disjoint. When either side is empty both predicates hold
// vacuously; that case reports `anticomplete`.
SetRelation set_relation(const Graph& g, const VertexSet& x, const VertexSet& y);
bool is_complete_to(const Graph& g, const VertexSet& x, const VertexSet& y);
bool is_anticomplete_to(const Graph& g, const VertexSet& x, const VertexSet& y);

bool is_stable_set(const Graph& g, const VertexSet& x);
bool is_clique(const Graph& g, const VertexSet& x);

struct LineGraph {
  Graph graph;
  std::vector<Edge> vertex_edge;  // line-graph vertex -> edge of the source
};

LineGraph line_graph(const Graph& g);

// Replaces each listed edge e by a path with times[e] new internal vertices.
// New vertices are appended in edge order. Unlisted edges are kept.
Graph subdivide(const Graph& g, const std::map<Edge, int>& times);

Graph complement(const Graph& g);

bool is_connected(const Graph& g);
bool is_bipartite(const Graph& g);

// Breadth-first distances from `source` inside the vertex set `within`
// (-1 when unreachable).
std::vector<int> bfs_distances(const Graph& g, int source, const VertexSet& within);

}  // namespace obslab
