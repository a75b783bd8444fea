#include "obslab/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "obslab/error.hpp"

namespace obslab {

namespace {

int checked_order(int n) {
  if (n < 0) throw InvalidInput("negative vertex count");
  if (n > kMaxOrder) throw ScaleLimit("graph", n, kMaxOrder);
  return n;
}

void check_endpoints(int n, int u, int v) {
  if (u < 0 || u >= n || v < 0 || v >= n)
    throw InvalidInput("edge {" + std::to_string(u) + "," + std::to_string(v) +
                       "} out of range for " + std::to_string(n) + " vertices");
  if (u == v) throw InvalidInput("self-loop at vertex " + std::to_string(u));
}

}  // namespace

Graph::Graph(int n) : n_(checked_order(n)), rows_(static_cast<std::size_t>(n), VertexSet(n)) {}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  for (auto [u, v] : edges) {
    check_endpoints(n, u, v);
    if (!rows_[static_cast<std::size_t>(u)].contains(v)) {
      rows_[static_cast<std::size_t>(u)].insert(v);
      rows_[static_cast<std::size_t>(v)].insert(u);
      ++m_;
    }
  }
}

int Graph::max_degree() const {
  int best = 0;
  for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

VertexSet Graph::make_set(std::span<const int> members) const {
  VertexSet s(n_);
  for (int v : members) {
    if (!valid_vertex(v))
      throw InvalidInput("vertex " + std::to_string(v) + " out of range for " + std::to_string(n_) +
                         " vertices");
    s.insert(v);
  }
  return s;
}

VertexSet Graph::make_set(std::initializer_list<int> members) const {
  return make_set(std::span<const int>(members.begin(), members.size()));
}

VertexSet Graph::closed_neighbors(int v) const {
  VertexSet s = neighbors(v);
  s.insert(v);
  return s;
}

VertexSet Graph::neighbors_of_set(const VertexSet& x) const {
  VertexSet out(n_);
  for (int v : x) out |= neighbors(v);
  return out - x;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (int u = 0; u < n_; ++u)
    for (int v = neighbors(u).next(u); v != -1; v = neighbors(u).next(v)) out.emplace_back(u, v);
  return out;
}

int GraphBuilder::add_vertex() {
  adj_.emplace_back();
  return n_++;
}

int GraphBuilder::add_vertices(int count) {
  int first = n_;
  for (int i = 0; i < count; ++i) add_vertex();
  return first;
}

void GraphBuilder::add_edge(int u, int v) {
  check_endpoints(n_, u, v);
  auto& row = adj_[static_cast<std::size_t>(u)];
  if (std::find(row.begin(), row.end(), v) != row.end()) return;
  row.push_back(v);
  adj_[static_cast<std::size_t>(v)].push_back(u);
}

void GraphBuilder::remove_edge(int u, int v) {
  auto drop = [](std::vector<int>& row, int x) { std::erase(row, x); };
  drop(adj_[static_cast<std::size_t>(u)], v);
  drop(adj_[static_cast<std::size_t>(v)], u);
}

bool GraphBuilder::adjacent(int u, int v) const {
  const auto& row = adj_[static_cast<std::size_t>(u)];
  return std::find(row.begin(), row.end(), v) != row.end();
}

Graph GraphBuilder::build() const {
  Graph g(n_);
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[static_cast<std::size_t>(u)]) g.rows_[static_cast<std::size_t>(u)].insert(v);
  int twice = 0;
  for (int u = 0; u < n_; ++u) twice += g.degree(u);
  g.m_ = twice / 2;
  return g;
}

Digraph::Digraph(int n) : n_(checked_order(n)), out_(static_cast<std::size_t>(n), VertexSet(n)) {}

Digraph::Digraph(int n, std::span<const std::pair<int, int>> arcs) : Digraph(n) {
  for (auto [u, v] : arcs) {
    check_endpoints(n, u, v);
    out_[static_cast<std::size_t>(u)].insert(v);
  }
}

std::vector<std::pair<int, int>> Digraph::arcs() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u)
    for (int v : out_[static_cast<std::size_t>(u)]) out.emplace_back(u, v);
  return out;
}

bool is_induced_path(const Graph& g, std::span<const int> vertices) {
  const auto k = vertices.size();
  if (k == 0) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (!g.valid_vertex(vertices[i])) return false;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (vertices[i] == vertices[j]) return false;
      bool should = (j == i + 1);
      if (g.adjacent(vertices[i], vertices[j]) != should) return false;
    }
  }
  return true;
}

InducedPath::InducedPath(const Graph& g, std::vector<int> vertices) : vertices_(std::move(vertices)) {
  if (!is_induced_path(g, vertices_)) throw InvalidInput("vertex sequence is not an induced path");
}

std::vector<int> InducedPath::interior() const {
  if (vertices_.size() <= 2) return {};
  return {vertices_.begin() + 1, vertices_.end() - 1};
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& x) {
  InducedSubgraph out;
  out.old_to_new.assign(static_cast<std::size_t>(g.order()), -1);
  for (int v : x) {
    out.old_to_new[static_cast<std::size_t>(v)] = static_cast<int>(out.new_to_old.size());
    out.new_to_old.push_back(v);
  }
  std::vector<Edge> edges;
  for (int u : x) {
    auto within = g.neighbors(u) & x;
    for (int v = within.next(u); v != -1; v = within.next(v))
      edges.emplace_back(out.old_to_new[static_cast<std::size_t>(u)], out.old_to_new[static_cast<std::size_t>(v)]);
  }
  out.graph = Graph(static_cast<int>(out.new_to_old.size()), edges);
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> x) {
  return induced_subgraph(g, g.make_set(x));
}

bool is_complete_to(const Graph& g, const VertexSet& x, const VertexSet& y) {
  for (int v : x)
    if (!y.is_subset_of(g.neighbors(v))) return false;
  return true;
}

bool is_anticomplete_to(const Graph& g, const VertexSet& x, const VertexSet& y) {
  for (int v : x)
    if (g.neighbors(v).intersects(y)) return false;
  return true;
}

SetRelation set_relation(const Graph& g, const VertexSet& x, const VertexSet& y) {
  if (x.intersects(y)) throw InvalidInput("set_relation requires disjoint sets");
  if (is_anticomplete_to(g, x, y)) return SetRelation::anticomplete;
  if (is_complete_to(g, x, y)) return SetRelation::complete;
  return SetRelation::mixed;
}

bool is_stable_set(const Graph& g, const VertexSet& x) {
  for (int v : x)
    if (g.neighbors(v).intersects(x)) return false;
  return true;
}

bool is_clique(const Graph& g, const VertexSet& x) {
  for (int v : x) {
    auto others = x;
    others.erase(v);
    if (!others.is_subset_of(g.neighbors(v))) return false;
  }
  return true;
}

LineGraph line_graph(const Graph& g) {
  LineGraph out;
  out.vertex_edge = g.edges();
  const int m = static_cast<int>(out.vertex_edge.size());
  // Edges incident to each vertex, by line-graph index.
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(g.order()));
  for (int i = 0; i < m; ++i) {
    incident[static_cast<std::size_t>(out.vertex_edge[static_cast<std::size_t>(i)].first)].push_back(i);
    incident[static_cast<std::size_t>(out.vertex_edge[static_cast<std::size_t>(i)].second)].push_back(i);
  }
  std::vector<Edge> edges;
  for (const auto& around : incident)
    for (std::size_t a = 0; a < around.size(); ++a)
      for (std::size_t b = a + 1; b < around.size(); ++b) edges.push_back(make_edge(around[a], around[b]));
  out.graph = Graph(m, edges);
  return out;
}

Graph subdivide(const Graph& g, const std::map<Edge, int>& times) {
  for (const auto& [e, k] : times) {
    if (e.first == e.second || !g.valid_vertex(e.first) || !g.valid_vertex(e.second) ||
        !g.adjacent(e.first, e.second))
      throw InvalidInput("subdivision key {" + std::to_string(e.first) + "," + std::to_string(e.second) +
                         "} is not an edge");
    if (k < 0) throw InvalidInput("negative subdivision count");
  }
  GraphBuilder b(g.order());
  for (auto [u, v] : g.edges()) {
    auto it = times.find(Edge{u, v});
    int k = it == times.end() ? 0 : it->second;
    int prev = u;
    for (int i = 0; i < k; ++i) {
      int w = b.add_vertex();
      b.add_edge(prev, w);
      prev = w;
    }
    b.add_edge(prev, v);
  }
  return b.build();
}

Graph complement(const Graph& g) {
  std::vector<Edge> edges;
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v)
      if (!g.adjacent(u, v)) edges.emplace_back(u, v);
  return Graph(g.order(), edges);
}

std::vector<int> bfs_distances(const Graph& g, int source, const VertexSet& within) {
  std::vector<int> dist(static_cast<std::size_t>(g.order()), -1);
  if (!within.contains(source)) return dist;
  std::deque<int> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : g.neighbors(u) & within) {
      if (dist[static_cast<std::size_t>(v)] != -1) continue;
      dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  if (g.order() == 0) return true;
  auto dist = bfs_distances(g, 0, g.all());
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

bool is_bipartite(const Graph& g) {
  std::vector<int> side(static_cast<std::size_t>(g.order()), -1);
  for (int s = 0; s < g.order(); ++s) {
    if (side[static_cast<std::size_t>(s)] != -1) continue;
    side[static_cast<std::size_t>(s)] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v : g.neighbors(u)) {
        auto& sv = side[static_cast<std::size_t>(v)];
        if (sv == -1) {
          sv = 1 - side[static_cast<std::size_t>(u)];
          queue.push_back(v);
        } else if (sv == side[static_cast<std::size_t>(u)]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace obslab
