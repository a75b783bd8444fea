#include "obslab/generators.hpp"

#include <algorithm>
#include <unordered_set>

#include "obslab/canonical.hpp"
#include "obslab/error.hpp"
#include "obslab/rng.hpp"

namespace obslab {

Graph complete(int n) {
  if (n < 1) throw InvalidInput("complete(n) needs n >= 1");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

Graph complete_bipartite(int s, int t) {
  if (s < 1 || t < 1) throw InvalidInput("complete_bipartite needs positive sides");
  std::vector<Edge> e;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < t; ++j) e.emplace_back(i, s + j);
  return Graph(s + t, e);
}

Graph cycle(int n) {
  if (n < 3) throw InvalidInput("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back(make_edge(i, (i + 1) % n));
  return Graph(n, e);
}

Graph path_graph(int n) {
  if (n < 0) throw InvalidInput("path needs n >= 0");
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph brick_wall(int rows, int cols) {
  if (rows < 1 || cols < 1) throw InvalidInput("brick_wall needs a non-empty grid");
  auto id = [cols](int i, int j) { return i * cols + j; };
  std::vector<Edge> e;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      if (j + 1 < cols) e.emplace_back(id(i, j), id(i, j + 1));
      if (i + 1 < rows && (i + j) % 2 == 0) e.emplace_back(id(i, j), id(i + 1, j));
    }
  Graph g(rows * cols, e);
  VertexSet keep = g.all();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v : keep) {
      if ((g.neighbors(v) & keep).size() <= 1) {
        keep.erase(v);
        changed = true;
      }
    }
  }
  return induced_subgraph(g, keep).graph;
}

std::pair<int, int> wall_grid(int t) {
  if (t < 1) throw InvalidInput("wall needs t >= 1");
  if (t == 1) return {2, 4};
  return {t, 2 * t};
}

Graph wall(WallSpec spec) {
  auto [rows, cols] = wall_grid(spec.t);
  return brick_wall(rows, cols);
}

ObstructionKind obstruction_kind_from_string(const std::string& s) {
  if (s == "complete") return ObstructionKind::complete;
  if (s == "biclique") return ObstructionKind::biclique;
  if (s == "wall") return ObstructionKind::wall;
  if (s == "line_of_wall" || s == "line-of-wall") return ObstructionKind::line_of_wall;
  throw InvalidInput("unknown obstruction kind \"" + s + "\"");
}

std::string to_string(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::complete:
      return "complete";
    case ObstructionKind::biclique:
      return "biclique";
    case ObstructionKind::wall:
      return "wall";
    case ObstructionKind::line_of_wall:
      return "line_of_wall";
  }
  return "?";
}

std::map<Edge, int> subdivision_counts(const Graph& g, std::uint64_t seed) {
  Rng rng(seed);
  std::map<Edge, int> out;
  for (auto e : g.edges()) out[e] = 1 + static_cast<int>(rng.below(2));
  return out;
}

Graph basic_obstruction(int t, ObstructionKind kind, std::uint64_t subdivision_seed) {
  if (t < 1) throw InvalidInput("basic obstruction needs t >= 1");
  switch (kind) {
    case ObstructionKind::complete:
      return complete(t + 1);
    case ObstructionKind::biclique:
      return complete_bipartite(t, t);
    case ObstructionKind::wall: {
      Graph w = wall({t});
      return subdivide(w, subdivision_counts(w, subdivision_seed));
    }
    case ObstructionKind::line_of_wall: {
      Graph w = wall({t});
      return line_graph(subdivide(w, subdivision_counts(w, subdivision_seed))).graph;
    }
  }
  throw InvalidInput("unknown obstruction kind");
}

Graph cone(const Graph& f) {
  auto edges = f.edges();
  for (int v = 0; v < f.order(); ++v) edges.emplace_back(v, f.order());
  return Graph(f.order() + 1, edges);
}

long long tree_T_order(int d, int r) {
  if (d < 1 || r < 0) throw InvalidInput("T_{d,r} needs d >= 1 and r >= 0");
  long long total = 1, layer = 1;
  for (int i = 0; i < r; ++i) {
    layer *= d;
    total += layer;
  }
  return total;
}

RootedTree tree_T(int d, int r) {
  const long long order = tree_T_order(d, r);
  if (order > 1'000'000) throw ScaleLimit("tree_T", static_cast<int>(std::min<long long>(order, 1 << 30)), 1'000'000);
  RootedTree out;
  out.parent.push_back(-1);
  out.level.push_back(0);
  std::vector<Edge> e;
  std::vector<int> frontier{0};
  for (int depth = 1; depth <= r; ++depth) {
    std::vector<int> next;
    for (int u : frontier)
      for (int k = 0; k < d; ++k) {
        int v = static_cast<int>(out.parent.size());
        out.parent.push_back(u);
        out.level.push_back(depth);
        e.emplace_back(u, v);
        next.push_back(v);
      }
    frontier = std::move(next);
  }
  out.graph = Graph(static_cast<int>(out.parent.size()), e);
  return out;
}

DoubleStar double_star(int a, int b) {
  if (a < 1 || b < 1) throw InvalidInput("double star needs positive leaf counts");
  std::vector<Edge> e{{0, 1}};
  for (int i = 0; i < a; ++i) e.emplace_back(0, 2 + i);
  for (int i = 0; i < b; ++i) e.emplace_back(1, 2 + a + i);
  return {Graph(2 + a + b, e), {0, 1}};
}

Graph crystal_graph(const CrystalSpec& spec) {
  if (spec.arms.empty()) throw InvalidInput("crystal spec needs at least one double star");
  GraphBuilder b(2);
  b.add_edge(0, 1);
  for (auto [a, bb] : spec.arms) {
    if (a < 1 || bb < 1) throw InvalidInput("crystal arms need positive leaf counts");
    int apex = b.add_vertex();
    b.add_edge(apex, 0);
    b.add_edge(apex, 1);
    for (int side = 0; side < 2; ++side)
      for (int i = 0; i < (side == 0 ? a : bb); ++i) {
        int leaf = b.add_vertex();
        b.add_edge(leaf, side);
        b.add_edge(leaf, apex);
      }
  }
  return b.build();
}

Graph k_tree_random(int k, int n, std::uint64_t seed) {
  if (k < 1 || n < k) throw InvalidInput("k_tree_random needs n >= k >= 1");
  Rng rng(seed);
  GraphBuilder b(k);
  std::vector<std::vector<int>> cliques(1);
  for (int v = 0; v < k; ++v) {
    cliques[0].push_back(v);
    for (int u = 0; u < v; ++u) b.add_edge(u, v);
  }
  for (int v = k; v < n; ++v) {
    b.add_vertex();
    const auto chosen = cliques[rng.below(cliques.size())];
    for (int u : chosen) b.add_edge(u, v);
    for (std::size_t drop = 0; drop < chosen.size(); ++drop) {
      auto c = chosen;
      c[drop] = v;
      std::sort(c.begin(), c.end());
      cliques.push_back(std::move(c));
    }
  }
  return b.build();
}

namespace {

void k_cliques(const Graph& g, int k, std::vector<int>& current, VertexSet candidates,
               std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == k) {
    out.push_back(current);
    return;
  }
  for (int v : candidates) {
    current.push_back(v);
    VertexSet next = candidates & g.neighbors(v);
    for (int u = next.first(); u != -1 && u <= v; u = next.first()) next.erase(u);
    k_cliques(g, k, current, next, out);
    current.pop_back();
  }
}

}  // namespace

void k_tree_enumerate(int k, int n, const std::function<void(const Graph&)>& visit) {
  if (k < 1 || n < k) throw InvalidInput("k_tree_enumerate needs n >= k >= 1");
  std::vector<Graph> level{complete(k)};
  for (int m = k + 1; m <= n; ++m) {
    const bool dedupe = m <= 12;
    const bool last = m == n;
    std::unordered_set<std::vector<std::uint64_t>, CertificateHash> seen;
    std::vector<Graph> next;
    for (const auto& g : level) {
      std::vector<std::vector<int>> cliques;
      std::vector<int> current;
      k_cliques(g, k, current, g.all(), cliques);
      for (const auto& c : cliques) {
        auto edges = g.edges();
        for (int u : c) edges.emplace_back(u, m - 1);
        Graph child(m, edges);
        if (dedupe && !seen.insert(canonical_form(child, 64).certificate).second) continue;
        if (last)
          visit(child);
        else
          next.push_back(std::move(child));
      }
    }
    level = std::move(next);
  }
  if (n == k) visit(complete(k));
}

Graph grow_random_graph(int n, double p, std::uint64_t seed, const std::function<bool(const Graph&)>& keep,
                        int attempts) {
  if (n < 0 || p < 0.0 || p > 1.0 || attempts < 1) throw InvalidInput("grow_random_graph needs n >= 0, p in [0, 1]");
  Rng rng(seed);
  GraphBuilder b(0);
  while (b.order() < n) {
    bool placed = false;
    for (int attempt = 0; attempt < attempts && !placed; ++attempt) {
      GraphBuilder trial = b;
      const int v = trial.add_vertex();
      for (int u = 0; u < v; ++u)
        if (rng.bernoulli(p)) trial.add_edge(u, v);
      if (!keep || keep(trial.build())) {
        b = std::move(trial);
        placed = true;
      }
    }
    if (placed) continue;
    GraphBuilder lonely = b;
    lonely.add_vertex();
    if (keep && !keep(lonely.build())) break;
    b = std::move(lonely);
  }
  return b.build();
}

PlantedPhantom plant_phantom(const Graph& base, int d, int r, std::uint64_t seed, PhantomDensity density,
                             const std::optional<std::vector<Edge>>& coned_edges) {
  if (d < 1 || r < 0) throw InvalidInput("plant_phantom needs d >= 1 and r >= 0");
  Rng rng(seed);
  GraphBuilder b(base.order());
  for (auto [u, v] : base.edges()) b.add_edge(u, v);
  // Layer membership and Gamma sets are recorded as index lists first, since
  // the final vertex count is not known until the end.
  std::vector<std::vector<int>> layers(1);
  for (int v = 0; v < base.order(); ++v) layers[0].push_back(v);
  std::vector<std::map<Edge, std::vector<int>>> gamma;
  for (int i = 1; i <= r; ++i) {
    const auto& prev = layers.back();
    std::vector<Edge> domain;
    for (std::size_t a = 0; a < prev.size(); ++a)
      for (std::size_t c = a + 1; c < prev.size(); ++c)
        if (b.adjacent(prev[a], prev[c])) domain.push_back(make_edge(prev[a], prev[c]));
    std::sort(domain.begin(), domain.end());
    std::map<Edge, std::vector<int>> level;
    std::vector<int> layer = prev;
    for (auto e : domain) {
      auto& s = level[e];
      for (int k = 0; k < d; ++k) {
        int v = b.add_vertex();
        b.add_edge(v, e.first);
        b.add_edge(v, e.second);
        s.push_back(v);
        layer.push_back(v);
      }
    }
    if (i == 1 && density == PhantomDensity::coned) {
      std::vector<Edge> chosen;
      if (coned_edges) {
        for (auto e : *coned_edges) {
          auto key = make_edge(e.first, e.second);
          if (!level.count(key)) throw InvalidInput("coned edge is not an edge of the base graph");
          chosen.push_back(key);
        }
      } else {
        for (auto e : domain)
          if (rng.bernoulli(0.5)) chosen.push_back(e);
      }
      for (auto e : chosen)
        for (int w : prev)
          if (w != e.first && w != e.second && b.adjacent(w, e.first) && b.adjacent(w, e.second))
            for (int x : level[e]) b.add_edge(w, x);
    }
    gamma.push_back(std::move(level));
    layers.push_back(std::move(layer));
  }
  PlantedPhantom out;
  out.graph = b.build();
  const int n = out.graph.order();
  out.phantom.d = d;
  for (const auto& layer : layers) out.phantom.layers.push_back(VertexSet(n, std::span<const int>(layer)));
  for (const auto& level : gamma) {
    std::map<Edge, VertexSet> m;
    for (const auto& [e, s] : level) m.emplace(e, VertexSet(n, std::span<const int>(s)));
    out.phantom.gamma.push_back(std::move(m));
  }
  return out;
}

PlantedCrystal plant_crystal(int f, int g, std::optional<std::uint64_t> noise_seed, int max_noise_edges) {
  if (f < 1 || g < 1) throw InvalidInput("plant_crystal needs f, g >= 1");
  if (max_noise_edges < 1) throw InvalidInput("max_noise_edges must be positive");
  CrystalSpec spec;
  spec.arms.assign(static_cast<std::size_t>(f), {g, g});
  Graph clean = crystal_graph(spec);
  PlantedCrystal out;
  out.crystal.z1 = 0;
  out.crystal.z2 = 1;
  int next = 2;
  for (int i = 0; i < f; ++i) {
    CrystalCenter c;
    c.z = next++;
    for (int k = 0; k < g; ++k) c.s1.push_back(next++);
    for (int k = 0; k < g; ++k) c.s2.push_back(next++);
    out.crystal.centers.push_back(std::move(c));
  }
  if (!noise_seed) {
    out.graph = std::move(clean);
    return out;
  }
  Rng rng(*noise_seed);
  GraphBuilder b(clean.order());
  for (auto [u, v] : clean.edges()) b.add_edge(u, v);
  std::vector<std::vector<int>> sides;
  for (const auto& c : out.crystal.centers) {
    sides.push_back(c.s1);
    sides.push_back(c.s2);
  }
  if (g >= 2) {
    const auto& side = sides[rng.below(sides.size())];
    int a = static_cast<int>(rng.below(side.size()));
    int c = static_cast<int>(rng.below(side.size() - 1));
    if (c >= a) ++c;
    b.add_edge(side[a], side[c]);
  } else {
    int a = static_cast<int>(rng.below(sides.size()));
    int c = static_cast<int>(rng.below(sides.size() - 1));
    if (c >= a) ++c;
    b.add_edge(sides[a][0], sides[c][0]);
  }
  const int extra = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_noise_edges)));
  std::vector<Edge> eligible;
  for (int u = 2; u < clean.order(); ++u)
    for (int v = u + 1; v < clean.order(); ++v)
      if (!b.adjacent(u, v)) eligible.emplace_back(u, v);
  for (int k = 0; k < extra && !eligible.empty(); ++k) {
    auto at = rng.below(eligible.size());
    b.add_edge(eligible[at].first, eligible[at].second);
    eligible.erase(eligible.begin() + static_cast<std::ptrdiff_t>(at));
  }
  out.graph = b.build();
  return out;
}

}  // namespace obslab
