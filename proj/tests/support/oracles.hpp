#pragma once

// Brute-force reference implementations used to cross-check the library.
// Everything here works on subsets and permutations directly and is only
// meant for graphs with a handful of vertices.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "obslab/canonical.hpp"
#include "obslab/graph.hpp"
#include "obslab/rng.hpp"

namespace oracle {

using obslab::Edge;
using obslab::Graph;

inline Graph random_graph(int n, double p, std::uint64_t seed) {
  obslab::Rng rng(seed);
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) e.emplace_back(i, j);
  return Graph(n, e);
}

inline std::vector<int> members(std::uint32_t mask) {
  std::vector<int> out;
  for (int v = 0; mask; ++v, mask >>= 1)
    if (mask & 1u) out.push_back(v);
  return out;
}

inline Graph induced(const Graph& g, std::uint32_t mask) {
  auto vs = members(mask);
  std::vector<Edge> e;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (g.adjacent(vs[i], vs[j])) e.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return Graph(static_cast<int>(vs.size()), e);
}

inline bool connected(const Graph& g) {
  if (g.order() == 0) return true;
  std::vector<int> stack{0};
  std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < g.order(); ++v)
      if (g.adjacent(u, v) && !seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        ++count;
        stack.push_back(v);
      }
  }
  return count == g.order();
}

inline bool is_cycle_graph(const Graph& h) {
  if (h.order() < 4) return false;
  for (int v = 0; v < h.order(); ++v)
    if (h.degree(v) != 2) return false;
  return connected(h);
}

// Theta with paths of l1, l2, l3 edges between vertices 0 and 1.
inline Graph theta(int l1, int l2, int l3) {
  std::vector<Edge> e;
  int next = 2;
  for (int len : {l1, l2, l3}) {
    int prev = 0;
    for (int i = 1; i < len; ++i) {
      e.push_back(obslab::make_edge(prev, next));
      prev = next++;
    }
    e.push_back(obslab::make_edge(prev, 1));
  }
  return Graph(next, e);
}

inline Graph line_of(const Graph& g) {
  std::vector<Edge> es = g.edges();
  std::vector<Edge> out;
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      auto [a, b] = es[i];
      auto [c, d] = es[j];
      if (a == c || a == d || b == c || b == d) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  return Graph(static_cast<int>(es.size()), out);
}

// All thetas (or prisms) on exactly k vertices, one per path-length triple.
inline std::vector<Graph> theta_shapes(int k) {
  std::vector<Graph> out;
  for (int a = 2; a <= k; ++a)
    for (int b = a; b <= k; ++b)
      for (int c = b; c <= k; ++c)
        if (2 + (a - 1) + (b - 1) + (c - 1) == k) out.push_back(theta(a, b, c));
  return out;
}

inline std::vector<Graph> prism_shapes(int k) {
  std::vector<Graph> out;
  for (int a = 2; a <= k; ++a)
    for (int b = a; b <= k; ++b)
      for (int c = b; c <= k; ++c)
        if (a + b + c == k) out.push_back(line_of(theta(a, b, c)));
  return out;
}

inline bool iso_to_any(const Graph& h, const std::vector<Graph>& shapes) {
  return std::any_of(shapes.begin(), shapes.end(), [&](const Graph& s) { return obslab::are_isomorphic(h, s); });
}

inline bool is_even_wheel_graph(const Graph& h) {
  for (int hub = 0; hub < h.order(); ++hub) {
    std::uint32_t rest = ((1u << h.order()) - 1) & ~(1u << hub);
    if (!is_cycle_graph(induced(h, rest))) continue;
    int k = h.degree(hub);
    if (k >= 4 && k % 2 == 0) return true;
  }
  return false;
}

struct Census {
  int shortest_hole = 0;  // 0 when chordal
  int shortest_even_hole = 0;
  bool theta = false;
  bool prism = false;
  bool even_wheel = false;
  bool k22 = false;
  int clique_number = 0;
  int stability_number = 0;
};

inline Census census(const Graph& g) {
  const int n = g.order();
  Census c;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const int k = __builtin_popcount(mask);
    Graph h = induced(g, mask);
    const int m = static_cast<int>(h.edges().size());
    if (m == k * (k - 1) / 2) c.clique_number = std::max(c.clique_number, k);
    if (m == 0) c.stability_number = std::max(c.stability_number, k);
    if (k < 4) continue;
    if (m == k && is_cycle_graph(h)) {
      if (c.shortest_hole == 0 || k < c.shortest_hole) c.shortest_hole = k;
      if (k % 2 == 0 && (c.shortest_even_hole == 0 || k < c.shortest_even_hole)) c.shortest_even_hole = k;
      if (k == 4) c.k22 = true;
    }
    if (m == k + 1 && !c.theta && iso_to_any(h, theta_shapes(k))) c.theta = true;
    if (k >= 6 && m == k + 3 && !c.prism && iso_to_any(h, prism_shapes(k))) c.prism = true;
    if (k >= 5 && !c.even_wheel && is_even_wheel_graph(h)) c.even_wheel = true;
  }
  return c;
}

// Induced copy by trying every injective map.
inline bool contains_induced(const Graph& g, const Graph& h) {
  const int n = g.order(), k = h.order();
  if (k > n) return false;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    auto vs = members(mask);
    do {
      bool ok = true;
      for (int i = 0; i < k && ok; ++i)
        for (int j = i + 1; j < k && ok; ++j)
          ok = g.adjacent(vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>(j)]) == h.adjacent(i, j);
      if (ok) return true;
    } while (std::next_permutation(vs.begin(), vs.end()));
  }
  return false;
}

// Treewidth by the elimination-set recurrence
// TW(S) = min_{v in S} max(TW(S - v), |Q(S - v, v)|).
inline int treewidth(const Graph& g) {
  const int n = g.order();
  if (n == 0) return 0;
  const std::uint32_t full = (1u << n) - 1;
  auto q = [&](std::uint32_t s, int v) {
    // Vertices outside S and v reachable from v through S.
    std::uint32_t seen = 1u << v, frontier = 1u << v, out = 0;
    while (frontier) {
      int u = __builtin_ctz(frontier);
      frontier &= frontier - 1;
      for (int w = 0; w < n; ++w) {
        if (!g.adjacent(u, w) || (seen >> w & 1u)) continue;
        seen |= 1u << w;
        if (s >> w & 1u)
          frontier |= 1u << w;
        else
          out |= 1u << w;
      }
    }
    return __builtin_popcount(out);
  };
  std::vector<int> tw(static_cast<std::size_t>(full) + 1, 1 << 20);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s)
    for (int v = 0; v < n; ++v)
      if (s >> v & 1u) {
        std::uint32_t rest = s & ~(1u << v);
        tw[s] = std::min(tw[s], std::max(tw[rest], q(rest, v)));
      }
  return std::max(0, tw[full]);
}

}  // namespace oracle
