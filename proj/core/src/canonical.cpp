#include "obslab/canonical.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_set>

#include "obslab/error.hpp"
#include "obslab/rng.hpp"

namespace obslab {

namespace {

using Mask = std::uint64_t;
using Cells = std::vector<std::vector<int>>;

Mask cell_mask(const std::vector<int>& cell) {
  Mask m = 0;
  for (int v : cell) m |= Mask{1} << v;
  return m;
}

// Equitable refinement: split cells until every vertex of a cell has the same
// number of neighbours in every cell. New pieces are ordered by that count.
void refine(const std::vector<Mask>& adj, Cells& cells) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < cells.size() && !changed; ++s) {
      const Mask splitter = cell_mask(cells[s]);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        auto& cell = cells[c];
        if (cell.size() < 2) continue;
        std::vector<std::pair<int, int>> keyed;
        keyed.reserve(cell.size());
        for (int v : cell) keyed.emplace_back(std::popcount(adj[v] & splitter), v);
        std::sort(keyed.begin(), keyed.end());
        if (keyed.front().first == keyed.back().first) continue;
        Cells pieces;
        for (std::size_t i = 0; i < keyed.size(); ++i) {
          if (i == 0 || keyed[i].first != keyed[i - 1].first) pieces.emplace_back();
          pieces.back().push_back(keyed[i].second);
        }
        cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(c));
        cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(c), pieces.begin(), pieces.end());
        changed = true;
        break;
      }
    }
  }
}

std::vector<std::uint64_t> certificate_of(const std::vector<Mask>& adj, const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  std::vector<std::uint64_t> cert(static_cast<std::size_t>((n * (n - 1) / 2 + 63) / 64), 0);
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if (adj[order[i]] >> order[j] & 1) cert[bit >> 6] |= std::uint64_t{1} << (bit & 63);
  return cert;
}

struct Search {
  const std::vector<Mask>& adj;
  int n;
  std::vector<int> best_order;
  std::vector<std::uint64_t> best_cert;
  bool have_best = false;
  std::vector<std::vector<int>> generators;  // automorphisms as vertex maps

  int find(std::vector<int>& parent, int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }

  // Orbit representative of each vertex under the generators that fix `prefix`.
  std::vector<int> orbits(const std::vector<int>& prefix) {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& g : generators) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int v) { return g[v] == v; });
      if (!fixes) continue;
      for (int v = 0; v < n; ++v) {
        int a = find(parent, v), b = find(parent, g[v]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (int v = 0; v < n; ++v) parent[v] = find(parent, v);
    return parent;
  }

  void leaf(const Cells& cells) {
    std::vector<int> order;
    order.reserve(n);
    for (const auto& c : cells) order.push_back(c.front());
    auto cert = certificate_of(adj, order);
    if (!have_best || cert > best_cert) {
      best_cert = std::move(cert);
      best_order = std::move(order);
      have_best = true;
    } else if (cert == best_cert) {
      std::vector<int> g(n);
      for (int i = 0; i < n; ++i) g[best_order[i]] = order[i];
      generators.push_back(std::move(g));
    }
  }

  void run(Cells cells, std::vector<int>& prefix) {
    refine(adj, cells);
    auto target = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; });
    if (target == cells.end()) {
      leaf(cells);
      return;
    }
    const auto t = static_cast<std::size_t>(target - cells.begin());
    const std::vector<int> members = cells[t];
    std::vector<int> tried;
    for (int v : members) {
      if (!tried.empty()) {
        auto orb = orbits(prefix);
        if (std::any_of(tried.begin(), tried.end(), [&](int w) { return orb[w] == orb[v]; })) continue;
      }
      tried.push_back(v);
      Cells child = cells;
      std::vector<int> rest;
      for (int u : members)
        if (u != v) rest.push_back(u);
      child[t] = {v};
      child.insert(child.begin() + static_cast<std::ptrdiff_t>(t) + 1, rest);
      prefix.push_back(v);
      run(std::move(child), prefix);
      prefix.pop_back();
    }
  }
};

}  // namespace

CanonicalForm canonical_form(const Graph& g, int guard) {
  const int n = g.order();
  if (n > std::min(guard, 64)) throw ScaleLimit("canonical_form", n, std::min(guard, 64));
  std::vector<Mask> adj(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u : g.neighbors(v)) adj[v] |= Mask{1} << u;
  CanonicalForm out;
  out.n = n;
  if (n == 0) return out;
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  Search s{adj, n, {}, {}, false, {}};
  std::vector<int> prefix;
  s.run(Cells{all}, prefix);
  out.order = std::move(s.best_order);
  out.certificate = std::move(s.best_cert);
  return out;
}

Graph graph_from_certificate(int n, const std::vector<std::uint64_t>& certificate) {
  std::vector<Edge> edges;
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if (certificate[bit >> 6] >> (bit & 63) & 1) edges.emplace_back(i, j);
  return Graph(n, edges);
}

Graph canonical_graph(const Graph& g) {
  auto cf = canonical_form(g, 64);
  return graph_from_certificate(cf.n, cf.certificate);
}

bool are_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  return canonical_form(a, 64) == canonical_form(b, 64);
}

std::size_t CertificateHash::operator()(const std::vector<std::uint64_t>& c) const noexcept {
  std::uint64_t h = 0x84222325cbf29ce4ULL;
  for (auto w : c) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

EnumerationStats enumerate_graphs(int n, const std::function<bool(const Graph&)>& keep,
                                  const std::function<void(const Graph&)>& visit,
                                  std::optional<std::size_t> cap_per_level, std::uint64_t seed) {
  if (n < 0) throw InvalidInput("negative vertex count");
  if (n > 16) throw ScaleLimit("enumerate_graphs", n, 16);
  EnumerationStats stats;
  Rng rng(seed);
  std::vector<std::vector<std::uint64_t>> level{{}};  // the empty graph
  stats.per_level.push_back(1);
  if (keep && !keep(Graph(0))) level.clear(), stats.per_level.back() = 0;
  for (int k = 1; k <= n; ++k) {
    std::unordered_set<std::vector<std::uint64_t>, CertificateHash> seen;
    std::vector<std::vector<std::uint64_t>> next;
    for (const auto& cert : level) {
      Graph parent = graph_from_certificate(k - 1, cert);
      auto edges = parent.edges();
      for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << (k - 1)); ++subset) {
        std::vector<Edge> grown = edges;
        for (int v = 0; v < k - 1; ++v)
          if (subset >> v & 1) grown.emplace_back(v, k - 1);
        Graph child(k, grown);
        auto cf = canonical_form(child, 64);
        if (seen.count(cf.certificate)) continue;
        if (keep && !keep(child)) {
          seen.insert(std::move(cf.certificate));
          continue;
        }
        next.push_back(cf.certificate);
        seen.insert(std::move(cf.certificate));
      }
    }
    stats.per_level.push_back(static_cast<long long>(next.size()));
    if (cap_per_level && next.size() > *cap_per_level && k < n) {
      rng.shuffle(next);
      next.resize(*cap_per_level);
      stats.exhaustive = false;
    }
    level = std::move(next);
  }
  if (visit)
    for (const auto& cert : level) visit(graph_from_certificate(n, cert));
  return stats;
}

}  // namespace obslab
