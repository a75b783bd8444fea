#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "obslab/graph.hpp"

namespace obslab {

// Canonical labelling by individualisation-refinement with automorphism
// pruning. `order[i]` is the original vertex placed at canonical position i;
// `certificate` packs the upper triangle of the relabelled adjacency matrix.
// Two graphs are isomorphic iff their certificates (and orders) are equal.
struct CanonicalForm {
  int n = 0;
  std::vector<int> order;
  std::vector<std::uint64_t> certificate;

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.n == b.n && a.certificate == b.certificate;
  }
};

// Exhaustive canonicalisation is exponential in the worst case; the guard
// applies to the vertex count.
CanonicalForm canonical_form(const Graph& g, int guard = 24);

Graph canonical_graph(const Graph& g);
Graph graph_from_certificate(int n, const std::vector<std::uint64_t>& certificate);

bool are_isomorphic(const Graph& a, const Graph& b);

struct CertificateHash {
  std::size_t operator()(const std::vector<std::uint64_t>& c) const noexcept;
};

// Visits one representative per isomorphism class of graphs on exactly n
// vertices that satisfy the hereditary predicate `keep` (pass nullptr for
// all graphs). Built by canonical augmentation level by level, so `keep`
// must be closed under vertex deletion for the enumeration to be complete.
// When `cap_per_level` is set and a level grows beyond it, a seeded sample
// of that size is carried forward instead (the walk is then a sample, and
// `EnumerationStats::exhaustive` reports false).
struct EnumerationStats {
  std::vector<long long> per_level;  // classes found on 0..n vertices
  bool exhaustive = true;
};

EnumerationStats enumerate_graphs(int n, const std::function<bool(const Graph&)>& keep,
                                  const std::function<void(const Graph&)>& visit,
                                  std::optional<std::size_t> cap_per_level = std::nullopt,
                                  std::uint64_t seed = 0);

}  // namespace obslab
