#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "obslab/graph.hpp"

namespace obslab {

// First violated clause of a definition, e.g. {"P2", "layer 2 edge 0-3: ..."}.
struct Violation {
  std::string clause;
  std::string detail;
};

// nullopt means valid.
using Validation = std::optional<Violation>;

// (Z_0, ..., Z_r; Gamma_i : i in [r]) inside a host graph. gamma[i-1] holds
// Gamma_i keyed by edges (min, max) of G[Z_{i-1}].
struct Phantom {
  int d = 0;
  std::vector<VertexSet> layers;
  std::vector<std::map<Edge, VertexSet>> gamma;

  int depth() const { return static_cast<int>(layers.size()) - 1; }
  const VertexSet& z(int i) const { return layers.at(static_cast<std::size_t>(i)); }
  // Gamma_i(e) for i in [r]; throws InvalidInput when e is not in the domain.
  const VertexSet& gamma_of(int i, Edge e) const;
};

Validation validate_phantom(const Graph& g, const Phantom& p);

// p[X0; i, r'] built by the layer recursion. Throws InvalidInput unless
// X0 is a subset of Z_i and i + r' <= r.
Phantom sub_phantom(const Graph& g, const Phantom& p, const VertexSet& x0, int i, int r_prime);

struct CrystalCenter {
  int z = -1;
  std::vector<int> s1;  // S_{1,z}, sorted
  std::vector<int> s2;  // S_{2,z}, sorted
};

// (S_{1,z}, z, S_{2,z} : z in S) anchored at the edge z1 z2.
struct Crystal {
  int z1 = -1;
  int z2 = -1;
  std::vector<CrystalCenter> centers;

  int f() const { return static_cast<int>(centers.size()); }
  // Common side size, or -1 when the sides disagree.
  int g() const;
  // V(c): centers and all side vertices.
  std::vector<int> vertices() const;
};

// Throws InvalidInput when z1 z2 is not an edge of g.
Validation validate_crystal(const Graph& g, const Crystal& c);
// Valid, S stable, and the 2f side sets pairwise anticomplete stable sets.
bool is_clear_crystal(const Graph& g, const Crystal& c);

struct CrystalSpec {
  std::vector<std::pair<int, int>> arms;  // (a_i, b_i) per coned double star
  int k() const { return static_cast<int>(arms.size()); }
  friend bool operator==(const CrystalSpec&, const CrystalSpec&) = default;
};

// The spec of the crystal graph induced on {z1, z2} and V(c), when c is clear
// and that induced subgraph really is crystal_graph(spec) under the natural
// correspondence.
std::optional<CrystalSpec> crystal_realizes_graph(const Graph& g, const Crystal& c);

// (a, x, y, W) with every W an x-y path, listed from x to y.
struct Kaleidoscope {
  int a = -1;
  int x = -1;
  int y = -1;
  std::vector<std::vector<int>> paths;
};

Validation validate_kaleidoscope(const Graph& g, const Kaleidoscope& k);
// Whether Z is d-mirrored by k; the violation names the failing clause.
Validation check_mirrored(const Graph& g, const Kaleidoscope& k, const VertexSet& z, int d);
bool is_mirrored(const Graph& g, const Kaleidoscope& k, const VertexSet& z, int d);

struct Contraption {
  Graph graph;
  int merged = -1;              // index of the new vertex z (always last)
  std::vector<int> old_to_new;  // z1 and z2 both map to `merged`
};

// Throws InvalidInput when z1 z2 is not an edge.
Contraption contraption(const Graph& g, int z1, int z2);

// z1 z2 is an edge whose common neighbourhood is a stable set of vertices of
// degree at most 3.
bool contraption_qualifies(const Graph& g, int z1, int z2);

// Certificate for a crystallized vertex z: z1 < z2 when found by search.
struct CrystallizedCertificate {
  int z = -1;
  int z1 = -1;
  int z2 = -1;
  std::vector<int> s1;
  std::vector<int> s2;
};

Validation validate_crystallized(const Graph& h, const CrystallizedCertificate& c);
// Lexicographically least certificate over anchor pairs (z1, z2).
std::optional<CrystallizedCertificate> is_crystallized(const Graph& h, int z);

nlohmann::ordered_json to_json(const Phantom& p);
Phantom phantom_from_json(const Graph& g, const nlohmann::json& j);
nlohmann::ordered_json to_json(const Crystal& c);
Crystal crystal_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const Kaleidoscope& k);
Kaleidoscope kaleidoscope_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const CrystallizedCertificate& c);
nlohmann::ordered_json to_json(const Violation& v);

}  // namespace obslab
