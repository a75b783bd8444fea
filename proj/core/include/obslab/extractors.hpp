#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "obslab/detectors.hpp"
#include "obslab/graph.hpp"
#include "obslab/structures.hpp"

namespace obslab {

// One proof step: which step ran, which branch it took and the vertices it
// selected (in selection order).
struct TraceStep {
  std::string step;
  std::string branch;
  std::vector<int> chosen;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

using Trace = std::vector<TraceStep>;

// A proof step ran out of material. `needed` and `available` count the
// candidates at that step; `witness` is set when the shortfall was turned into
// an obstruction (an induced K_{2,2} or a K_t).
struct HypothesisViolation {
  std::string step;
  std::string detail;
  int needed = 0;
  int available = 0;
  std::optional<Witness> witness;
};

// g pairwise disjoint cliques, each complete to Z_0.
struct CliqueFamily {
  std::vector<std::vector<int>> cliques;
};

// A subgraph isomorphic to T_{d,r}. vertices[0] is the root; parent[i] and
// level[i] describe vertices[i] (parent -1 at the root).
struct ConeTree {
  std::vector<int> vertices;
  std::vector<int> parent;
  std::vector<int> level;

  int root() const { return vertices.empty() ? -1 : vertices.front(); }
};

// image[v] is the host vertex playing vertex v of the pattern.
struct Embedding {
  std::vector<int> image;
};

using Payload = std::variant<Crystal, CliqueFamily, ConeTree, Embedding, HypothesisViolation>;

struct ExtractionOutcome {
  Payload payload;
  Trace trace;

  // "crystal", "clique-family", "cone-tree", "embedding" or "hypothesis-violation".
  std::string variant() const;
  bool violated() const { return std::holds_alternative<HypothesisViolation>(payload); }
};

// Every extractor takes an optional trace to replay. In replay mode each
// selection is read from the trace instead of made smallest-index-first; a
// trace that does not fit the run (wrong step, illegal selection, diverging
// branch) raises InvalidInput.

struct CrystallizedVertex {
  CrystallizedCertificate certificate;
  Trace trace;
};

// A crystallized vertex of a 2-tree on at least four vertices, found by
// peeling degree-2 vertices down to a diamond and patching back up.
CrystallizedVertex find_crystallized_vertex(const Graph& nabla);

// nabla minus the side sets of its crystallized vertex: `kept` lists the
// surviving vertices in increasing order, `graph` is the induced subgraph.
struct CrystallizedReduction {
  CrystallizedCertificate certificate;
  std::vector<int> kept;
  Graph graph;
};

CrystallizedReduction reduce_crystallized(const Graph& nabla);

// Clears a crystal down to f centers with sides of size g.
ExtractionOutcome clear_crystal(const Graph& g, const Crystal& c, int f, int g_size,
                                const Trace* replay = nullptr);

// Z_0 must be a 2-clique and p.d = f + g. Outcome is a crystal in G[Z_r] or
// a clique family of g r-cliques complete to Z_0.
ExtractionOutcome phantom_to_crystal(const Graph& g, const Phantom& p, int f, int g_size,
                                     const Trace* replay = nullptr);

// Z_0 = {z1, z2, z} is a triangle in Z with N_Z(z) = {z1, z2}; Z_0 is the
// base of p and Z_r meets Z in Z_0 only.
struct ConeTreeInput {
  VertexSet z_set;
  int z1 = -1;
  int z2 = -1;
  int z = -1;
  int d = 1;
  int g = 1;
  int h = 1;
  int t = 1;
};

// Outcome is a (z1, z2, 1, g)-crystal anticomplete to Z \ Z_0, or a cone tree
// rooted at z.
ExtractionOutcome phantom_to_cone_tree(const Graph& g, const Phantom& p, const ConeTreeInput& in,
                                       const Trace* replay = nullptr);

struct GrowParams {
  int depth = 1;  // phantom levels handed to the cone-tree step
  int d = 1;
  int t = 1;
};

// Extends an embedding of reduce_crystallized(nabla).graph (prime_image[i]
// plays kept[i]) to an embedding of nabla, through the phantom p whose base
// lies between the anchor triangle and the image.
ExtractionOutcome grow_2_tree(const Graph& g, const Graph& nabla, const std::vector<int>& prime_image,
                              const Phantom& p, const GrowParams& params, const Trace* replay = nullptr);

struct BruteForceOptions {
  int guard = 40;
};

// Exhaustive search for any (f, g)-crystal, anchors z1 < z2.
std::optional<Crystal> brute_force_crystal(const Graph& g, int f, int g_size, const BruteForceOptions& opts = {});

// Independent checks of extractor payloads.
Validation validate_clique_family(const Graph& g, const VertexSet& z0, const CliqueFamily& family, int r,
                                  int count);
Validation validate_cone_tree(const Graph& g, const Phantom& p, const ConeTreeInput& in, const ConeTree& tree);

nlohmann::ordered_json to_json(const TraceStep& s);
nlohmann::ordered_json to_json(const HypothesisViolation& v);
nlohmann::ordered_json to_json(const CliqueFamily& f);
nlohmann::ordered_json to_json(const ConeTree& t);
nlohmann::ordered_json to_json(const Embedding& e);
nlohmann::ordered_json to_json(const ExtractionOutcome& o);
Trace trace_from_json(const nlohmann::json& j);

}  // namespace obslab
