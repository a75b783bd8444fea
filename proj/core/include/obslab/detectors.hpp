#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "obslab/graph.hpp"
#include "obslab/structures.hpp"

namespace obslab {

// A found structure. `vertices` is sorted; `roles` names the parts, e.g.
// "cycle" (in cyclic order), "ends", "path0", "hub", "rim", "image".
struct Witness {
  std::string kind;
  std::vector<int> vertices;
  std::map<std::string, std::vector<int>> roles;
};

nlohmann::ordered_json to_json(const std::optional<Witness>& w);

// Exhaustive searches refuse graphs with more than `guard` vertices.
struct DetectorOptions {
  int guard = 64;
};

// Shortest hole, or nullopt when the graph is chordal. Polynomial; no guard.
std::optional<Witness> find_hole(const Graph& g);

struct ChordalResult {
  bool chordal = false;
  std::vector<int> elimination_order;  // perfect elimination order when chordal
  std::optional<Witness> hole;         // shortest hole otherwise
};

ChordalResult is_chordal(const Graph& g);

// Calls `visit` with every hole (cyclic order, smallest vertex first, second
// vertex smaller than the last) of length in [min_length, max_length], shortest
// first. Stops early when `visit` returns false.
void for_each_hole(const Graph& g, int min_length, int max_length,
                   const std::function<bool(const std::vector<int>&)>& visit,
                   const DetectorOptions& opts = {});

std::optional<Witness> find_even_hole(const Graph& g, const DetectorOptions& opts = {});
std::optional<Witness> find_theta(const Graph& g, const DetectorOptions& opts = {});
std::optional<Witness> find_prism(const Graph& g, const DetectorOptions& opts = {});
std::optional<Witness> find_even_wheel(const Graph& g, const DetectorOptions& opts = {});

// c-clique (exactly c vertices), lexicographically first.
std::optional<Witness> find_clique(const Graph& g, int c, const DetectorOptions& opts = {});
std::optional<Witness> find_stable_set(const Graph& g, int s, const DetectorOptions& opts = {});
int clique_number(const Graph& g, const DetectorOptions& opts = {});
// Induced K_{s,t}: stable sides A (|A| = s) and B (|B| = t), complete to each other.
std::optional<Witness> find_induced_biclique(const Graph& g, int s, int t, const DetectorOptions& opts = {});

struct Membership {
  bool member = false;
  std::optional<Witness> witness;  // first obstruction found when not a member
};

// Checks K_{2,2}, theta, prism, even wheel and then K_t in that order; t unset
// means the class E without a clique bound.
Membership membership_E_t(const Graph& g, std::optional<int> t, const DetectorOptions& opts = {});

bool is_k_tree(const Graph& h, int k);
bool is_k_forest(const Graph& h, int k);

// Induced copy of H: image[i] is the vertex of G playing vertex i of H.
std::optional<std::vector<int>> contains_induced(const Graph& g, const Graph& h, const DetectorOptions& opts = {});

enum class RamseyOutcome { clique, stable, neither };

struct RamseyResult {
  RamseyOutcome outcome = RamseyOutcome::neither;
  std::optional<Witness> witness;
};

// A c-clique, else a stable s-set. Throws std::logic_error if neither exists
// on a graph with at least c^s vertices.
RamseyResult find_clique_or_stable(const Graph& g, int c, int s, const DetectorOptions& opts = {});

// Indices of q pairwise anticomplete sets, smallest-index-first. The sets
// must be pairwise disjoint (InvalidInput otherwise).
std::optional<std::vector<int>> anticomplete_family(const Graph& g, const std::vector<VertexSet>& sets, int q);

enum class TournamentOutcome { tournament, stable, neither };

struct TournamentResult {
  TournamentOutcome outcome = TournamentOutcome::neither;
  std::vector<int> vertices;  // tournament in topological order, or the stable set
};

// c vertices v_1..v_c with an arc (v_i, v_j) for all i < j, else s vertices
// spanning no arc. Throws std::logic_error if neither exists on at least
// c^(c^s) vertices.
TournamentResult acyclic_tournament_or_stable(const Digraph& d, int c, int s, const DetectorOptions& opts = {});

// Independent structural checks of witnesses on the induced subgraph.
bool is_hole(const Graph& g, const std::vector<int>& cycle);
bool is_theta(const Graph& g, const std::vector<int>& vertices);
bool is_prism(const Graph& g, const std::vector<int>& vertices);
bool is_even_wheel(const Graph& g, const std::vector<int>& vertices);
// Dispatches on witness kind.
bool witness_is_valid(const Graph& g, const Witness& w);

}  // namespace obslab
