#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "obslab/graph.hpp"
#include "obslab/structures.hpp"

namespace obslab {

Graph complete(int n);
Graph complete_bipartite(int s, int t);
Graph cycle(int n);
Graph path_graph(int n);

// Brick wall cut from the rows x cols grid: keep every horizontal edge, keep
// the vertical edge below (i, j) when i + j is even, then strip vertices of
// degree at most one until none remain.
Graph brick_wall(int rows, int cols);

struct WallSpec {
  int t = 1;
};

// W_{t x t}; see brick_wall for the shape and wall_grid for the grid used.
Graph wall(WallSpec spec);
// Grid dimensions behind wall(t).
std::pair<int, int> wall_grid(int t);

enum class ObstructionKind { complete, biclique, wall, line_of_wall };

ObstructionKind obstruction_kind_from_string(const std::string& s);
std::string to_string(ObstructionKind k);

// Per-edge subdivision counts in {1, 2}, drawn in edge order from the seed.
std::map<Edge, int> subdivision_counts(const Graph& g, std::uint64_t seed);

// K_{t+1}, K_{t,t}, a seeded subdivision of W_{t x t}, or the line graph of
// one.
Graph basic_obstruction(int t, ObstructionKind kind, std::uint64_t subdivision_seed = 0);

// F plus a universal vertex appended last.
Graph cone(const Graph& f);

struct RootedTree {
  Graph graph;
  int root = 0;
  std::vector<int> parent;  // -1 at the root
  std::vector<int> level;
};

// T_{d,r} in breadth-first order, root 0.
RootedTree tree_T(int d, int r);
long long tree_T_order(int d, int r);

struct DoubleStar {
  Graph graph;
  Edge middle;
};

// Centers 0 and 1; a leaves on 0 follow, then b leaves on 1.
DoubleStar double_star(int a, int b);

// Vertices 0 and 1 are the shared middle edge; each coned double star then
// contributes its apex, its a_i leaves on 0 and its b_i leaves on 1.
Graph crystal_graph(const CrystalSpec& spec);

Graph k_tree_random(int k, int n, std::uint64_t seed);
// Streams k-trees on n vertices. Up to n = 12 each isomorphism class is
// visited once; beyond that every attachment sequence class of the previous
// level is extended without deduplication at the last level.
void k_tree_enumerate(int k, int n, const std::function<void(const Graph&)>& visit);

// Grows a graph one vertex at a time; each new vertex draws its neighbours
// with probability p and the draw is retried up to `attempts` times until
// `keep` accepts the result. A vertex that cannot be placed is added isolated
// if `keep` allows it; otherwise growth stops early.
Graph grow_random_graph(int n, double p, std::uint64_t seed, const std::function<bool(const Graph&)>& keep,
                        int attempts = 50);

enum class PhantomDensity { minimal, coned };

struct PlantedPhantom {
  Graph graph;
  Phantom phantom;
};

// Builds Z_0 = V(base) plus r layers; every edge of G[Z_{i-1}] receives d new
// common neighbours. In coned mode each layer-1 edge e is picked with
// probability 1/2 (or taken from `coned_edges` when given), and every vertex
// of Z_0 adjacent to both ends of e is joined to all of Gamma_1(e) before
// layer 2 is built.
PlantedPhantom plant_phantom(const Graph& base, int d, int r, std::uint64_t seed,
                             PhantomDensity density = PhantomDensity::minimal,
                             const std::optional<std::vector<Edge>>& coned_edges = std::nullopt);

struct PlantedCrystal {
  Graph graph;
  Crystal crystal;
};

// A (0, 1, f, g)-crystal: centers adjacent to both anchors, each side vertex
// adjacent to its anchor and its center only. With a noise seed, between 1
// and max_noise_edges extra edges are added inside V(c); the first always
// breaks clearness (inside a side set when g >= 2, else between two sides).
PlantedCrystal plant_crystal(int f, int g, std::optional<std::uint64_t> noise_seed = std::nullopt,
                             int max_noise_edges = 3);

}  // namespace obslab
