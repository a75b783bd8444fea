#include <gtest/gtest.h>

#include <sstream>

#include "obslab/error.hpp"
#include "obslab/generators.hpp"
#include "obslab/treewidth.hpp"
#include "oracles.hpp"

using namespace obslab;

namespace {

void expect_certified(const Graph& g, const TreewidthResult& r) {
  auto v = verify_decomposition(g, r.decomposition);
  EXPECT_FALSE(v) << v->clause << ": " << v->detail;
  if (g.order() > 0) EXPECT_EQ(r.decomposition.width(), r.width);
  EXPECT_EQ(elimination_width(g, r.elimination_order), r.width);
}

Graph full_subdivision(const Graph& g) {
  std::map<Edge, int> once;
  for (auto e : g.edges()) once[e] = 1;
  return subdivide(g, once);
}

}  // namespace

TEST(Exact, Examples) {
  EXPECT_EQ(treewidth_exact(complete(5)).width, 4);
  EXPECT_EQ(treewidth_exact(complete_bipartite(3, 3)).width, 3);
  EXPECT_EQ(treewidth_exact(path_graph(7)).width, 1);
  EXPECT_EQ(treewidth_exact(cycle(9)).width, 2);
  EXPECT_EQ(treewidth_exact(Graph(5)).width, 0);
  EXPECT_EQ(treewidth_exact(Graph(0)).width, 0);
  Graph k4 = complete(4);
  EXPECT_EQ(treewidth_exact(full_subdivision(k4)).width, 3);
}

TEST(Exact, TreesHaveWidthOne) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto t = k_tree_random(1, 15, seed);
    auto r = treewidth_exact(t);
    EXPECT_EQ(r.width, 1);
    expect_certified(t, r);
  }
}

TEST(Exact, WallCalibration) {
  EXPECT_EQ(treewidth_exact(wall({2})).width, 2);
  EXPECT_EQ(treewidth_exact(wall({3})).width, 3);
  EXPECT_GE(treewidth_exact(wall({1})).width, 1);
}

TEST(Exact, GuardAndLimits) {
  EXPECT_THROW(treewidth_exact(cycle(23)), ScaleLimit);
  EXPECT_EQ(treewidth_exact(cycle(23), {.guard = 30}).width, 2);
  EXPECT_THROW(treewidth_exact(cycle(5), {.guard = 65}), InvalidInput);
}

TEST(Exact, AgreesWithSubsetRecurrence) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const int n = 3 + static_cast<int>(seed % 8);
    auto g = oracle::random_graph(n, 0.15 + 0.07 * static_cast<double>(seed % 10), seed);
    auto r = treewidth_exact(g);
    EXPECT_EQ(r.width, oracle::treewidth(g)) << "seed " << seed;
    expect_certified(g, r);
  }
}

TEST(Exact, Monotone) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = oracle::random_graph(10, 0.4, seed);
    int whole = treewidth_exact(g).width;
    Rng rng(seed);
    VertexSet x = g.empty_set();
    for (int v = 0; v < 10; ++v)
      if (rng.bernoulli(0.6)) x.insert(v);
    EXPECT_LE(treewidth_exact(induced_subgraph(g, x).graph).width, whole);
  }
}

TEST(Exact, ChordalOptimality) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int k = 1 + static_cast<int>(seed % 4);
    auto g = k_tree_random(k, 14, seed);
    EXPECT_EQ(treewidth_exact(g).width, k);
  }
}

TEST(Exact, SubdivisionInvariance) {
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 20; ++seed) {
    auto g = oracle::random_graph(7, 0.45, seed);
    int w = treewidth_exact(g).width;
    if (w < 1) continue;
    auto s = full_subdivision(g);
    if (s.order() > 22) continue;
    EXPECT_EQ(treewidth_exact(s).width, w) << "seed " << seed;
    ++checked;
  }
}

TEST(Bounds, Examples) {
  auto k6 = complete(6);
  EXPECT_EQ(tw_upper(k6).width, 5);
  EXPECT_EQ(tw_lower(k6), 5);
  EXPECT_EQ(tw_upper(cycle(9)).width, 2);
  EXPECT_EQ(tw_lower(cycle(9)), 2);
  auto w5 = wall({5});
  EXPECT_GE(tw_lower(w5), 2);
  EXPECT_GE(tw_upper(w5).width, 5);
}

TEST(Bounds, Sandwich) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto g = oracle::random_graph(11, 0.35, seed);
    auto up = tw_upper(g);
    int exact = treewidth_exact(g).width;
    EXPECT_LE(tw_lower(g), exact);
    EXPECT_LE(exact, up.width);
    EXPECT_FALSE(verify_decomposition(g, up.decomposition));
  }
}

TEST(Verify, Examples) {
  auto k3 = complete(3);
  TreeDecomposition one{{{0, 1, 2}}, {}};
  EXPECT_FALSE(verify_decomposition(k3, one));
  EXPECT_EQ(one.width(), 2);
  TreeDecomposition two{{{0, 1}, {1, 2}}, {{0, 1}}};
  auto v = verify_decomposition(k3, two);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->clause, "edge-coverage");
  EXPECT_NE(v->detail.find("0-2"), std::string::npos);
}

TEST(Verify, EachAxiom) {
  auto p3 = path_graph(3);
  EXPECT_EQ(verify_decomposition(p3, {{{0, 1}, {1, 2}}, {}})->clause, "tree");
  EXPECT_EQ(verify_decomposition(p3, {{{0, 1}, {1, 7}}, {{0, 1}}})->clause, "range");
  EXPECT_EQ(verify_decomposition(p3, {{{0, 1}, {1}}, {{0, 1}}})->clause, "vertex-coverage");
  EXPECT_EQ(verify_decomposition(p3, {{{0, 1}, {2}, {1, 2}}, {{0, 1}, {1, 2}}})->clause, "connectivity");
  EXPECT_FALSE(verify_decomposition(p3, {{{0, 1}, {1, 2}, {1}}, {{0, 2}, {2, 1}}}));
}

TEST(Pace, RoundTrip) {
  auto g = wall({3});
  auto r = treewidth_exact(g);
  std::string text = to_pace(r.decomposition, g.order());
  EXPECT_EQ(text.rfind("s td " + std::to_string(r.decomposition.bags.size()) + " 4 " + std::to_string(g.order()), 0), 0u);
  std::istringstream in(text);
  auto [td, n] = from_pace(in);
  EXPECT_EQ(n, g.order());
  EXPECT_EQ(td.bags, r.decomposition.bags);
  EXPECT_EQ(td.tree_edges, r.decomposition.tree_edges);
  EXPECT_EQ(to_pace(td, n), text);
}

TEST(Pace, RejectsMalformed) {
  for (const char* bad : {"", "b 1 1\n", "s td 1 2 2\nb 1 1 3\n", "s td 2 1 2\nb 1 1\n", "s td 1 1 1\nb 1 1\n1 2\n",
                          "s td 1 3 2\nb 1 1 2\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(from_pace(in), InvalidInput) << bad;
  }
  std::istringstream ok("c comment\ns td 1 2 2\nb 1 1 2\n");
  EXPECT_EQ(from_pace(ok).first.width(), 1);
}
