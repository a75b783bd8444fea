#include <gtest/gtest.h>

#include "obslab/canonical.hpp"
#include "obslab/detectors.hpp"
#include "obslab/error.hpp"
#include "obslab/generators.hpp"
#include "obslab/structures.hpp"
#include "oracles.hpp"

using namespace obslab;

namespace {

Graph diamond() { return cone(path_graph(3)); }
Graph gem() { return cone(path_graph(4)); }

// Kaleidoscope fixture: a = 0, x = 1, y = 2, four x-y paths with five
// interior vertices each, and a vertex z seeing the second and fourth
// interior vertex of every path.
struct KaleidoscopeFixture {
  Graph graph;
  Kaleidoscope k;
  int z = -1;
};

KaleidoscopeFixture fig10(bool a_sees_interior = false) {
  GraphBuilder b(3);
  b.add_edge(0, 1);
  b.add_edge(0, 2);
  KaleidoscopeFixture f;
  f.k = {0, 1, 2, {}};
  std::vector<std::vector<int>> interiors;
  for (int w = 0; w < 4; ++w) {
    std::vector<int> path{1};
    for (int i = 0; i < 5; ++i) path.push_back(b.add_vertex());
    path.push_back(2);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) b.add_edge(path[i], path[i + 1]);
    f.k.paths.push_back(path);
  }
  f.z = b.add_vertex();
  for (const auto& p : f.k.paths) {
    b.add_edge(f.z, p[2]);
    b.add_edge(f.z, p[4]);
  }
  if (a_sees_interior) b.add_edge(0, f.k.paths[1][3]);
  f.graph = b.build();
  return f;
}

// Grows a random member of E one vertex at a time.
Graph random_member_of_E(int n, std::uint64_t seed) {
  Rng rng(seed);
  GraphBuilder b(1);
  while (b.order() < n) {
    for (int attempt = 0; attempt < 50; ++attempt) {
      GraphBuilder trial = b;
      int v = trial.add_vertex();
      for (int u = 0; u < v; ++u)
        if (rng.bernoulli(0.35)) trial.add_edge(u, v);
      if (membership_E_t(trial.build(), std::nullopt).member) {
        b = trial;
        break;
      }
    }
  }
  return b.build();
}

}  // namespace

TEST(Phantom, PlantedIsValidAndBrokenOnesAreNot) {
  auto pp = plant_phantom(complete(2), 1, 2, 3);
  EXPECT_FALSE(validate_phantom(pp.graph, pp.phantom));

  auto shared = pp.phantom;
  auto& level = shared.gamma[1];
  ASSERT_GE(level.size(), 2u);
  auto first = level.begin();
  auto second = std::next(first);
  second->second = first->second;
  auto v = validate_phantom(pp.graph, shared);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->clause, "P2");

  auto nesting = pp.phantom;
  nesting.layers[1].insert(pp.phantom.z(2).to_vector().back());
  nesting.layers[2].erase(0);
  auto w = validate_phantom(pp.graph, nesting);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->clause, "P1");
}

TEST(Phantom, SubPhantomExamples) {
  auto pp = plant_phantom(complete(2), 2, 2, 0);
  const auto& p = pp.phantom;
  const auto& g = pp.graph;
  auto same = sub_phantom(g, p, p.z(0), 0, 2);
  for (int i = 0; i <= 2; ++i) EXPECT_TRUE(same.z(i) == p.z(i));
  EXPECT_EQ(same.gamma, p.gamma);
  auto flat = sub_phantom(g, p, p.z(1), 1, 0);
  EXPECT_EQ(flat.depth(), 0);
  EXPECT_TRUE(flat.z(0) == p.z(1));

  const int a = p.gamma_of(1, {0, 1}).first();
  auto x0 = g.make_set({1, a});
  auto sub = sub_phantom(g, p, x0, 1, 1);
  VertexSet expect = x0 | p.gamma_of(2, make_edge(1, a));
  EXPECT_TRUE(sub.z(1) == expect);
  EXPECT_FALSE(validate_phantom(g, sub));

  EXPECT_THROW(sub_phantom(g, p, p.z(2), 1, 1), InvalidInput);
  EXPECT_THROW(sub_phantom(g, p, p.z(0), 1, 2), InvalidInput);
}

TEST(Phantom, SubPhantomsAreValidAndNested) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto pp = plant_phantom(complete(3), 1 + static_cast<int>(seed % 2), 3, seed,
                            seed % 2 ? PhantomDensity::coned : PhantomDensity::minimal);
    Rng rng(seed);
    const int i = static_cast<int>(rng.below(3));
    const int rp = static_cast<int>(rng.below(static_cast<std::uint64_t>(3 - i + 1)));
    VertexSet x0 = pp.graph.empty_set();
    for (int v : pp.phantom.z(i))
      if (rng.bernoulli(0.5)) x0.insert(v);
    auto sub = sub_phantom(pp.graph, pp.phantom, x0, i, rp);
    EXPECT_FALSE(validate_phantom(pp.graph, sub));
    for (int j = 0; j <= rp; ++j) EXPECT_TRUE(sub.z(j).is_subset_of(pp.phantom.z(i + j)));
  }
}

TEST(Phantom, JsonRoundTrip) {
  auto pp = plant_phantom(complete(3), 2, 2, 1, PhantomDensity::coned);
  auto j = to_json(pp.phantom);
  EXPECT_TRUE(j["gamma"][0].contains("0-1"));
  auto back = phantom_from_json(pp.graph, nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.gamma, pp.phantom.gamma);
  EXPECT_EQ(to_json(back).dump(), j.dump());
  EXPECT_THROW(phantom_from_json(pp.graph, nlohmann::json::parse(R"({"d":1})")), InvalidInput);
}

TEST(Crystal, GemIsValidAndClear) {
  // Gem 0-1-2-3 with apex 4 seen from the middle edge 1-2.
  auto g = gem();
  Crystal c{1, 2, {{4, {0}, {3}}}};
  EXPECT_FALSE(validate_crystal(g, c));
  EXPECT_TRUE(is_clear_crystal(g, c));
  EXPECT_EQ(c.f(), 1);
  EXPECT_EQ(c.g(), 1);
  Crystal wrong{1, 2, {{4, {3}, {0}}}};
  auto v = validate_crystal(g, wrong);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->clause, "CR3");
  EXPECT_THROW(validate_crystal(g, Crystal{0, 2, {{4, {1}, {3}}}}), InvalidInput);
}

TEST(Crystal, ClauseViolations) {
  auto pc = plant_crystal(2, 2);
  const auto& g = pc.graph;
  auto c = pc.crystal;
  c.centers[1].s1[0] = c.centers[0].s1[0];
  EXPECT_EQ(validate_crystal(g, c)->clause, "CR2");
  c = pc.crystal;
  c.centers[1].z = c.centers[0].z;
  EXPECT_EQ(validate_crystal(g, c)->clause, "CR1");
  c = pc.crystal;
  c.centers[0].s2.pop_back();
  EXPECT_EQ(validate_crystal(g, c)->clause, "CR2");
  EXPECT_EQ(validate_crystal(g, Crystal{0, 1, {}})->clause, "CR1");
}

TEST(Crystal, RealizesGraph) {
  auto one = plant_crystal(1, 1);
  auto spec = crystal_realizes_graph(one.graph, one.crystal);
  ASSERT_TRUE(spec);
  EXPECT_EQ(*spec, (CrystalSpec{{{1, 1}}}));
  EXPECT_TRUE(are_isomorphic(crystal_graph(*spec), gem()));
  auto noisy = plant_crystal(1, 2, 4);
  EXPECT_FALSE(crystal_realizes_graph(noisy.graph, noisy.crystal));
  auto two = plant_crystal(2, 1);
  auto spec2 = crystal_realizes_graph(two.graph, two.crystal);
  ASSERT_TRUE(spec2);
  EXPECT_EQ(spec2->k(), 2);
  EXPECT_TRUE(contains_induced(two.graph, crystal_graph(*spec2)));
}

TEST(Crystal, ClearImpliesRealized) {
  // Clear crystals embedded in random hosts.
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto pc = plant_crystal(1 + static_cast<int>(seed % 3), 1 + static_cast<int>(seed % 2));
    GraphBuilder b(pc.graph.order());
    for (auto [u, v] : pc.graph.edges()) b.add_edge(u, v);
    Rng rng(seed);
    const int extra = b.add_vertices(3);
    for (int v = extra; v < extra + 3; ++v)
      for (int u = 0; u < v; ++u)
        if (rng.bernoulli(0.3)) b.add_edge(u, v);
    Graph g = b.build();
    if (validate_crystal(g, pc.crystal) || !is_clear_crystal(g, pc.crystal)) continue;
    auto spec = crystal_realizes_graph(g, pc.crystal);
    ASSERT_TRUE(spec);
    auto verts = pc.crystal.vertices();
    verts.push_back(0);
    verts.push_back(1);
    auto sub = induced_subgraph(g, g.make_set(verts)).graph;
    EXPECT_TRUE(contains_induced(sub, crystal_graph(*spec)));
    EXPECT_TRUE(contains_induced(g, crystal_graph(*spec)));
  }
}

TEST(Crystal, JsonRoundTrip) {
  auto pc = plant_crystal(2, 2, 1);
  auto j = to_json(pc.crystal);
  auto back = crystal_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(to_json(back).dump(), j.dump());
  EXPECT_THROW(crystal_from_json(nlohmann::json::parse("[1]")), InvalidInput);
}

TEST(Kaleidoscope, FixtureIsValidAndMirrored) {
  auto f = fig10();
  EXPECT_FALSE(validate_kaleidoscope(f.graph, f.k));
  auto z = f.graph.make_set({f.z});
  EXPECT_TRUE(is_mirrored(f.graph, f.k, z, 2));
  EXPECT_EQ(check_mirrored(f.graph, f.k, z, 3)->clause, "M3");
  EXPECT_EQ(check_mirrored(f.graph, f.k, f.graph.make_set({1}), 1)->clause, "M1");
  auto bad = fig10(true);
  EXPECT_EQ(validate_kaleidoscope(bad.graph, bad.k)->clause, "K3");
}

TEST(Kaleidoscope, ClauseViolations) {
  auto f = fig10();
  auto k = f.k;
  k.x = 2;
  EXPECT_EQ(validate_kaleidoscope(f.graph, k)->clause, "K1");
  k = f.k;
  k.paths[1] = k.paths[0];
  EXPECT_EQ(validate_kaleidoscope(f.graph, k)->clause, "K2");
  // Two vertices of Z adjacent to a, and a vertex seeing x.
  GraphBuilder b(f.graph.order());
  for (auto [u, v] : f.graph.edges()) b.add_edge(u, v);
  int p = b.add_vertex(), q = b.add_vertex();
  b.add_edge(0, p);
  b.add_edge(0, q);
  for (const auto& w : f.k.paths) {
    b.add_edge(p, w[3]);
    b.add_edge(q, w[3]);
  }
  int s = b.add_vertex();
  b.add_edge(s, 1);
  for (const auto& w : f.k.paths) b.add_edge(s, w[3]);
  Graph g = b.build();
  EXPECT_EQ(check_mirrored(g, f.k, g.make_set({p, q}), 1)->clause, "M2");
  EXPECT_TRUE(is_mirrored(g, f.k, g.make_set({p}), 1));
  EXPECT_EQ(check_mirrored(g, f.k, g.make_set({s}), 1)->clause, "M3");
}

TEST(Kaleidoscope, JsonRoundTrip) {
  auto f = fig10();
  auto j = to_json(f.k);
  EXPECT_EQ(to_json(kaleidoscope_from_json(nlohmann::json::parse(j.dump()))).dump(), j.dump());
}

TEST(Contraption, Examples) {
  auto k3 = contraption(complete(3), 0, 1);
  EXPECT_TRUE(are_isomorphic(k3.graph, complete(2)));
  EXPECT_EQ(k3.merged, 1);
  auto d = contraption(diamond(), 1, 3);
  EXPECT_TRUE(are_isomorphic(d.graph, path_graph(3)));
  auto p = contraption(path_graph(3), 0, 1);
  EXPECT_EQ(p.graph.order(), 2);
  EXPECT_TRUE(p.graph.edges().empty());
  EXPECT_THROW(contraption(path_graph(3), 0, 2), InvalidInput);
}

TEST(Contraption, MergedNeighbourhoodIsCommonNeighbourhood) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto g = oracle::random_graph(9, 0.4, seed);
    for (auto [z1, z2] : g.edges()) {
      auto c = contraption(g, z1, z2);
      ASSERT_EQ(c.graph.order(), g.order() - 1);
      VertexSet expect = c.graph.empty_set();
      for (int w : g.neighbors(z1) & g.neighbors(z2)) expect.insert(c.old_to_new[w]);
      EXPECT_TRUE(c.graph.neighbors(c.merged) == expect);
      for (auto [u, v] : g.edges())
        if (u != z1 && u != z2 && v != z1 && v != z2) EXPECT_TRUE(c.graph.adjacent(c.old_to_new[u], c.old_to_new[v]));
    }
  }
}

TEST(Contraption, StaysInE) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = random_member_of_E(8, seed);
    for (auto [z1, z2] : g.edges()) {
      VertexSet common = g.neighbors(z1) & g.neighbors(z2);
      bool qualifies = is_stable_set(g, common);
      for (int w : common) qualifies = qualifies && g.degree(w) <= 3;
      if (!qualifies) continue;
      ++checked;
      EXPECT_TRUE(membership_E_t(contraption(g, z1, z2).graph, std::nullopt).member) << "seed " << seed;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(Contraption, QualifyingEdge) {
  EXPECT_TRUE(contraption_qualifies(diamond(), 1, 3));
  EXPECT_FALSE(contraption_qualifies(diamond(), 0, 2));
  EXPECT_FALSE(contraption_qualifies(complete(4), 0, 1));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = oracle::random_graph(8, 0.4, seed);
    for (int z1 = 0; z1 < g.order(); ++z1)
      for (int z2 = 0; z2 < g.order(); ++z2) {
        bool expect = z1 != z2 && g.adjacent(z1, z2);
        if (expect) {
          auto common = (g.neighbors(z1) & g.neighbors(z2)).to_vector();
          for (std::size_t i = 0; i < common.size(); ++i) {
            expect = expect && g.degree(common[i]) <= 3;
            for (std::size_t j = i + 1; j < common.size(); ++j) expect = expect && !g.adjacent(common[i], common[j]);
          }
        }
        EXPECT_EQ(contraption_qualifies(g, z1, z2), expect);
      }
  }
}

TEST(Crystallized, Examples) {
  auto d = diamond();
  auto c = is_crystallized(d, 1);
  ASSERT_TRUE(c);
  EXPECT_FALSE(validate_crystallized(d, *c));
  EXPECT_TRUE(is_crystallized(d, 3));
  EXPECT_FALSE(is_crystallized(d, 2));
  EXPECT_FALSE(is_crystallized(complete(3), 0));
  auto g = gem();
  auto apex = is_crystallized(g, 4);
  ASSERT_TRUE(apex);
  EXPECT_EQ(apex->s1.size() + apex->s2.size(), 2u);
  EXPECT_EQ(apex->z1, 1);
  EXPECT_EQ(apex->z2, 2);
}

TEST(Crystallized, OneSidedCertificateIsLegal) {
  auto d = diamond();
  CrystallizedCertificate c{1, 3, 0, {2}, {}};
  EXPECT_FALSE(validate_crystallized(d, c));
  CrystallizedCertificate wrong{1, 3, 0, {}, {2}};
  EXPECT_EQ(validate_crystallized(d, wrong)->clause, "C2");
}

TEST(Crystallized, CertificatesRevalidate) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto h = k_tree_random(2, 4 + static_cast<int>(seed % 9), seed);
    for (int z = 0; z < h.order(); ++z) {
      auto c = is_crystallized(h, z);
      if (!c) continue;
      EXPECT_FALSE(validate_crystallized(h, *c));
      std::vector<int> sides = c->s1;
      sides.insert(sides.end(), c->s2.begin(), c->s2.end());
      EXPECT_TRUE(is_stable_set(h, h.make_set(sides)));
    }
  }
}
