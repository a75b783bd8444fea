#include "obslab_cli/suites.hpp"

#include <map>
#include <stdexcept>

#include "obslab/canonical.hpp"
#include "obslab/detectors.hpp"
#include "obslab/error.hpp"
#include "obslab/extractors.hpp"
#include "obslab/generators.hpp"
#include "obslab/graph_io.hpp"
#include "obslab/rng.hpp"
#include "obslab/structures.hpp"
#include "obslab/treewidth.hpp"

namespace obslab::cli {

namespace {

constexpr int kDetectorGuard = 256;

std::uint64_t require_seed(const SuiteOptions& o, const std::string& what) {
  if (!o.seed) throw InvalidInput(what + " samples randomly and needs --seed");
  return *o.seed;
}

int knob(const std::optional<int>& v, int fallback, int lo, int hi, const std::string& name) {
  const int x = v.value_or(fallback);
  if (x < lo || x > hi)
    throw InvalidInput(name + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

// Runs body and turns an escaping exception into a failed instance.
template <class F>
InstanceResult guarded(nlohmann::ordered_json fields, F body) {
  InstanceResult r;
  r.fields = std::move(fields);
  try {
    body(r);
  } catch (const std::exception& e) {
    r.ok = false;
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

void fail(InstanceResult& r, const std::string& detail, const std::optional<Graph>& g = std::nullopt) {
  r.ok = false;
  if (r.detail.empty()) r.detail = detail;
  if (g && !r.counterexample) r.counterexample = g;
}

Graph random_graph(int n, double p, Rng& rng) {
  GraphBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) b.add_edge(u, v);
  return b.build();
}

// ---- obstructions ----

InstanceResult tw_check(const std::string& kind, int t, const Graph& g, int guard) {
  nlohmann::ordered_json fields{{"check", "treewidth"}, {"kind", kind}, {"t", t}, {"n", g.order()}};
  return guarded(fields, [&](InstanceResult& r) {
    if (g.order() > guard) {
      r.fields["skipped"] = "exceeds exact guard";
      return;
    }
    const int w = treewidth_exact(g, ExactOptions{guard}).width;
    r.fields["width"] = w;
    if (w != t) fail(r, "treewidth " + std::to_string(w) + ", expected " + std::to_string(t), g);
  });
}

InstanceResult structure_check(const std::string& kind, int t, std::uint64_t seed) {
  nlohmann::ordered_json fields{{"check", "structures"}, {"kind", kind}, {"t", t}, {"subdivision_seed", seed}};
  return guarded(fields, [&](InstanceResult& r) {
    const Graph g = basic_obstruction(t, obstruction_kind_from_string(kind), seed);
    r.fields["n"] = g.order();
    const DetectorOptions opts{std::max(kDetectorGuard, g.order())};
    auto check = [&](const std::string& name, const std::optional<Witness>& w) {
      const bool found = w && witness_is_valid(g, *w);
      r.fields[name] = found;
      if (!found) fail(r, "no " + name + " found", g);
    };
    check("even_hole", find_even_hole(g, opts));
    // Line graphs of walls are theta-free; the prism is the structure there.
    if (kind == "line_of_wall") {
      check("prism", find_prism(g, opts));
    } else if (kind == "wall" || t >= 3) {
      check("theta", find_theta(g, opts));
    }
  });
}

InstanceResult subdivision_check(int n_max, std::uint64_t seed, int guard) {
  nlohmann::ordered_json fields{{"check", "subdivision"}, {"seed", seed}};
  return guarded(fields, [&](InstanceResult& r) {
    Rng rng(seed);
    Graph g;
    // Resample until the graph has an edge and the full subdivision fits the
    // exact solver.
    for (;;) {
      const int n = rng.uniform_int(2, n_max);
      g = random_graph(n, rng.uniform01() * 0.6 + 0.1, rng);
      if (g.size() >= 1 && g.order() + g.size() <= guard) break;
    }
    std::map<Edge, int> once;
    for (auto e : g.edges()) once[e] = 1;
    const Graph sub = subdivide(g, once);
    const int before = treewidth_exact(g, ExactOptions{guard}).width;
    const int after = treewidth_exact(sub, ExactOptions{guard}).width;
    r.fields["n"] = g.order();
    r.fields["m"] = g.size();
    r.fields["width"] = before;
    r.fields["subdivided_width"] = after;
    if (before != after) fail(r, "subdivision changed the treewidth", g);
  });
}

SuiteResult verify_obstructions(const SuiteOptions& o) {
  const int t = knob(o.t, 3, 1, 12, "--t");
  const int samples = knob(o.samples, 20, 0, 100000, "--samples");
  const int n_max = knob(o.n, 10, 2, 12, "--n");
  const std::uint64_t base = o.seed.value_or(0);
  std::vector<std::function<InstanceResult()>> jobs;
  jobs.push_back([=] { return tw_check("complete", t, complete(t + 1), o.exact_guard); });
  jobs.push_back([=] { return tw_check("biclique", t, complete_bipartite(t, t), o.exact_guard); });
  jobs.push_back([=] { return tw_check("wall", t, wall({t}), o.exact_guard); });
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t seed = base + static_cast<std::uint64_t>(i);
    if (t >= 2)
      for (const char* kind : {"biclique", "wall", "line_of_wall"})
        jobs.push_back([=] { return structure_check(kind, t, seed); });
    jobs.push_back([=] { return subdivision_check(n_max, seed, o.exact_guard); });
  }
  SuiteResult out;
  out.instances = parallel_map(jobs.size(), [&](std::size_t i) { return jobs[i](); });
  out.extra["suite"] = "obstructions";
  out.extra["t"] = t;
  return out;
}

// ---- class containment ----

SuiteResult verify_class_containment(const SuiteOptions& o) {
  const int n = knob(o.n, 7, 1, 9, "--n");
  SuiteResult out;
  for (int k = 1; k <= n; ++k) {
    std::map<int, InstanceResult> buckets;
    enumerate_graphs(k, nullptr, [&](const Graph& g) {
      auto [it, fresh] = buckets.try_emplace(g.size());
      InstanceResult& r = it->second;
      if (fresh) {
        r.fields = {{"n", k}, {"m", g.size()}, {"graphs", 0}, {"even_hole_free", 0}};
      }
      r.fields["graphs"] = r.fields["graphs"].get<int>() + 1;
      if (find_even_hole(g)) return;
      r.fields["even_hole_free"] = r.fields["even_hole_free"].get<int>() + 1;
      if (find_induced_biclique(g, 2, 2)) fail(r, "even-hole-free graph with an induced K_{2,2}", g);
      if (find_theta(g)) fail(r, "even-hole-free graph with a theta", g);
      if (find_prism(g)) fail(r, "even-hole-free graph with a prism", g);
      if (find_even_wheel(g)) fail(r, "even-hole-free graph with an even wheel", g);
    });
    for (auto& [m, r] : buckets) out.instances.push_back(std::move(r));
  }
  out.extra["suite"] = "class-containment";
  out.extra["n"] = n;
  return out;
}

// ---- contraption ----

SuiteResult verify_contraption(const SuiteOptions& o) {
  const std::uint64_t base = require_seed(o, "contraption");
  const int n = knob(o.n, 9, 3, 14, "--n");
  const int samples = knob(o.samples, 200, 0, 100000, "--samples");
  SuiteResult out;
  out.instances = parallel_map(static_cast<std::size_t>(samples), [&](std::size_t i) {
    const std::uint64_t seed = base + i;
    return guarded({{"sample", i}, {"seed", seed}}, [&](InstanceResult& r) {
      const Graph g = grow_random_graph(n, 0.35, seed, [](const Graph& h) {
        return membership_E_t(h, std::nullopt).member;
      });
      int checked = 0;
      for (auto [z1, z2] : g.edges()) {
        if (!contraption_qualifies(g, z1, z2)) continue;
        ++checked;
        if (!membership_E_t(contraption(g, z1, z2).graph, std::nullopt).member)
          fail(r, "contracting " + std::to_string(z1) + "-" + std::to_string(z2) + " leaves the class", g);
      }
      r.fields["n"] = g.order();
      r.fields["edges_checked"] = checked;
    });
  });
  int with_edge = 0;
  for (const auto& r : out.instances)
    if (r.fields.contains("edges_checked") && r.fields["edges_checked"].get<int>() > 0) ++with_edge;
  out.extra["suite"] = "contraption";
  out.extra["with_qualifying_edge"] = with_edge;
  return out;
}

// ---- crystallized ----

SuiteResult verify_crystallized(const SuiteOptions& o) {
  const std::uint64_t base = require_seed(o, "crystallized");
  const int n = knob(o.n, 12, 4, 64, "--n");
  const int samples = knob(o.samples, 200, 0, 100000, "--samples");
  SuiteResult out;
  out.instances = parallel_map(static_cast<std::size_t>(samples), [&](std::size_t i) {
    const std::uint64_t seed = base + i;
    const int order = 4 + static_cast<int>(i % static_cast<std::size_t>(n - 3));
    return guarded({{"sample", i}, {"seed", seed}, {"n", order}}, [&](InstanceResult& r) {
      const Graph g = k_tree_random(2, order, seed);
      const auto found = find_crystallized_vertex(g);
      r.fields["certificate"] = to_json(found.certificate);
      if (auto v = validate_crystallized(g, found.certificate)) fail(r, v->clause + ": " + v->detail, g);
      int scan = 0;
      for (int z = 0; z < g.order(); ++z) scan += is_crystallized(g, z) ? 1 : 0;
      r.fields["crystallized_vertices"] = scan;
      if (!is_crystallized(g, found.certificate.z)) fail(r, "scan disagrees with the certificate", g);
    });
  });
  out.extra["suite"] = "crystallized";
  return out;
}

// ---- extractors ----

// Re-derives the counts behind a layer-selection shortfall.
bool shortfall_is_genuine(const Graph& g, const Phantom& p, const ConeTreeInput& in, const HypothesisViolation& v) {
  if (v.witness) return witness_is_valid(g, *v.witness);
  const int anchor = v.step == "select-L1" ? in.z2 : v.step == "select-L2" ? in.z1 : -1;
  if (anchor < 0 || p.depth() < 1) return false;
  VertexSet outside = in.z_set;
  for (int x : {in.z1, in.z2, in.z}) outside.erase(x);
  int available = 0;
  for (int x : p.gamma_of(1, make_edge(anchor, in.z)))
    if (!g.neighbors(x).intersects(outside)) ++available;
  return v.needed == in.d + in.g && v.available == available && available < v.needed;
}

void check_crystal_extractor(InstanceResult& r, int f, int gs, int r_depth, PhantomDensity density,
                             std::uint64_t seed) {
  const auto pp = plant_phantom(complete(2), f + gs, r_depth, seed, density);
  const auto out = phantom_to_crystal(pp.graph, pp.phantom, f, gs);
  r.fields["crystal_host"] = pp.graph.order();
  r.fields["crystal_variant"] = out.variant();
  if (out.variant() == "crystal") {
    const auto& c = std::get<Crystal>(out.payload);
    if (auto v = validate_crystal(pp.graph, c)) fail(r, "crystal " + v->clause + ": " + v->detail, pp.graph);
    if (c.f() != f || c.g() != gs) fail(r, "crystal has the wrong size", pp.graph);
    if (!pp.graph.make_set(c.vertices()).is_subset_of(pp.phantom.z(r_depth)))
      fail(r, "crystal leaves Z_r", pp.graph);
    if (pp.graph.order() <= 24) {
      const bool confirmed = brute_force_crystal(pp.graph, f, gs).has_value();
      r.fields["brute_force"] = confirmed;
      if (!confirmed) fail(r, "brute force finds no crystal", pp.graph);
    }
  } else if (out.variant() == "clique-family") {
    if (auto v = validate_clique_family(pp.graph, pp.phantom.z(0), std::get<CliqueFamily>(out.payload), r_depth, gs))
      fail(r, "clique family " + v->clause + ": " + v->detail, pp.graph);
  } else {
    fail(r, "unexpected " + out.variant(), pp.graph);
  }
  const auto again = phantom_to_crystal(pp.graph, pp.phantom, f, gs, &out.trace);
  if (to_json(again) != to_json(out)) fail(r, "trace replay diverged", pp.graph);
}

void check_cone_extractor(InstanceResult& r, int d, int gs, int r_depth, PhantomDensity density, std::uint64_t seed,
                          bool starved) {
  const int planted_d = starved ? d + gs - 1 : d + gs;
  const auto pp = plant_phantom(complete(3), planted_d, r_depth, seed, density);
  ConeTreeInput in;
  in.z_set = pp.graph.make_set({0, 1, 2});
  in.z1 = 0;
  in.z2 = 1;
  in.z = 2;
  in.d = d;
  in.g = gs;
  in.h = 3;
  in.t = 3;
  const auto out = phantom_to_cone_tree(pp.graph, pp.phantom, in);
  r.fields["cone_host"] = pp.graph.order();
  r.fields["cone_variant"] = out.variant();
  if (out.variant() == "cone-tree") {
    const auto& tree = std::get<ConeTree>(out.payload);
    if (auto v = validate_cone_tree(pp.graph, pp.phantom, in, tree))
      fail(r, "cone tree " + v->clause + ": " + v->detail, pp.graph);
  } else if (out.variant() == "crystal") {
    const auto& c = std::get<Crystal>(out.payload);
    if (auto v = validate_crystal(pp.graph, c)) fail(r, "crystal " + v->clause + ": " + v->detail, pp.graph);
    if (pp.graph.order() <= 24 && !brute_force_crystal(pp.graph, 1, gs))
      fail(r, "brute force finds no crystal", pp.graph);
  } else if (out.variant() == "hypothesis-violation") {
    const auto& v = std::get<HypothesisViolation>(out.payload);
    r.fields["shortfall"] = to_json(v);
    if (!shortfall_is_genuine(pp.graph, pp.phantom, in, v)) fail(r, "shortfall does not recount", pp.graph);
  } else {
    fail(r, "unexpected " + out.variant(), pp.graph);
  }
  if (starved && r_depth >= 1 && out.variant() != "hypothesis-violation")
    fail(r, "starved phantom did not report a shortfall", pp.graph);
  const auto again = phantom_to_cone_tree(pp.graph, pp.phantom, in, &out.trace);
  if (to_json(again) != to_json(out)) fail(r, "trace replay diverged", pp.graph);
}

SuiteResult verify_extractors(const SuiteOptions& o) {
  const std::uint64_t base = require_seed(o, "extractors");
  const int samples = knob(o.samples, 100, 0, 100000, "--samples");
  SuiteResult out;
  out.instances = parallel_map(static_cast<std::size_t>(samples), [&](std::size_t i) {
    const std::uint64_t seed = base + i;
    const int f = 1 + static_cast<int>(i % 2);
    const int gs = 1 + static_cast<int>((i / 2) % 2);
    int depth = static_cast<int>((i / 4) % 4);
    // The host grows like (2d)^r; the deepest level is kept to d <= 3.
    if (depth == 3 && f + gs > 3) depth = 2;
    const auto density = (i / 16) % 2 ? PhantomDensity::coned : PhantomDensity::minimal;
    const bool starved = i % 5 == 4;
    nlohmann::ordered_json fields{{"sample", i},
                                  {"seed", seed},
                                  {"f", f},
                                  {"g", gs},
                                  {"r", depth},
                                  {"density", density == PhantomDensity::coned ? "coned" : "minimal"},
                                  {"starved", starved}};
    return guarded(fields, [&](InstanceResult& r) {
      check_crystal_extractor(r, f, gs, depth, density, seed);
      check_cone_extractor(r, f, gs, depth, density, seed, starved);
    });
  });
  out.extra["suite"] = "extractors";
  return out;
}

// ---- ramsey ----

long long power(int base, int exp) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= base;
    if (v > 1'000'000) return v;
  }
  return v;
}

Digraph random_digraph(int n, Rng& rng) {
  std::vector<std::pair<int, int>> arcs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) switch (rng.below(4)) {
        case 1: arcs.emplace_back(u, v); break;
        case 2: arcs.emplace_back(v, u); break;
        case 3:
          arcs.emplace_back(u, v);
          arcs.emplace_back(v, u);
          break;
        default: break;
      }
  return Digraph(n, arcs);
}

void check_ramsey(InstanceResult& r, const Graph& g, int c, int s) {
  try {
    if (find_clique_or_stable(g, c, s).outcome == RamseyOutcome::neither) fail(r, "neither a clique nor a stable set", g);
  } catch (const std::logic_error& e) {
    fail(r, e.what(), g);
  }
}

SuiteResult verify_ramsey(const SuiteOptions& o) {
  const int c = knob(o.c, 3, 1, 6, "--c");
  const int s = knob(o.s, 2, 1, 6, "--s");
  const long long n = power(c, s);
  if (n > 64) throw InvalidInput("c^s must be at most 64");
  const bool exhaustive = n <= 9;
  const int samples = knob(o.samples, exhaustive ? 0 : 100, 0, 100000, "--samples");
  SuiteResult out;
  if (exhaustive) {
    std::map<int, InstanceResult> buckets;
    enumerate_graphs(static_cast<int>(n), nullptr, [&](const Graph& g) {
      auto [it, fresh] = buckets.try_emplace(g.size());
      if (fresh) it->second.fields = {{"check", "exhaustive"}, {"n", n}, {"m", g.size()}, {"graphs", 0}};
      it->second.fields["graphs"] = it->second.fields["graphs"].get<int>() + 1;
      check_ramsey(it->second, g, c, s);
    });
    for (auto& [m, r] : buckets) out.instances.push_back(std::move(r));
  }
  const long long tournament_n = power(c, static_cast<int>(n));
  if (samples > 0) {
    const std::uint64_t base = require_seed(o, "ramsey sampling");
    auto sampled = parallel_map(static_cast<std::size_t>(samples), [&](std::size_t i) {
      const std::uint64_t seed = base + i;
      return guarded({{"check", "sampled"}, {"n", n}, {"seed", seed}}, [&](InstanceResult& r) {
        Rng rng(seed);
        check_ramsey(r, random_graph(static_cast<int>(n), 0.5, rng), c, s);
      });
    });
    for (auto& r : sampled) out.instances.push_back(std::move(r));
    if (tournament_n <= 64) {
      auto tours = parallel_map(static_cast<std::size_t>(samples), [&](std::size_t i) {
        const std::uint64_t seed = base + i;
        return guarded({{"check", "tournament"}, {"n", tournament_n}, {"seed", seed}}, [&](InstanceResult& r) {
          Rng rng(seed);
          const Digraph d = random_digraph(static_cast<int>(tournament_n), rng);
          try {
            if (acyclic_tournament_or_stable(d, c, s).outcome == TournamentOutcome::neither)
              fail(r, "neither an acyclic tournament nor a stable set");
          } catch (const std::logic_error& e) {
            fail(r, e.what());
          }
          if (!r.ok) r.fields["arcs"] = d.arcs();
        });
      });
      for (auto& r : tours) out.instances.push_back(std::move(r));
    }
  }
  out.extra["suite"] = "ramsey";
  out.extra["c"] = c;
  out.extra["s"] = s;
  out.extra["exhaustive"] = exhaustive;
  return out;
}

}  // namespace

SuiteResult run_verify(const std::string& suite, const SuiteOptions& opts) {
  if (opts.exact_guard < 1 || opts.exact_guard > 30) throw InvalidInput("--exact-guard must lie in [1, 30]");
  if (suite == "obstructions") return verify_obstructions(opts);
  if (suite == "class-containment") return verify_class_containment(opts);
  if (suite == "contraption") return verify_contraption(opts);
  if (suite == "crystallized") return verify_crystallized(opts);
  if (suite == "extractors") return verify_extractors(opts);
  if (suite == "ramsey") return verify_ramsey(opts);
  throw InvalidInput("unknown suite \"" + suite + "\"");
}

SuiteResult run_scan(const Graph& h, int t, int n_max, const SuiteOptions& opts) {
  if (!is_k_forest(h, 2)) throw InvalidInput("H must be a 2-forest");
  if (t < 1) throw InvalidInput("--t must be positive");
  if (n_max < 1 || n_max > 16) throw InvalidInput("--n must lie in [1, 16]");
  if (opts.exact_guard < 1 || opts.exact_guard > 30) throw InvalidInput("--exact-guard must lie in [1, 30]");
  const DetectorOptions det{kDetectorGuard};
  auto in_class = [&](const Graph& g) {
    return !find_clique(g, t, det) && !find_even_hole(g, det) && !contains_induced(g, h, det);
  };
  // Small orders list every graph with its verdict; larger ones walk the
  // class itself, sampled per level when --samples is given.
  const bool list_all = n_max <= 7;
  std::optional<std::size_t> cap;
  if (opts.samples) {
    if (*opts.samples < 1) throw InvalidInput("--samples must be positive");
    require_seed(opts, "a capped scan");
    cap = static_cast<std::size_t>(*opts.samples);
  }
  std::vector<Graph> graphs;
  const auto stats = enumerate_graphs(
      n_max, list_all ? std::function<bool(const Graph&)>{} : std::function<bool(const Graph&)>{in_class},
      [&](const Graph& g) { graphs.push_back(g); }, list_all ? std::nullopt : cap, opts.seed.value_or(0));
  SuiteResult out;
  out.instances = parallel_map(graphs.size(), [&](std::size_t i) {
    const Graph& g = graphs[i];
    return guarded({{"graph", graph_to_json(g)}}, [&](InstanceResult& r) {
      const bool member = !list_all || in_class(g);
      r.fields["member"] = member;
      if (member) r.fields["treewidth"] = treewidth_exact(g, ExactOptions{opts.exact_guard}).width;
    });
  });
  int members = 0;
  int max_width = -1;
  for (const auto& r : out.instances) {
    if (!r.fields.value("member", false) || !r.fields.contains("treewidth")) continue;
    ++members;
    max_width = std::max(max_width, r.fields["treewidth"].get<int>());
  }
  out.extra["suite"] = "scan";
  out.extra["h"] = graph_to_json(h);
  out.extra["t"] = t;
  out.extra["n_max"] = n_max;
  out.extra["exhaustive"] = stats.exhaustive;
  out.extra["members"] = members;
  out.extra["max_treewidth"] = max_width < 0 ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(max_width);
  out.extra["conclusive"] = false;
  return out;
}

}  // namespace obslab::cli
