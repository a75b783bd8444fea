#include "obslab/extractors.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <variant>

#include "obslab/error.hpp"

namespace obslab {

namespace {

using Legal = std::function<bool(const std::vector<int>&)>;

// Writes the trace of a run and, in replay mode, reads selections back from a
// previous one.
class Recorder {
 public:
  explicit Recorder(const Trace* replay) : replay_(replay) {}

  // The branch to take at `step`: the recorded one in replay mode, otherwise
  // the first feasible option.
  std::string branch(const std::string& step, const std::vector<std::string>& feasible) {
    if (feasible.empty()) throw std::logic_error("no branch applies at step '" + step + "'");
    if (!replay_) return feasible.front();
    const TraceStep& s = peek(step);
    if (std::find(feasible.begin(), feasible.end(), s.branch) == feasible.end())
      throw InvalidInput("trace takes infeasible branch '" + s.branch + "' at step '" + step + "'");
    return s.branch;
  }

  std::vector<int> select(const std::string& step, const std::string& branch, std::vector<int> fallback,
                          const Legal& legal) {
    if (replay_) {
      const TraceStep& s = take(step);
      if (s.branch != branch) throw InvalidInput("trace diverges at step '" + step + "'");
      if (!legal(s.chosen)) throw InvalidInput("trace selection at step '" + step + "' is not legal");
      fallback = s.chosen;
    }
    trace_.push_back({step, branch, fallback});
    return fallback;
  }

  // A step with nothing to choose.
  void note(const std::string& step, const std::string& branch, std::vector<int> chosen) {
    if (replay_) {
      const TraceStep& s = take(step);
      if (s.branch != branch || s.chosen != chosen) throw InvalidInput("trace diverges at step '" + step + "'");
    }
    trace_.push_back({step, branch, std::move(chosen)});
  }

  Trace finish() {
    if (replay_ && pos_ != replay_->size()) throw InvalidInput("trace has steps left over after the run");
    return std::move(trace_);
  }

 private:
  const TraceStep& peek(const std::string& step) const {
    if (pos_ >= replay_->size()) throw InvalidInput("trace ends before step '" + step + "'");
    const TraceStep& s = (*replay_)[pos_];
    if (s.step != step) throw InvalidInput("trace has step '" + s.step + "' where '" + step + "' runs");
    return s;
  }
  const TraceStep& take(const std::string& step) {
    const TraceStep& s = peek(step);
    ++pos_;
    return s;
  }

  const Trace* replay_;
  std::size_t pos_ = 0;
  Trace trace_;
};

std::vector<int> first_n(const std::vector<int>& v, int n) {
  return {v.begin(), v.begin() + std::min<std::ptrdiff_t>(n, static_cast<std::ptrdiff_t>(v.size()))};
}

bool distinct(const std::vector<int>& v) {
  std::set<int> s(v.begin(), v.end());
  return s.size() == v.size();
}

bool within(const std::vector<int>& v, const VertexSet& pool) {
  return std::all_of(v.begin(), v.end(), [&](int x) { return pool.contains(x); });
}

Legal subset_of_size(const VertexSet& pool, int size) {
  return [pool, size](const std::vector<int>& v) {
    return static_cast<int>(v.size()) == size && distinct(v) && within(v, pool);
  };
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// ---------------------------------------------------------------------------
// Crystal from a phantom on a 2-clique.

using CrystalOrCliques = std::variant<Crystal, CliqueFamily>;

struct CrystalRun {
  const Graph& g;
  int f;
  int gs;
  Recorder& rec;
};

CrystalOrCliques crystal_step(CrystalRun& run, const Phantom& p) {
  const Graph& g = run.g;
  const int r = p.depth();
  if (r == 0) {
    run.rec.note("base", "cliques", {});
    return CliqueFamily{std::vector<std::vector<int>>(static_cast<std::size_t>(run.gs))};
  }
  const auto z0 = p.z(0).to_vector();
  const int zs[2] = {z0[0], z0[1]};
  const auto layer = p.gamma_of(1, {zs[0], zs[1]}).to_vector();

  // cliques[j][x][k] = K^{j+1}_{k+1, layer[x]}
  std::vector<std::vector<std::vector<std::vector<int>>>> cliques(2);
  for (std::size_t xi = 0; xi < layer.size(); ++xi) {
    for (int j = 0; j < 2; ++j) {
      VertexSet x0(g.order());
      x0.insert(zs[1 - j]);
      x0.insert(layer[xi]);
      auto sub = sub_phantom(g, p, x0, 1, r - 1);
      auto res = crystal_step(run, sub);
      if (auto* c = std::get_if<Crystal>(&res)) return *c;
      cliques[static_cast<std::size_t>(j)].push_back(std::get<CliqueFamily>(res).cliques);
    }
  }

  // u[j][x][k]: the smallest non-neighbour of z_j in K^j_{k,x}; -1 if z_j is
  // complete to it.
  VertexSet good(g.order());
  VertexSet bad(g.order());
  std::map<int, std::array<std::vector<int>, 2>> u;
  std::map<int, std::pair<int, int>> complete_clique;
  for (std::size_t xi = 0; xi < layer.size(); ++xi) {
    const int x = layer[xi];
    bool all_missing = true;
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < run.gs; ++k) {
        const auto& kk = cliques[static_cast<std::size_t>(j)][xi][static_cast<std::size_t>(k)];
        int miss = -1;
        for (int v : kk)
          if (!g.adjacent(v, zs[j])) {
            miss = v;
            break;
          }
        u[x][static_cast<std::size_t>(j)].push_back(miss);
        if (miss == -1) {
          all_missing = false;
          if (!complete_clique.count(x)) complete_clique[x] = {j, k};
        }
      }
    }
    (all_missing ? good : bad).insert(x);
  }

  std::vector<std::string> feasible;
  if (good.size() >= run.f) feasible.push_back("crystal");
  if (bad.size() >= run.gs) feasible.push_back("cliques");
  const auto branch = run.rec.branch("split", feasible);

  if (branch == "crystal") {
    auto xs = run.rec.select("split", branch, first_n(good.to_vector(), run.f), subset_of_size(good, run.f));
    Crystal c;
    c.z1 = zs[0];
    c.z2 = zs[1];
    for (int x : xs) c.centers.push_back({x, sorted(u[x][1]), sorted(u[x][0])});
    return c;
  }
  auto ys = run.rec.select("split", branch, first_n(bad.to_vector(), run.gs), subset_of_size(bad, run.gs));
  CliqueFamily out;
  for (int y : ys) {
    const auto xi = static_cast<std::size_t>(std::lower_bound(layer.begin(), layer.end(), y) - layer.begin());
    auto [j, k] = complete_clique.at(y);
    auto kk = cliques[static_cast<std::size_t>(j)][xi][static_cast<std::size_t>(k)];
    kk.push_back(y);
    out.cliques.push_back(sorted(std::move(kk)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cone tree from a phantom on a triangle.

using ConeResult = std::variant<Crystal, ConeTree, HypothesisViolation>;

struct ConeRun {
  const Graph& g;
  int d;
  int gs;
  int t;
  long long bound;  // 2^h t
  VertexSet rest;   // Z \ Z_0, the same at every level
  Recorder& rec;
};

// Vertices of `k` that share a neighbourhood in `rest` give an induced K_{2,2}
// with z (two non-adjacent ones) or a clique of size t.
std::optional<Witness> k_bound_witness(const Graph& g, const std::vector<int>& k, const VertexSet& rest, int z,
                                       int t) {
  std::map<std::vector<int>, std::vector<int>> groups;
  for (int x : k) groups[(g.neighbors(x) & rest).to_vector()].push_back(x);
  for (const auto& [y, members] : groups) {
    if (y.empty()) continue;
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b)
        if (!g.adjacent(members[a], members[b])) {
          Witness w{"biclique", sorted({members[a], members[b], y.front(), z}), {}};
          w.roles["side_a"] = {members[a], members[b]};
          w.roles["side_b"] = sorted({y.front(), z});
          return w;
        }
    if (static_cast<int>(members.size()) >= t) {
      auto c = first_n(members, t);
      return Witness{"clique", c, {{"clique", c}}};
    }
  }
  return std::nullopt;
}

ConeResult cone_step(ConeRun& run, const Phantom& p, int z1, int z2, int z) {
  const Graph& g = run.g;
  const int r = p.depth();
  if (r == 0) {
    run.rec.note("base", "cone-tree", {z});
    return ConeTree{{z}, {-1}, {0}};
  }
  const VertexSet gamma1 = p.gamma_of(1, {z1, z});
  const VertexSet gamma2 = p.gamma_of(1, {z2, z});
  VertexSet k1(g.order());
  VertexSet k2(g.order());
  for (int x : gamma1)
    if (g.neighbors(x).intersects(run.rest)) k1.insert(x);
  for (int x : gamma2)
    if (g.neighbors(x).intersects(run.rest)) k2.insert(x);
  run.rec.note("K-bound", "", (k1 | k2).to_vector());
  for (int i = 0; i < 2; ++i) {
    const VertexSet& ki = i == 0 ? k1 : k2;
    if (ki.size() < run.bound) continue;
    auto w = k_bound_witness(g, ki.to_vector(), run.rest, z, run.t);
    if (!w) throw std::logic_error("K-bound exceeded without a K_{2,2} or K_t witness");
    return HypothesisViolation{"K-bound",
                               "K_" + std::to_string(i + 1) + " at z = " + std::to_string(z) +
                                   " reaches 2^h t; the host has an induced " + w->kind,
                               static_cast<int>(std::min<long long>(run.bound, std::numeric_limits<int>::max())),
                               ki.size(), w};
  }

  const int need = run.d + run.gs;
  const VertexSet cand1 = gamma2 - k2;
  const VertexSet cand2 = gamma1 - k1;
  for (int i = 0; i < 2; ++i) {
    const VertexSet& c = i == 0 ? cand1 : cand2;
    if (c.size() < need)
      return HypothesisViolation{"select-L" + std::to_string(i + 1),
                                 "at z = " + std::to_string(z) + " only " + std::to_string(c.size()) +
                                     " layer-1 vertices are anticomplete to Z \\ Z0, d + g = " + std::to_string(need),
                                 need, c.size(), std::nullopt};
  }
  const auto l1 = run.rec.select("select-L1", "", first_n(cand1.to_vector(), need), subset_of_size(cand1, need));
  const auto l2 = run.rec.select("select-L2", "", first_n(cand2.to_vector(), need), subset_of_size(cand2, need));

  VertexSet miss[2] = {VertexSet(g.order()), VertexSet(g.order())};
  VertexSet hit[2] = {VertexSet(g.order()), VertexSet(g.order())};
  const int zs[2] = {z1, z2};
  for (int i = 0; i < 2; ++i)
    for (int x : i == 0 ? l1 : l2) (g.adjacent(x, zs[i]) ? hit[i] : miss[i]).insert(x);

  std::vector<std::string> feasible;
  if (miss[0].size() >= run.gs && miss[1].size() >= run.gs) feasible.push_back("crystal");
  if (hit[0].size() >= run.d) feasible.push_back("cone-1");
  if (hit[1].size() >= run.d) feasible.push_back("cone-2");
  const auto branch = run.rec.branch("split", feasible);

  if (branch == "crystal") {
    auto fallback = first_n(miss[0].to_vector(), run.gs);
    auto m2 = first_n(miss[1].to_vector(), run.gs);
    fallback.insert(fallback.end(), m2.begin(), m2.end());
    const int gs = run.gs;
    auto chosen = run.rec.select("split", branch, fallback, [&, gs](const std::vector<int>& v) {
      if (static_cast<int>(v.size()) != 2 * gs || !distinct(v)) return false;
      return within({v.begin(), v.begin() + gs}, miss[0]) && within({v.begin() + gs, v.end()}, miss[1]);
    });
    // M_1 lies in Gamma_1(z2 z) and misses z1, so it sits on the z2 side.
    std::vector<int> m1(chosen.begin(), chosen.begin() + run.gs);
    std::vector<int> m2s(chosen.begin() + run.gs, chosen.end());
    Crystal c;
    c.z1 = z1;
    c.z2 = z2;
    c.centers.push_back({z, sorted(m2s), sorted(m1)});
    return c;
  }

  const int j = branch == "cone-1" ? 0 : 1;
  const auto n_j =
      run.rec.select("split", branch, first_n(hit[j].to_vector(), run.d), subset_of_size(hit[j], run.d));
  ConeTree tree{{z}, {-1}, {0}};
  VertexSet used(g.order());
  used.insert(z);
  for (int zp : n_j) {
    VertexSet x0(g.order());
    for (int v : {z1, z2, zp}) x0.insert(v);
    auto sub = sub_phantom(g, p, x0, 1, r - 1);
    auto res = cone_step(run, sub, z1, z2, zp);
    if (!std::holds_alternative<ConeTree>(res)) return res;
    const auto& child = std::get<ConeTree>(res);
    const int offset = static_cast<int>(tree.vertices.size());
    for (std::size_t i = 0; i < child.vertices.size(); ++i) {
      const int v = child.vertices[i];
      if (used.contains(v)) throw std::logic_error("grafted subtrees share vertex " + std::to_string(v));
      used.insert(v);
      tree.vertices.push_back(v);
      tree.parent.push_back(child.parent[i] < 0 ? 0 : child.parent[i] + offset);
      tree.level.push_back(child.level[i] + 1);
    }
  }
  return tree;
}

std::string describe(const Violation& v) { return v.clause + ": " + v.detail; }

ExtractionOutcome wrap(ConeResult res, Trace trace) {
  ExtractionOutcome out;
  std::visit([&](auto&& x) { out.payload = std::move(x); }, std::move(res));
  out.trace = std::move(trace);
  return out;
}

ConeResult run_cone_tree(const Graph& g, const Phantom& p, const ConeTreeInput& in, Recorder& rec) {
  if (auto v = validate_phantom(g, p)) throw InvalidInput("invalid phantom: " + describe(*v));
  if (in.d < 1 || in.g < 1 || in.h < 1 || in.t < 1) throw InvalidInput("d, g, h and t must be positive");
  if (in.z_set.capacity() != g.order()) throw InvalidInput("Z is not a vertex set of the host graph");
  const int tri[3] = {in.z1, in.z2, in.z};
  for (int v : tri)
    if (!g.valid_vertex(v) || !in.z_set.contains(v)) throw InvalidInput("z1, z2, z must be vertices of Z");
  if (in.z1 == in.z2 || in.z1 == in.z || in.z2 == in.z || !g.adjacent(in.z1, in.z2) || !g.adjacent(in.z1, in.z) ||
      !g.adjacent(in.z2, in.z))
    throw InvalidInput("z1, z2, z must form a triangle");
  VertexSet z0(g.order());
  for (int v : tri) z0.insert(v);
  if (p.z(0).to_vector() != z0.to_vector()) throw InvalidInput("the phantom must be based on {z1, z2, z}");
  VertexSet nz = g.neighbors(in.z) & in.z_set;
  nz.erase(in.z1);
  nz.erase(in.z2);
  if (!nz.empty()) throw InvalidInput("N_Z(z) must be {z1, z2}");
  if ((p.z(p.depth()) & in.z_set).to_vector() != z0.to_vector()) throw InvalidInput("Z_r must meet Z in Z_0 only");
  if (in.z_set.size() > in.h) throw InvalidInput("|Z| exceeds h");

  long long bound = std::numeric_limits<long long>::max();
  if (in.h < 40) bound = (1LL << in.h) * in.t;
  ConeRun run{g, in.d, in.g, in.t, bound, in.z_set - z0, rec};
  auto res = cone_step(run, p, in.z1, in.z2, in.z);

  if (auto* c = std::get_if<Crystal>(&res)) {
    if (auto v = validate_crystal(g, *c)) throw std::logic_error("cone-tree crystal invalid: " + describe(*v));
    if (c->f() != 1 || c->g() != in.g) throw std::logic_error("cone-tree crystal has the wrong size");
    const VertexSet vc = g.make_set(c->vertices());
    if (!vc.is_subset_of(p.z(p.depth())) || !is_anticomplete_to(g, vc, run.rest))
      throw std::logic_error("cone-tree crystal leaves Z_r or touches Z \\ Z_0");
  } else if (auto* t = std::get_if<ConeTree>(&res)) {
    if (auto v = validate_cone_tree(g, p, in, *t)) throw std::logic_error("cone tree invalid: " + describe(*v));
  }
  return res;
}

// Stable b1 in a1 and b2 in a2 of the given sizes with b1 | b2 stable,
// lexicographically first.
std::optional<std::vector<int>> stable_sides(const Graph& g, const std::vector<int>& a1, int n1,
                                             const std::vector<int>& a2, int n2) {
  std::vector<int> chosen;
  std::function<bool(const std::vector<int>&, std::size_t, int, bool)> go =
      [&](const std::vector<int>& pool, std::size_t from, int left, bool first) -> bool {
    if (left == 0) return first ? go(a2, 0, n2, false) : true;
    for (std::size_t i = from; i < pool.size(); ++i) {
      const int v = pool[i];
      if (std::any_of(chosen.begin(), chosen.end(), [&](int c) { return c == v || g.adjacent(c, v); })) continue;
      chosen.push_back(v);
      if (go(pool, i + 1, left - 1, first)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (go(a1, 0, n1, true)) return chosen;
  return std::nullopt;
}

// Kuhn matching of side slots to vertices; slots[s] lists eligible vertices.
std::optional<std::vector<int>> match_slots(const std::vector<std::vector<int>>& slots, int n) {
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  std::vector<int> taken(slots.size(), -1);
  std::vector<char> seen;
  std::function<bool(int)> augment = [&](int s) {
    for (int v : slots[static_cast<std::size_t>(s)]) {
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = 1;
      const int o = owner[static_cast<std::size_t>(v)];
      if (o == -1 || augment(o)) {
        owner[static_cast<std::size_t>(v)] = s;
        taken[static_cast<std::size_t>(s)] = v;
        return true;
      }
    }
    return false;
  };
  for (std::size_t s = 0; s < slots.size(); ++s) {
    seen.assign(static_cast<std::size_t>(n), 0);
    if (!augment(static_cast<int>(s))) return std::nullopt;
  }
  return taken;
}

}  // namespace

std::string ExtractionOutcome::variant() const {
  static const char* names[] = {"crystal", "clique-family", "cone-tree", "embedding", "hypothesis-violation"};
  return names[payload.index()];
}

CrystallizedVertex find_crystallized_vertex(const Graph& nabla) {
  const int n = nabla.order();
  if (n < 4) throw InvalidInput("a crystallized vertex needs at least four vertices");
  if (!is_k_tree(nabla, 2)) throw InvalidInput("input is not a 2-tree");
  Recorder rec(nullptr);
  VertexSet alive = nabla.all();
  std::vector<int> peeled;
  while (alive.size() > 4) {
    int v = -1;
    for (int u : alive)
      if ((nabla.neighbors(u) & alive).size() == 2) {
        v = u;
        break;
      }
    if (v == -1) throw std::logic_error("2-tree without a degree-2 vertex");
    peeled.push_back(v);
    alive.erase(v);
  }
  std::vector<int> deg3;
  std::vector<int> deg2;
  for (int u : alive) ((nabla.neighbors(u) & alive).size() == 3 ? deg3 : deg2).push_back(u);
  if (deg3.size() != 2 || deg2.size() != 2) throw std::logic_error("peeling did not end at a diamond");
  CrystallizedCertificate c{deg3[0], deg3[1], deg2[0], {deg2[1]}, {}};
  rec.note("base", "diamond", alive.to_vector());

  for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) {
    const int v = *it;
    const auto nb = (nabla.neighbors(v) & alive).to_vector();
    const int a = nb[0];
    const int b = nb[1];
    auto side_of = [&](int x) {
      if (std::binary_search(c.s1.begin(), c.s1.end(), x)) return 1;
      if (std::binary_search(c.s2.begin(), c.s2.end(), x)) return 2;
      return 0;
    };
    auto anchor = [&](int i) { return i == 1 ? c.z1 : c.z2; };
    const int sa = side_of(a);
    const int sb = side_of(b);
    if (sa == 0 && sb == 0 && a != c.z && b != c.z) {
      rec.note("patch", "keep", {v});
    } else if (sa != 0 || sb != 0) {
      const int x = sa != 0 ? a : b;
      const int y = sa != 0 ? b : a;
      const int i = sa != 0 ? sa : sb;
      if (y == anchor(i)) {
        c = {x, anchor(i), c.z, {v}, {}};
        rec.note("patch", "side-anchor", {v, x});
      } else if (y == c.z) {
        c = {x, c.z, anchor(i), {v}, {}};
        rec.note("patch", "side-center", {v, x});
      } else {
        throw std::logic_error("degree-2 vertex attached to an unexpected edge");
      }
    } else {
      const int y = a == c.z ? b : a;
      auto& side = y == c.z1 ? c.s1 : c.s2;
      if (y != c.z1 && y != c.z2) throw std::logic_error("degree-2 vertex attached to an unexpected edge");
      side.insert(std::lower_bound(side.begin(), side.end(), v), v);
      rec.note("patch", y == c.z1 ? "extend-1" : "extend-2", {v});
    }
    alive.insert(v);
  }
  if (auto v = validate_crystallized(nabla, c)) throw std::logic_error("patched certificate invalid: " + describe(*v));
  if (!is_crystallized(nabla, c.z)) throw std::logic_error("scan disagrees with the peeled certificate");
  return {c, rec.finish()};
}

CrystallizedReduction reduce_crystallized(const Graph& nabla) {
  CrystallizedReduction out;
  out.certificate = find_crystallized_vertex(nabla).certificate;
  VertexSet keep = nabla.all();
  for (int x : out.certificate.s1) keep.erase(x);
  for (int x : out.certificate.s2) keep.erase(x);
  out.kept = keep.to_vector();
  out.graph = induced_subgraph(nabla, keep).graph;
  return out;
}

ExtractionOutcome clear_crystal(const Graph& g, const Crystal& c, int f, int g_size, const Trace* replay) {
  if (f < 1 || g_size < 1) throw InvalidInput("f and g must be positive");
  if (auto v = validate_crystal(g, c)) throw InvalidInput("invalid crystal: " + describe(*v));
  Recorder rec(replay);
  ExtractionOutcome out;
  std::vector<CrystalCenter> cleared;
  for (const auto& cc : c.centers) {
    // u pairs the two sides in index order.
    std::vector<VertexSet> pairs;
    std::map<int, int> partner;
    for (std::size_t k = 0; k < cc.s1.size(); ++k) {
      pairs.push_back(g.make_set(std::vector<int>{cc.s1[k], cc.s2[k]}));
      partner[cc.s1[k]] = cc.s2[k];
    }
    auto picked = anticomplete_family(g, pairs, 2 * g_size);
    if (!picked) {
      out.payload = HypothesisViolation{"antistable",
                                        "center " + std::to_string(cc.z) + ": no " + std::to_string(2 * g_size) +
                                            " pairwise anticomplete side pairs among " +
                                            std::to_string(pairs.size()),
                                        2 * g_size, static_cast<int>(pairs.size()), std::nullopt};
      rec.note("antistable", "short", {cc.z});
      out.trace = rec.finish();
      return out;
    }
    std::vector<int> fallback;
    if (picked)
      for (int idx : *picked) fallback.push_back(cc.s1[static_cast<std::size_t>(idx)]);
    const VertexSet s1_pool = g.make_set(cc.s1);
    auto xs = rec.select("antistable", std::to_string(cc.z), fallback, [&](const std::vector<int>& v) {
      if (!subset_of_size(s1_pool, 2 * g_size)(v)) return false;
      for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = a + 1; b < v.size(); ++b) {
          const auto pa = g.make_set(std::vector<int>{v[a], partner.at(v[a])});
          const auto pb = g.make_set(std::vector<int>{v[b], partner.at(v[b])});
          if (!is_anticomplete_to(g, pa, pb)) return false;
        }
      return true;
    });
    CrystalCenter out_c{cc.z, {}, {}};
    for (int k = 0; k < g_size; ++k) out_c.s1.push_back(xs[static_cast<std::size_t>(k)]);
    for (int k = g_size; k < 2 * g_size; ++k) out_c.s2.push_back(partner.at(xs[static_cast<std::size_t>(k)]));
    out_c.s1 = sorted(out_c.s1);
    out_c.s2 = sorted(out_c.s2);
    cleared.push_back(std::move(out_c));
  }

  std::vector<VertexSet> blocks;
  for (const auto& cc : cleared) {
    auto vs = cc.s1;
    vs.insert(vs.end(), cc.s2.begin(), cc.s2.end());
    vs.push_back(cc.z);
    blocks.push_back(g.make_set(vs));
  }
  auto picked = anticomplete_family(g, blocks, f);
  if (!picked) {
    out.payload = HypothesisViolation{"select-centers",
                                      "no " + std::to_string(f) + " pairwise anticomplete center blocks among " +
                                          std::to_string(blocks.size()),
                                      f, static_cast<int>(blocks.size()), std::nullopt};
    rec.note("select-centers", "short", {});
    out.trace = rec.finish();
    return out;
  }
  std::vector<int> fallback;
  std::map<int, std::size_t> block_of;
  for (std::size_t i = 0; i < cleared.size(); ++i) block_of[cleared[i].z] = i;
  if (picked)
    for (int idx : *picked) fallback.push_back(cleared[static_cast<std::size_t>(idx)].z);
  VertexSet center_pool(g.order());
  for (const auto& cc : cleared) center_pool.insert(cc.z);
  auto zs = rec.select("select-centers", "", fallback, [&](const std::vector<int>& v) {
    if (!subset_of_size(center_pool, f)(v)) return false;
    for (std::size_t a = 0; a < v.size(); ++a)
      for (std::size_t b = a + 1; b < v.size(); ++b)
        if (!is_anticomplete_to(g, blocks[block_of.at(v[a])], blocks[block_of.at(v[b])])) return false;
    return true;
  });
  Crystal result{c.z1, c.z2, {}};
  for (int z : zs) result.centers.push_back(cleared[block_of.at(z)]);
  if (!is_clear_crystal(g, result)) throw std::logic_error("cleared crystal is not clear");
  out.payload = std::move(result);
  out.trace = rec.finish();
  return out;
}

ExtractionOutcome phantom_to_crystal(const Graph& g, const Phantom& p, int f, int g_size, const Trace* replay) {
  if (f < 1 || g_size < 1) throw InvalidInput("f and g must be positive");
  if (auto v = validate_phantom(g, p)) throw InvalidInput("invalid phantom: " + describe(*v));
  if (p.z(0).size() != 2) throw InvalidInput("Z_0 must be a 2-clique");
  if (p.d != f + g_size) throw InvalidInput("the phantom needs d = f + g");
  const auto z0 = p.z(0).to_vector();
  if (!g.adjacent(z0[0], z0[1])) throw InvalidInput("Z_0 must be a 2-clique");
  Recorder rec(replay);
  CrystalRun run{g, f, g_size, rec};
  auto res = crystal_step(run, p);
  ExtractionOutcome out;
  if (auto* c = std::get_if<Crystal>(&res)) {
    if (auto v = validate_crystal(g, *c)) throw std::logic_error("extracted crystal invalid: " + describe(*v));
    if (c->f() != f || c->g() != g_size || !g.make_set(c->vertices()).is_subset_of(p.z(p.depth())))
      throw std::logic_error("extracted crystal has the wrong shape");
    out.payload = std::move(*c);
  } else {
    auto& fam = std::get<CliqueFamily>(res);
    if (auto v = validate_clique_family(g, p.z(0), fam, p.depth(), g_size))
      throw std::logic_error("extracted clique family invalid: " + describe(*v));
    out.payload = std::move(fam);
  }
  out.trace = rec.finish();
  return out;
}

ExtractionOutcome phantom_to_cone_tree(const Graph& g, const Phantom& p, const ConeTreeInput& in,
                                       const Trace* replay) {
  Recorder rec(replay);
  auto res = run_cone_tree(g, p, in, rec);
  return wrap(std::move(res), rec.finish());
}

ExtractionOutcome grow_2_tree(const Graph& g, const Graph& nabla, const std::vector<int>& prime_image,
                              const Phantom& p, const GrowParams& params, const Trace* replay) {
  if (nabla.order() < 4 || !is_k_tree(nabla, 2)) throw InvalidInput("nabla must be a 2-tree on at least 4 vertices");
  const auto red = reduce_crystallized(nabla);
  const auto& cert = red.certificate;
  if (prime_image.size() != red.kept.size()) throw InvalidInput("embedding does not cover the reduced 2-tree");
  VertexSet z_set(g.order());
  for (int v : prime_image) {
    if (!g.valid_vertex(v) || z_set.contains(v)) throw InvalidInput("embedding must use distinct host vertices");
    z_set.insert(v);
  }
  const int m = static_cast<int>(prime_image.size());
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (g.adjacent(prime_image[static_cast<std::size_t>(a)], prime_image[static_cast<std::size_t>(b)]) !=
          red.graph.adjacent(a, b))
        throw InvalidInput("embedding is not an induced copy of the reduced 2-tree");
  auto phi = [&](int v) {
    auto it = std::lower_bound(red.kept.begin(), red.kept.end(), v);
    return prime_image[static_cast<std::size_t>(it - red.kept.begin())];
  };
  if (auto v = validate_phantom(g, p)) throw InvalidInput("invalid phantom: " + describe(*v));
  if (params.depth < 0 || params.depth > p.depth()) throw InvalidInput("depth exceeds the phantom");
  VertexSet tri(g.order());
  for (int v : {cert.z1, cert.z2, cert.z}) tri.insert(phi(v));
  if (!tri.is_subset_of(p.z(0)) || !p.z(0).is_subset_of(z_set))
    throw InvalidInput("the phantom base must lie between the anchor triangle and the image");
  const Phantom q = sub_phantom(g, p, tri, 0, params.depth);
  if ((q.z(params.depth) & z_set).to_vector() != tri.to_vector())
    throw InvalidInput("the phantom meets the image outside the anchor triangle");

  const int n1 = static_cast<int>(cert.s1.size());
  const int n2 = static_cast<int>(cert.s2.size());
  ConeTreeInput in{z_set, phi(cert.z1), phi(cert.z2), phi(cert.z), params.d, std::max(n1, n2), z_set.size(),
                   params.t};
  Recorder rec(replay);
  auto res = run_cone_tree(g, q, in, rec);
  if (!std::holds_alternative<Crystal>(res)) return wrap(std::move(res), rec.finish());

  const auto& cc = std::get<Crystal>(res).centers.front();
  auto sides = stable_sides(g, cc.s1, n1, cc.s2, n2);
  if (!sides) {
    ExtractionOutcome out;
    out.payload = HypothesisViolation{"stable-sides",
                                      "crystal sides hold no stable sets of sizes " + std::to_string(n1) + " and " +
                                          std::to_string(n2),
                                      n1 + n2, static_cast<int>(cc.s1.size() + cc.s2.size()), std::nullopt};
    rec.note("graft", "short", {});
    out.trace = rec.finish();
    return out;
  }
  const VertexSet a1 = g.make_set(cc.s1);
  const VertexSet a2 = g.make_set(cc.s2);
  auto chosen = rec.select("graft", "", *sides, [&](const std::vector<int>& v) {
    if (static_cast<int>(v.size()) != n1 + n2 || !distinct(v)) return false;
    if (!within({v.begin(), v.begin() + n1}, a1) || !within({v.begin() + n1, v.end()}, a2)) return false;
    return is_stable_set(g, g.make_set(v));
  });

  Embedding e;
  e.image.assign(static_cast<std::size_t>(nabla.order()), -1);
  for (std::size_t i = 0; i < red.kept.size(); ++i) e.image[static_cast<std::size_t>(red.kept[i])] = prime_image[i];
  e.image[static_cast<std::size_t>(cert.z)] = cc.z;
  for (int k = 0; k < n1; ++k) e.image[static_cast<std::size_t>(cert.s1[static_cast<std::size_t>(k)])] = chosen[static_cast<std::size_t>(k)];
  for (int k = 0; k < n2; ++k)
    e.image[static_cast<std::size_t>(cert.s2[static_cast<std::size_t>(k)])] = chosen[static_cast<std::size_t>(n1 + k)];
  for (int a = 0; a < nabla.order(); ++a)
    for (int b = a + 1; b < nabla.order(); ++b)
      if (e.image[static_cast<std::size_t>(a)] == e.image[static_cast<std::size_t>(b)] ||
          g.adjacent(e.image[static_cast<std::size_t>(a)], e.image[static_cast<std::size_t>(b)]) !=
              nabla.adjacent(a, b))
        throw std::logic_error("grown embedding is not an induced copy");
  ExtractionOutcome out;
  out.payload = std::move(e);
  out.trace = rec.finish();
  return out;
}

std::optional<Crystal> brute_force_crystal(const Graph& g, int f, int g_size, const BruteForceOptions& opts) {
  if (f < 1 || g_size < 1) throw InvalidInput("f and g must be positive");
  if (g.order() > opts.guard) throw ScaleLimit("brute_force_crystal", g.order(), opts.guard);
  const int n = g.order();
  for (auto [z1, z2] : g.edges()) {
    // side[i][z]: vertices that may sit in S_{i,z}.
    std::vector<std::array<std::vector<int>, 2>> side(static_cast<std::size_t>(n));
    std::vector<int> centers;
    for (int z = 0; z < n; ++z) {
      if (z == z1 || z == z2) continue;
      for (int x = 0; x < n; ++x) {
        if (x == z || x == z1 || x == z2 || !g.adjacent(x, z)) continue;
        if (g.adjacent(x, z1) && !g.adjacent(x, z2)) side[static_cast<std::size_t>(z)][0].push_back(x);
        if (g.adjacent(x, z2) && !g.adjacent(x, z1)) side[static_cast<std::size_t>(z)][1].push_back(x);
      }
      if (static_cast<int>(side[static_cast<std::size_t>(z)][0].size()) >= g_size &&
          static_cast<int>(side[static_cast<std::size_t>(z)][1].size()) >= g_size)
        centers.push_back(z);
    }
    std::vector<int> pick;
    std::optional<Crystal> found;
    std::function<bool(std::size_t)> go = [&](std::size_t from) -> bool {
      if (static_cast<int>(pick.size()) == f) {
        std::vector<std::vector<int>> slots;
        for (int z : pick)
          for (int i = 0; i < 2; ++i)
            for (int k = 0; k < g_size; ++k) {
              std::vector<int> ok;
              for (int x : side[static_cast<std::size_t>(z)][static_cast<std::size_t>(i)])
                if (std::find(pick.begin(), pick.end(), x) == pick.end()) ok.push_back(x);
              slots.push_back(std::move(ok));
            }
        auto m = match_slots(slots, n);
        if (!m) return false;
        Crystal c{z1, z2, {}};
        std::size_t s = 0;
        for (int z : pick) {
          CrystalCenter cc{z, {}, {}};
          for (int k = 0; k < g_size; ++k) cc.s1.push_back((*m)[s++]);
          for (int k = 0; k < g_size; ++k) cc.s2.push_back((*m)[s++]);
          cc.s1 = sorted(cc.s1);
          cc.s2 = sorted(cc.s2);
          c.centers.push_back(std::move(cc));
        }
        found = std::move(c);
        return true;
      }
      for (std::size_t i = from; i < centers.size(); ++i) {
        pick.push_back(centers[i]);
        if (go(i + 1)) return true;
        pick.pop_back();
      }
      return false;
    };
    if (go(0)) return found;
  }
  return std::nullopt;
}

Validation validate_clique_family(const Graph& g, const VertexSet& z0, const CliqueFamily& family, int r,
                                  int count) {
  if (static_cast<int>(family.cliques.size()) != count)
    return Violation{"count", "expected " + std::to_string(count) + " cliques, found " +
                                  std::to_string(family.cliques.size())};
  VertexSet used = z0;
  for (std::size_t i = 0; i < family.cliques.size(); ++i) {
    const auto& k = family.cliques[i];
    const auto tag = "clique " + std::to_string(i) + " ";
    if (static_cast<int>(k.size()) != r) return Violation{"size", tag + "has size " + std::to_string(k.size())};
    for (int v : k) {
      if (!g.valid_vertex(v)) return Violation{"range", tag + "vertex out of range"};
      if (used.contains(v)) return Violation{"disjoint", tag + "reuses vertex " + std::to_string(v)};
      used.insert(v);
    }
    const VertexSet ks = g.make_set(k);
    if (!is_clique(g, ks)) return Violation{"clique", tag + "is not a clique"};
    if (!is_complete_to(g, z0, ks)) return Violation{"complete", tag + "is not complete to Z_0"};
  }
  return std::nullopt;
}

Validation validate_cone_tree(const Graph& g, const Phantom& p, const ConeTreeInput& in, const ConeTree& tree) {
  const auto n = tree.vertices.size();
  if (n == 0 || tree.parent.size() != n || tree.level.size() != n)
    return Violation{"shape", "vertex, parent and level lists disagree"};
  if (tree.root() != in.z || tree.parent[0] != -1 || tree.level[0] != 0)
    return Violation{"shape", "the root must be z at level 0"};
  const int r = p.depth();
  std::set<int> seen;
  std::vector<int> children(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const int u = tree.vertices[i];
    if (!g.valid_vertex(u) || !seen.insert(u).second)
      return Violation{"shape", "vertex " + std::to_string(u) + " is out of range or repeated"};
    if (i == 0) continue;
    const int pi = tree.parent[i];
    if (pi < 0 || static_cast<std::size_t>(pi) >= n || tree.level[i] != tree.level[static_cast<std::size_t>(pi)] + 1)
      return Violation{"shape", "vertex " + std::to_string(u) + " has a bad parent or level"};
    if (tree.level[i] > r) return Violation{"shape", "vertex " + std::to_string(u) + " lies below level r"};
    ++children[static_cast<std::size_t>(pi)];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const int want = tree.level[i] < r ? in.d : 0;
    if (children[i] != want)
      return Violation{"shape", "vertex " + std::to_string(tree.vertices[i]) + " has " + std::to_string(children[i]) +
                                    " children, T_{d,r} needs " + std::to_string(want)};
  }
  for (std::size_t i = 0; i < n; ++i) {
    const int u = tree.vertices[i];
    if (u == in.z1 || u == in.z2) return Violation{"cone", "the tree contains an anchor"};
    if (!g.adjacent(u, in.z1) || !g.adjacent(u, in.z2))
      return Violation{"cone", "vertex " + std::to_string(u) + " misses an anchor"};
    if (i > 0 && in.z_set.contains(u)) return Violation{"Z", "vertex " + std::to_string(u) + " lies in Z"};
    if (i == 0) continue;
    const int up = tree.vertices[static_cast<std::size_t>(tree.parent[i])];
    if (!g.adjacent(u, up)) return Violation{"subgraph", "tree edge " + std::to_string(up) + "-" + std::to_string(u)};
    const int level = tree.level[i];
    const auto& m = p.gamma[static_cast<std::size_t>(level - 1)];
    bool ok = false;
    for (int a : {in.z1, in.z2}) {
      auto it = m.find(make_edge(up, a));
      if (it != m.end() && it->second.contains(u)) ok = true;
    }
    if (!ok)
      return Violation{"level", "vertex " + std::to_string(u) + " is in neither Gamma_" + std::to_string(level) +
                                    " set of its parent " + std::to_string(up)};
  }
  return std::nullopt;
}

nlohmann::ordered_json to_json(const TraceStep& s) {
  nlohmann::ordered_json j;
  j["step"] = s.step;
  j["branch"] = s.branch;
  j["chosen"] = s.chosen;
  return j;
}

nlohmann::ordered_json to_json(const HypothesisViolation& v) {
  nlohmann::ordered_json j;
  j["step"] = v.step;
  j["detail"] = v.detail;
  j["needed"] = v.needed;
  j["available"] = v.available;
  j["witness"] = to_json(v.witness);
  return j;
}

nlohmann::ordered_json to_json(const CliqueFamily& f) {
  nlohmann::ordered_json j;
  j["cliques"] = f.cliques;
  return j;
}

nlohmann::ordered_json to_json(const ConeTree& t) {
  nlohmann::ordered_json j;
  j["root"] = t.root();
  j["vertices"] = t.vertices;
  std::vector<int> parents;
  for (int p : t.parent) parents.push_back(p < 0 ? -1 : t.vertices[static_cast<std::size_t>(p)]);
  j["parent"] = parents;
  j["level"] = t.level;
  return j;
}

nlohmann::ordered_json to_json(const Embedding& e) {
  nlohmann::ordered_json j;
  j["image"] = e.image;
  return j;
}

nlohmann::ordered_json to_json(const ExtractionOutcome& o) {
  nlohmann::ordered_json j;
  j["variant"] = o.variant();
  j["payload"] = std::visit([](const auto& x) { return to_json(x); }, o.payload);
  auto trace = nlohmann::ordered_json::array();
  for (const auto& s : o.trace) trace.push_back(to_json(s));
  j["trace"] = std::move(trace);
  return j;
}

Trace trace_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidInput("trace must be an array");
  Trace out;
  try {
    for (const auto& s : j)
      out.push_back({s.at("step").get<std::string>(), s.value("branch", std::string{}),
                     s.value("chosen", std::vector<int>{})});
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed trace: ") + e.what());
  }
  return out;
}

}  // namespace obslab
