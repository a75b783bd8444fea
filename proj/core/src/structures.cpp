#include "obslab/structures.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "obslab/error.hpp"
#include "obslab/generators.hpp"
#include "obslab/graph_io.hpp"

namespace obslab {

namespace {

std::string edge_key(Edge e) { return std::to_string(e.first) + "-" + std::to_string(e.second); }

Edge parse_edge_key(const std::string& key) {
  auto dash = key.find('-');
  if (dash == std::string::npos) throw InvalidInput("edge key \"" + key + "\" is not of the form u-v");
  try {
    std::size_t used_u = 0, used_v = 0;
    int u = std::stoi(key.substr(0, dash), &used_u);
    int v = std::stoi(key.substr(dash + 1), &used_v);
    if (used_u != dash || used_v != key.size() - dash - 1) throw InvalidInput("bad edge key \"" + key + "\"");
    return make_edge(u, v);
  } catch (const std::logic_error&) {
    throw InvalidInput("bad edge key \"" + key + "\"");
  }
}

std::vector<Edge> edges_within(const Graph& g, const VertexSet& x) {
  std::vector<Edge> out;
  for (int u : x) {
    auto within = g.neighbors(u) & x;
    for (int v = within.next(u); v != -1; v = within.next(v)) out.emplace_back(u, v);
  }
  return out;
}

}  // namespace

const VertexSet& Phantom::gamma_of(int i, Edge e) const {
  if (i < 1 || i > depth()) throw InvalidInput("phantom layer " + std::to_string(i) + " out of range");
  const auto& m = gamma[static_cast<std::size_t>(i - 1)];
  auto it = m.find(make_edge(e.first, e.second));
  if (it == m.end()) throw InvalidInput("edge " + edge_key(e) + " not in the domain of Gamma_" + std::to_string(i));
  return it->second;
}

Validation validate_phantom(const Graph& g, const Phantom& p) {
  if (p.layers.empty()) return Violation{"P1", "no layers"};
  if (p.d < 1) return Violation{"P2", "d must be at least 1"};
  for (std::size_t i = 0; i < p.layers.size(); ++i)
    if (p.layers[i].capacity() != g.order())
      return Violation{"P1", "layer " + std::to_string(i) + " is not a vertex set of the host graph"};
  for (int i = 1; i <= p.depth(); ++i)
    if (!p.z(i - 1).is_subset_of(p.z(i)))
      return Violation{"P1", "Z_" + std::to_string(i - 1) + " is not contained in Z_" + std::to_string(i)};
  if (static_cast<int>(p.gamma.size()) != p.depth())
    return Violation{"P2", "expected " + std::to_string(p.depth()) + " maps, found " + std::to_string(p.gamma.size())};
  for (int i = 1; i <= p.depth(); ++i) {
    const auto& m = p.gamma[static_cast<std::size_t>(i - 1)];
    const auto tag = "layer " + std::to_string(i) + " ";
    auto domain = edges_within(g, p.z(i - 1));
    for (auto e : domain)
      if (!m.count(e)) return Violation{"P2", tag + "edge " + edge_key(e) + " has no Gamma set"};
    if (m.size() != domain.size()) {
      for (const auto& [e, s] : m)
        if (!std::binary_search(domain.begin(), domain.end(), e))
          return Violation{"P2", tag + "key " + edge_key(e) + " is not an edge of G[Z_" + std::to_string(i - 1) + "]"};
    }
    const VertexSet fresh = p.z(i) - p.z(i - 1);
    VertexSet used(g.order());
    for (const auto& [e, s] : m) {
      if (s.capacity() != g.order()) return Violation{"P2", tag + "edge " + edge_key(e) + " set has wrong capacity"};
      if (!s.is_subset_of(fresh))
        return Violation{"P2", tag + "edge " + edge_key(e) + " set is not inside Z_i minus Z_{i-1}"};
      if (s.size() != p.d)
        return Violation{"P2", tag + "edge " + edge_key(e) + " set has size " + std::to_string(s.size())};
      if (!s.is_subset_of(g.neighbors(e.first)) || !s.is_subset_of(g.neighbors(e.second)))
        return Violation{"P2", tag + "edge " + edge_key(e) + " ends are not complete to its set"};
      if (s.intersects(used)) return Violation{"P2", tag + "edge " + edge_key(e) + " set meets another edge's set"};
      used |= s;
    }
  }
  return std::nullopt;
}

Phantom sub_phantom(const Graph& g, const Phantom& p, const VertexSet& x0, int i, int r_prime) {
  if (i < 0 || r_prime < 0 || i + r_prime > p.depth())
    throw InvalidInput("sub_phantom needs 0 <= i, 0 <= r' and i + r' <= r");
  if (x0.capacity() != g.order() || !x0.is_subset_of(p.z(i))) throw InvalidInput("X0 must be a subset of Z_i");
  Phantom out;
  out.d = p.d;
  out.layers.push_back(x0);
  for (int j = 1; j <= r_prime; ++j) {
    const VertexSet& prev = out.layers.back();
    VertexSet next = prev;
    std::map<Edge, VertexSet> upsilon;
    for (auto e : edges_within(g, prev)) {
      const auto& s = p.gamma_of(i + j, e);
      upsilon.emplace(e, s);
      next |= s;
    }
    out.layers.push_back(std::move(next));
    out.gamma.push_back(std::move(upsilon));
  }
  return out;
}

int Crystal::g() const {
  if (centers.empty()) return -1;
  const auto g0 = centers.front().s1.size();
  for (const auto& c : centers)
    if (c.s1.size() != g0 || c.s2.size() != g0) return -1;
  return static_cast<int>(g0);
}

std::vector<int> Crystal::vertices() const {
  std::vector<int> out;
  for (const auto& c : centers) {
    out.push_back(c.z);
    out.insert(out.end(), c.s1.begin(), c.s1.end());
    out.insert(out.end(), c.s2.begin(), c.s2.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Validation validate_crystal(const Graph& g, const Crystal& c) {
  if (!g.valid_vertex(c.z1) || !g.valid_vertex(c.z2) || c.z1 == c.z2 || !g.adjacent(c.z1, c.z2))
    throw InvalidInput("crystal anchors must be an edge of the host graph");
  if (c.centers.empty()) return Violation{"CR1", "S is empty"};
  std::set<int> s;
  for (const auto& cc : c.centers) {
    if (!g.valid_vertex(cc.z)) return Violation{"CR1", "center " + std::to_string(cc.z) + " out of range"};
    if (cc.z == c.z1 || cc.z == c.z2) return Violation{"CR1", "center " + std::to_string(cc.z) + " is an anchor"};
    if (!s.insert(cc.z).second) return Violation{"CR1", "center " + std::to_string(cc.z) + " repeated"};
  }
  const int g_size = c.g();
  if (g_size < 1) return Violation{"CR2", "side sets must all have the same positive size"};
  std::set<int> seen;
  for (const auto& cc : c.centers) {
    for (const auto* side : {&cc.s1, &cc.s2}) {
      for (int x : *side) {
        if (!g.valid_vertex(x)) return Violation{"CR2", "side vertex " + std::to_string(x) + " out of range"};
        if (x == c.z1 || x == c.z2 || s.count(x))
          return Violation{"CR2", "side vertex " + std::to_string(x) + " meets S or the anchors"};
        if (!seen.insert(x).second) return Violation{"CR2", "side vertex " + std::to_string(x) + " used twice"};
      }
    }
  }
  for (const auto& cc : c.centers) {
    for (int i = 1; i <= 2; ++i) {
      const auto& side = i == 1 ? cc.s1 : cc.s2;
      const int zi = i == 1 ? c.z1 : c.z2;
      const int zo = i == 1 ? c.z2 : c.z1;
      for (int x : side) {
        if (!g.adjacent(x, zi) || !g.adjacent(x, cc.z) || g.adjacent(x, zo))
          return Violation{"CR3", "vertex " + std::to_string(x) + " in S_" + std::to_string(i) + "," +
                                      std::to_string(cc.z) + " does not see exactly {z" + std::to_string(i) + ", " +
                                      std::to_string(cc.z) + "}"};
      }
    }
  }
  return std::nullopt;
}

bool is_clear_crystal(const Graph& g, const Crystal& c) {
  if (validate_crystal(g, c)) return false;
  VertexSet centers(g.order());
  for (const auto& cc : c.centers) centers.insert(cc.z);
  if (!is_stable_set(g, centers)) return false;
  std::vector<VertexSet> sides;
  for (const auto& cc : c.centers) {
    sides.push_back(g.make_set(cc.s1));
    sides.push_back(g.make_set(cc.s2));
  }
  for (std::size_t a = 0; a < sides.size(); ++a) {
    if (!is_stable_set(g, sides[a])) return false;
    for (std::size_t b = a + 1; b < sides.size(); ++b)
      if (!is_anticomplete_to(g, sides[a], sides[b])) return false;
  }
  return true;
}

std::optional<CrystalSpec> crystal_realizes_graph(const Graph& g, const Crystal& c) {
  if (!is_clear_crystal(g, c)) return std::nullopt;
  CrystalSpec spec;
  std::vector<int> order{c.z1, c.z2};
  for (const auto& cc : c.centers) {
    spec.arms.emplace_back(static_cast<int>(cc.s1.size()), static_cast<int>(cc.s2.size()));
    order.push_back(cc.z);
    order.insert(order.end(), cc.s1.begin(), cc.s1.end());
    order.insert(order.end(), cc.s2.begin(), cc.s2.end());
  }
  const Graph target = crystal_graph(spec);
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size(); ++b)
      if (g.adjacent(order[a], order[b]) != target.adjacent(static_cast<int>(a), static_cast<int>(b)))
        return std::nullopt;
  return spec;
}

Validation validate_kaleidoscope(const Graph& g, const Kaleidoscope& k) {
  for (int v : {k.a, k.x, k.y})
    if (!g.valid_vertex(v)) return Violation{"K1", "vertex " + std::to_string(v) + " out of range"};
  if (k.x == k.y || k.a == k.x || k.a == k.y) return Violation{"K1", "a, x, y must be distinct"};
  if (!g.adjacent(k.a, k.x) || !g.adjacent(k.a, k.y) || g.adjacent(k.x, k.y))
    return Violation{"K1", "x-a-y is not a path"};
  std::set<int> interiors;
  for (std::size_t i = 0; i < k.paths.size(); ++i) {
    const auto& w = k.paths[i];
    const auto tag = "path " + std::to_string(i) + " ";
    if (w.size() < 2 || w.front() != k.x || w.back() != k.y) return Violation{"K2", tag + "does not run from x to y"};
    if (std::find(w.begin(), w.end(), k.a) != w.end()) return Violation{"K2", tag + "uses a"};
    for (int v : w)
      if (!g.valid_vertex(v)) return Violation{"K2", tag + "vertex out of range"};
    if (!is_induced_path(g, w)) return Violation{"K2", tag + "is not an induced path"};
    for (std::size_t j = 1; j + 1 < w.size(); ++j)
      if (!interiors.insert(w[j]).second)
        return Violation{"K2", tag + "shares interior vertex " + std::to_string(w[j])};
  }
  for (std::size_t i = 0; i < k.paths.size(); ++i) {
    const auto& w = k.paths[i];
    for (std::size_t j = 1; j + 1 < w.size(); ++j)
      if (g.adjacent(k.a, w[j]))
        return Violation{"K3", "a is adjacent to interior vertex " + std::to_string(w[j]) + " of path " +
                                   std::to_string(i)};
  }
  return std::nullopt;
}

Validation check_mirrored(const Graph& g, const Kaleidoscope& k, const VertexSet& z, int d) {
  if (auto v = validate_kaleidoscope(g, k)) return v;
  VertexSet used(g.order());
  used.insert(k.a);
  for (const auto& w : k.paths)
    for (int v : w) used.insert(v);
  if (z.intersects(used)) return Violation{"M1", "Z meets a path or a"};
  if ((g.neighbors(k.a) & z).size() > 1) return Violation{"M2", "a has more than one neighbour in Z"};
  for (int v : z) {
    for (std::size_t i = 0; i < k.paths.size(); ++i) {
      const auto& w = k.paths[i];
      // N_W[x] and N_W[y]: the two ends and their path neighbours.
      std::vector<int> ends{w.front(), w[1], w[w.size() - 2], w.back()};
      for (int e : ends)
        if (g.adjacent(v, e))
          return Violation{"M3", "vertex " + std::to_string(v) + " sees " + std::to_string(e) +
                                     " near an end of path " + std::to_string(i)};
      int count = 0;
      for (int u : w) count += g.adjacent(v, u) ? 1 : 0;
      if (count < d)
        return Violation{"M3", "vertex " + std::to_string(v) + " has " + std::to_string(count) +
                                   " neighbours in path " + std::to_string(i)};
    }
  }
  return std::nullopt;
}

bool is_mirrored(const Graph& g, const Kaleidoscope& k, const VertexSet& z, int d) {
  return !check_mirrored(g, k, z, d).has_value();
}

Contraption contraption(const Graph& g, int z1, int z2) {
  if (!g.valid_vertex(z1) || !g.valid_vertex(z2) || z1 == z2 || !g.adjacent(z1, z2))
    throw InvalidInput("contraption needs an edge");
  Contraption out;
  out.old_to_new.assign(static_cast<std::size_t>(g.order()), -1);
  int next = 0;
  for (int v = 0; v < g.order(); ++v)
    if (v != z1 && v != z2) out.old_to_new[static_cast<std::size_t>(v)] = next++;
  out.merged = next;
  out.old_to_new[static_cast<std::size_t>(z1)] = out.merged;
  out.old_to_new[static_cast<std::size_t>(z2)] = out.merged;
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    if (u == z1 || u == z2 || v == z1 || v == z2) continue;
    edges.emplace_back(out.old_to_new[static_cast<std::size_t>(u)], out.old_to_new[static_cast<std::size_t>(v)]);
  }
  for (int w : g.neighbors(z1) & g.neighbors(z2)) edges.push_back(make_edge(out.merged, out.old_to_new[static_cast<std::size_t>(w)]));
  out.graph = Graph(g.order() - 1, edges);
  return out;
}

bool contraption_qualifies(const Graph& g, int z1, int z2) {
  if (!g.valid_vertex(z1) || !g.valid_vertex(z2) || z1 == z2 || !g.adjacent(z1, z2)) return false;
  VertexSet common = g.neighbors(z1) & g.neighbors(z2);
  if (!is_stable_set(g, common)) return false;
  for (int w : common)
    if (g.degree(w) > 3) return false;
  return true;
}

Validation validate_crystallized(const Graph& h, const CrystallizedCertificate& c) {
  for (int v : {c.z, c.z1, c.z2})
    if (!h.valid_vertex(v)) return Violation{"C1", "vertex " + std::to_string(v) + " out of range"};
  if (c.z1 == c.z2 || !h.adjacent(c.z1, c.z2) || !h.adjacent(c.z, c.z1) || !h.adjacent(c.z, c.z2))
    return Violation{"C1", "{z1, z2} is not a 2-clique in N(z)"};
  VertexSet rest = h.neighbors(c.z);
  rest.erase(c.z1);
  rest.erase(c.z2);
  if (rest.empty()) return Violation{"C1", "N(z) minus {z1, z2} is empty"};
  if (!is_stable_set(h, rest)) return Violation{"C1", "N(z) minus {z1, z2} is not stable"};
  VertexSet parts(h.order());
  for (const auto* side : {&c.s1, &c.s2})
    for (int x : *side) {
      if (!h.valid_vertex(x) || parts.contains(x)) return Violation{"C2", "sides overlap or are out of range"};
      parts.insert(x);
    }
  if (!(parts == rest)) return Violation{"C2", "(S1, S2) is not a partition of N(z) minus {z1, z2}"};
  for (int i = 1; i <= 2; ++i)
    for (int x : i == 1 ? c.s1 : c.s2) {
      auto want = h.make_set({i == 1 ? c.z1 : c.z2, c.z});
      if (!(h.neighbors(x) == want))
        return Violation{"C2", "vertex " + std::to_string(x) + " has neighbourhood other than {z" + std::to_string(i) +
                                   ", z}"};
    }
  return std::nullopt;
}

std::optional<CrystallizedCertificate> is_crystallized(const Graph& h, int z) {
  if (!h.valid_vertex(z)) throw InvalidInput("vertex out of range");
  const auto nz = h.neighbors(z);
  for (int z1 : nz) {
    for (int z2 = nz.next(z1); z2 != -1; z2 = nz.next(z2)) {
      if (!h.adjacent(z1, z2)) continue;
      VertexSet rest = nz;
      rest.erase(z1);
      rest.erase(z2);
      if (rest.empty() || !is_stable_set(h, rest)) continue;
      CrystallizedCertificate c{z, z1, z2, {}, {}};
      bool ok = true;
      for (int x : rest) {
        if (h.neighbors(x) == h.make_set({z1, z}))
          c.s1.push_back(x);
        else if (h.neighbors(x) == h.make_set({z2, z}))
          c.s2.push_back(x);
        else {
          ok = false;
          break;
        }
      }
      if (ok) return c;
    }
  }
  return std::nullopt;
}

nlohmann::ordered_json to_json(const Phantom& p) {
  nlohmann::ordered_json j;
  j["d"] = p.d;
  j["r"] = p.depth();
  auto layers = nlohmann::ordered_json::array();
  for (const auto& z : p.layers) layers.push_back(z.to_vector());
  j["layers"] = std::move(layers);
  auto gamma = nlohmann::ordered_json::array();
  for (const auto& m : p.gamma) {
    nlohmann::ordered_json level = nlohmann::ordered_json::object();
    for (const auto& [e, s] : m) level[edge_key(e)] = s.to_vector();
    gamma.push_back(std::move(level));
  }
  j["gamma"] = std::move(gamma);
  return j;
}

Phantom phantom_from_json(const Graph& g, const nlohmann::json& j) {
  try {
    Phantom p;
    p.d = j.at("d").get<int>();
    for (const auto& layer : j.at("layers")) p.layers.push_back(vertex_set_from_json(g, layer));
    for (const auto& level : j.at("gamma")) {
      if (!level.is_object()) throw InvalidInput("each gamma level must be an object");
      std::map<Edge, VertexSet> m;
      for (auto it = level.begin(); it != level.end(); ++it) m.emplace(parse_edge_key(it.key()), vertex_set_from_json(g, it.value()));
      p.gamma.push_back(std::move(m));
    }
    if (j.contains("r") && j.at("r").get<int>() != p.depth()) throw InvalidInput("\"r\" disagrees with the layer count");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed phantom JSON: ") + e.what());
  }
}

nlohmann::ordered_json to_json(const Crystal& c) {
  nlohmann::ordered_json j;
  j["z1"] = c.z1;
  j["z2"] = c.z2;
  auto centers = nlohmann::ordered_json::array();
  for (const auto& cc : c.centers) {
    nlohmann::ordered_json e;
    e["z"] = cc.z;
    e["s1"] = cc.s1;
    e["s2"] = cc.s2;
    centers.push_back(std::move(e));
  }
  j["centers"] = std::move(centers);
  return j;
}

Crystal crystal_from_json(const nlohmann::json& j) {
  try {
    Crystal c;
    c.z1 = j.at("z1").get<int>();
    c.z2 = j.at("z2").get<int>();
    for (const auto& e : j.at("centers")) {
      CrystalCenter cc;
      cc.z = e.at("z").get<int>();
      cc.s1 = e.at("s1").get<std::vector<int>>();
      cc.s2 = e.at("s2").get<std::vector<int>>();
      std::sort(cc.s1.begin(), cc.s1.end());
      std::sort(cc.s2.begin(), cc.s2.end());
      c.centers.push_back(std::move(cc));
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed crystal JSON: ") + e.what());
  }
}

nlohmann::ordered_json to_json(const Kaleidoscope& k) {
  nlohmann::ordered_json j;
  j["a"] = k.a;
  j["x"] = k.x;
  j["y"] = k.y;
  j["paths"] = k.paths;
  return j;
}

Kaleidoscope kaleidoscope_from_json(const nlohmann::json& j) {
  try {
    Kaleidoscope k;
    k.a = j.at("a").get<int>();
    k.x = j.at("x").get<int>();
    k.y = j.at("y").get<int>();
    k.paths = j.at("paths").get<std::vector<std::vector<int>>>();
    return k;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed kaleidoscope JSON: ") + e.what());
  }
}

nlohmann::ordered_json to_json(const CrystallizedCertificate& c) {
  nlohmann::ordered_json j;
  j["z"] = c.z;
  j["z1"] = c.z1;
  j["z2"] = c.z2;
  j["s1"] = c.s1;
  j["s2"] = c.s2;
  return j;
}

nlohmann::ordered_json to_json(const Violation& v) {
  nlohmann::ordered_json j;
  j["clause"] = v.clause;
  j["detail"] = v.detail;
  return j;
}

}  // namespace obslab
