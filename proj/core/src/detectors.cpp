#include "obslab/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "obslab/error.hpp"

namespace obslab {

namespace {

void check_guard(const char* what, int n, const DetectorOptions& opts) {
  if (n > opts.guard) throw ScaleLimit(what, n, opts.guard);
}

std::vector<int> sorted_copy(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Rotate so the smallest vertex comes first and the second is smaller than
// the last.
std::vector<int> normalize_cycle(std::vector<int> c) {
  auto it = std::min_element(c.begin(), c.end());
  std::rotate(c.begin(), it, c.end());
  if (c.size() > 2 && c[1] > c.back()) std::reverse(c.begin() + 1, c.end());
  return c;
}

Witness cycle_witness(const std::string& kind, const std::vector<int>& cycle) {
  Witness w;
  w.kind = kind;
  w.vertices = sorted_copy(cycle);
  w.roles["cycle"] = cycle;
  return w;
}

Witness set_witness(const std::string& kind, const std::string& role, std::vector<int> members) {
  Witness w;
  w.kind = kind;
  w.vertices = sorted_copy(members);
  w.roles[role] = std::move(members);
  return w;
}

// Shortest path from `from` to `to` inside `allowed`, smallest-index parents.
std::vector<int> shortest_path(const Graph& g, int from, int to, const VertexSet& allowed) {
  std::vector<int> parent(static_cast<std::size_t>(g.order()), -2);
  std::deque<int> queue{from};
  parent[static_cast<std::size_t>(from)] = -1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (u == to) break;
    for (int v : g.neighbors(u) & allowed) {
      if (parent[static_cast<std::size_t>(v)] != -2) continue;
      parent[static_cast<std::size_t>(v)] = u;
      queue.push_back(v);
    }
  }
  if (parent[static_cast<std::size_t>(to)] == -2) return {};
  std::vector<int> path;
  for (int v = to; v != -1; v = parent[static_cast<std::size_t>(v)]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

// Depth-first enumeration of holes of one exact length through the minimum
// vertex s. Returns false once `visit` asks to stop.
struct HoleSearch {
  const Graph& g;
  int length;
  const std::function<bool(const std::vector<int>&)>& visit;
  int s = 0;
  VertexSet allowed;
  std::vector<int> dist;
  std::vector<int> path;

  bool extend(const VertexSet& blocked) {
    const int v = path.back();
    const int k = static_cast<int>(path.size()) + 1;  // size after adding w
    VertexSet cand = (g.neighbors(v) & allowed) - blocked;
    for (int p : path) cand.erase(p);
    for (int w : cand) {
      const bool sees_s = g.adjacent(w, s);
      if (k >= 3 && k < length && sees_s) continue;
      if (k == length) {
        if (!sees_s || path[1] > w) continue;
        path.push_back(w);
        bool go_on = visit(path);
        path.pop_back();
        if (!go_on) return false;
        continue;
      }
      const int dw = dist[static_cast<std::size_t>(w)];
      if (dw < 0 || dw > length - k + 1) continue;
      VertexSet next_blocked = blocked;
      if (v != s) next_blocked |= g.closed_neighbors(v);
      path.push_back(w);
      bool go_on = extend(next_blocked);
      path.pop_back();
      if (!go_on) return false;
    }
    return true;
  }

  bool run() {
    for (s = 0; s < g.order(); ++s) {
      allowed = g.empty_set();
      for (int u = s; u < g.order(); ++u) allowed.insert(u);
      dist = bfs_distances(g, s, allowed);
      path = {s};
      if (!extend(g.empty_set())) return false;
    }
    return true;
  }
};

bool holes_of_lengths(const Graph& g, int first, int last, int step,
                      const std::function<bool(const std::vector<int>&)>& visit) {
  for (int len = first; len <= last; len += step) {
    HoleSearch search{g, len, visit, 0, {}, {}, {}};
    if (!search.run()) return false;
  }
  return true;
}

struct PathRecord {
  std::vector<int> vertices;
  VertexSet interior;
  VertexSet interior_closed;  // closed neighbourhood of the interior
};

// Induced paths from `start` with 1..max_len edges whose non-start vertices
// avoid `forbidden`. Sets `hit_limit` when some path reached max_len edges.
void induced_paths_from(const Graph& g, int start, int max_len, const VertexSet& forbidden,
                        const std::function<void(const std::vector<int>&)>& emit, bool& hit_limit) {
  std::vector<int> path{start};
  std::function<void(const VertexSet&)> rec = [&](const VertexSet& blocked) {
    const int v = path.back();
    VertexSet cand = g.neighbors(v) - blocked - forbidden;
    for (int p : path) cand.erase(p);
    for (int w : cand) {
      path.push_back(w);
      emit(path);
      if (static_cast<int>(path.size()) - 1 < max_len) {
        rec(blocked | g.closed_neighbors(v));
      } else {
        hit_limit = true;
      }
      path.pop_back();
    }
  };
  rec(g.empty_set());
}

std::optional<std::vector<int>> find_clique_within(const Graph& g, int c, const VertexSet& within) {
  if (c <= 0) return std::vector<int>{};
  std::vector<int> current;
  std::function<bool(const VertexSet&)> rec = [&](const VertexSet& cand) {
    if (static_cast<int>(current.size()) == c) return true;
    if (static_cast<int>(current.size()) + cand.size() < c) return false;
    for (int v : cand) {
      current.push_back(v);
      VertexSet next = cand & g.neighbors(v);
      for (int u = next.first(); u != -1 && u < v; u = next.first()) next.erase(u);
      if (rec(next)) return true;
      current.pop_back();
    }
    return false;
  };
  if (rec(within)) return current;
  return std::nullopt;
}

std::optional<std::vector<int>> find_stable_within(const Graph& g, int s, const VertexSet& within) {
  if (s <= 0) return std::vector<int>{};
  std::vector<int> current;
  std::function<bool(const VertexSet&)> rec = [&](const VertexSet& cand) {
    if (static_cast<int>(current.size()) == s) return true;
    if (static_cast<int>(current.size()) + cand.size() < s) return false;
    for (int v : cand) {
      current.push_back(v);
      VertexSet next = cand - g.closed_neighbors(v);
      for (int u = next.first(); u != -1 && u < v; u = next.first()) next.erase(u);
      if (rec(next)) return true;
      current.pop_back();
    }
    return false;
  };
  if (rec(within)) return current;
  return std::nullopt;
}

double power_or_inf(double base, double exponent) {
  double v = std::pow(base, exponent);
  return std::isfinite(v) ? v : HUGE_VAL;
}

}  // namespace

nlohmann::ordered_json to_json(const std::optional<Witness>& w) {
  nlohmann::ordered_json j;
  j["found"] = w.has_value();
  j["kind"] = w ? w->kind : "";
  j["vertices"] = w ? w->vertices : std::vector<int>{};
  nlohmann::ordered_json roles = nlohmann::ordered_json::object();
  if (w)
    for (const auto& [k, v] : w->roles) roles[k] = v;
  j["roles"] = std::move(roles);
  return j;
}

std::optional<Witness> find_hole(const Graph& g) {
  std::vector<int> best;
  for (int b = 0; b < g.order(); ++b) {
    const auto nb = g.neighbors(b);
    const VertexSet outside = g.all() - g.closed_neighbors(b);
    for (int a : nb)
      for (int c = nb.next(a); c != -1; c = nb.next(c)) {
        if (g.adjacent(a, c)) continue;
        VertexSet allowed = outside;
        allowed.insert(a);
        allowed.insert(c);
        auto p = shortest_path(g, a, c, allowed);
        if (p.empty()) continue;
        if (best.empty() || p.size() + 1 < best.size()) {
          best = p;
          best.push_back(b);
          if (best.size() == 4) return cycle_witness("hole", normalize_cycle(best));
        }
      }
  }
  if (best.empty()) return std::nullopt;
  return cycle_witness("hole", normalize_cycle(best));
}

ChordalResult is_chordal(const Graph& g) {
  const int n = g.order();
  // Maximum cardinality search; the reverse visiting order is a perfect
  // elimination order exactly when the graph is chordal.
  std::vector<int> weight(static_cast<std::size_t>(n), 0);
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  std::vector<int> visit;
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (!done[static_cast<std::size_t>(v)] && (pick < 0 || weight[static_cast<std::size_t>(v)] > weight[static_cast<std::size_t>(pick)]))
        pick = v;
    done[static_cast<std::size_t>(pick)] = true;
    visit.push_back(pick);
    for (int u : g.neighbors(pick))
      if (!done[static_cast<std::size_t>(u)]) ++weight[static_cast<std::size_t>(u)];
  }
  std::vector<int> peo(visit.rbegin(), visit.rend());
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(peo[static_cast<std::size_t>(i)])] = i;
  bool ok = true;
  for (int i = 0; i < n && ok; ++i) {
    const int v = peo[static_cast<std::size_t>(i)];
    VertexSet later(n);
    for (int u : g.neighbors(v))
      if (pos[static_cast<std::size_t>(u)] > i) later.insert(u);
    if (later.empty()) continue;
    int first = -1;
    for (int u : later)
      if (first < 0 || pos[static_cast<std::size_t>(u)] < pos[static_cast<std::size_t>(first)]) first = u;
    later.erase(first);
    if (!later.is_subset_of(g.neighbors(first))) ok = false;
  }
  ChordalResult out;
  out.chordal = ok;
  if (ok)
    out.elimination_order = std::move(peo);
  else
    out.hole = find_hole(g);
  return out;
}

void for_each_hole(const Graph& g, int min_length, int max_length,
                   const std::function<bool(const std::vector<int>&)>& visit, const DetectorOptions& opts) {
  check_guard("for_each_hole", g.order(), opts);
  holes_of_lengths(g, std::max(4, min_length), std::min(max_length, g.order()), 1, visit);
}

std::optional<Witness> find_even_hole(const Graph& g, const DetectorOptions& opts) {
  check_guard("find_even_hole", g.order(), opts);
  std::optional<Witness> out;
  holes_of_lengths(g, 4, g.order(), 2, [&](const std::vector<int>& c) {
    out = cycle_witness("even-hole", c);
    return false;
  });
  return out;
}

std::optional<Witness> find_theta(const Graph& g, const DetectorOptions& opts) {
  check_guard("find_theta", g.order(), opts);
  const int n = g.order();
  for (int max_len = 2; max_len < std::max(n, 3); ++max_len) {
    bool hit_limit = false;
    for (int a = 0; a < n; ++a) {
      std::map<int, std::vector<PathRecord>> by_end;
      induced_paths_from(
          g, a, max_len, g.empty_set(),
          [&](const std::vector<int>& p) {
            if (p.size() < 3 || p.back() < a) return;
            PathRecord rec{p, g.empty_set(), g.empty_set()};
            for (std::size_t i = 1; i + 1 < p.size(); ++i) {
              rec.interior.insert(p[i]);
              rec.interior_closed |= g.closed_neighbors(p[i]);
            }
            by_end[p.back()].push_back(std::move(rec));
          },
          hit_limit);
      for (auto& [b, paths] : by_end) {
        std::stable_sort(paths.begin(), paths.end(),
                         [](const PathRecord& x, const PathRecord& y) { return x.vertices.size() < y.vertices.size(); });
        const std::size_t k = paths.size();
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = i + 1; j < k; ++j) {
            if (paths[j].interior.intersects(paths[i].interior_closed)) continue;
            for (std::size_t l = j + 1; l < k; ++l) {
              if (paths[l].interior.intersects(paths[i].interior_closed) ||
                  paths[l].interior.intersects(paths[j].interior_closed))
                continue;
              Witness w;
              w.kind = "theta";
              w.roles["ends"] = {a, b};
              w.roles["path0"] = paths[i].vertices;
              w.roles["path1"] = paths[j].vertices;
              w.roles["path2"] = paths[l].vertices;
              VertexSet all = paths[i].interior | paths[j].interior | paths[l].interior;
              all.insert(a);
              all.insert(b);
              w.vertices = all.to_vector();
              return w;
            }
          }
      }
    }
    if (!hit_limit) break;
  }
  return std::nullopt;
}

std::optional<Witness> find_prism(const Graph& g, const DetectorOptions& opts) {
  check_guard("find_prism", g.order(), opts);
  const int n = g.order();
  std::vector<std::array<int, 3>> triangles;
  for (int a = 0; a < n; ++a)
    for (int b : g.neighbors(a)) {
      if (b <= a) continue;
      for (int c : g.neighbors(a) & g.neighbors(b))
        if (c > b) triangles.push_back({a, b, c});
    }
  if (triangles.size() < 2) return std::nullopt;
  struct Leg {
    std::vector<int> vertices;
    VertexSet body;         // path minus its start
    VertexSet body_closed;  // closed neighbourhood of the body minus the far end
  };
  for (int max_len = 1; max_len < std::max(n, 2); ++max_len) {
    bool hit_limit = false;
    for (const auto& tri : triangles) {
      std::array<std::vector<Leg>, 3> legs;
      for (int i = 0; i < 3; ++i) {
        VertexSet forbidden = g.empty_set();
        for (int j = 0; j < 3; ++j)
          if (j != i) forbidden |= g.closed_neighbors(tri[static_cast<std::size_t>(j)]);
        induced_paths_from(
            g, tri[static_cast<std::size_t>(i)], max_len, forbidden,
            [&](const std::vector<int>& p) {
              Leg leg{p, g.empty_set(), g.empty_set()};
              for (std::size_t q = 1; q < p.size(); ++q) {
                leg.body.insert(p[q]);
                if (q + 1 < p.size()) leg.body_closed |= g.closed_neighbors(p[q]);
              }
              legs[static_cast<std::size_t>(i)].push_back(std::move(leg));
            },
            hit_limit);
      }
      // Only the two far ends may touch, and they must.
      auto compatible = [&](const Leg& x, const Leg& y) {
        const int bx = x.vertices.back(), by = y.vertices.back();
        if (!g.adjacent(bx, by)) return false;
        if (x.body_closed.intersects(y.body) || y.body_closed.intersects(x.body)) return false;
        VertexSet y_rest = y.body;
        y_rest.erase(by);
        return !g.closed_neighbors(bx).intersects(y_rest) && !y.body.contains(bx);
      };
      for (const auto& l0 : legs[0])
        for (const auto& l1 : legs[1]) {
          if (!compatible(l0, l1)) continue;
          for (const auto& l2 : legs[2]) {
            if (!compatible(l0, l2) || !compatible(l1, l2)) continue;
            Witness w;
            w.kind = "prism";
            w.roles["triangle_a"] = {tri[0], tri[1], tri[2]};
            w.roles["triangle_b"] = {l0.vertices.back(), l1.vertices.back(), l2.vertices.back()};
            w.roles["path0"] = l0.vertices;
            w.roles["path1"] = l1.vertices;
            w.roles["path2"] = l2.vertices;
            VertexSet all = l0.body | l1.body | l2.body;
            for (int v : tri) all.insert(v);
            w.vertices = all.to_vector();
            return w;
          }
        }
    }
    if (!hit_limit) break;
  }
  return std::nullopt;
}

std::optional<Witness> find_even_wheel(const Graph& g, const DetectorOptions& opts) {
  check_guard("find_even_wheel", g.order(), opts);
  if (g.max_degree() < 4) return std::nullopt;
  std::optional<Witness> out;
  holes_of_lengths(g, 4, g.order() - 1, 1, [&](const std::vector<int>& c) {
    VertexSet rim = g.make_set(c);
    for (int h = 0; h < g.order(); ++h) {
      if (rim.contains(h)) continue;
      int k = (g.neighbors(h) & rim).size();
      if (k >= 4 && k % 2 == 0) {
        Witness w;
        w.kind = "even-wheel";
        w.roles["hub"] = {h};
        w.roles["rim"] = c;
        rim.insert(h);
        w.vertices = rim.to_vector();
        out = std::move(w);
        return false;
      }
    }
    return true;
  });
  return out;
}

std::optional<Witness> find_clique(const Graph& g, int c, const DetectorOptions& opts) {
  check_guard("find_clique", g.order(), opts);
  auto found = find_clique_within(g, c, g.all());
  if (!found) return std::nullopt;
  return set_witness("clique", "clique", *found);
}

std::optional<Witness> find_stable_set(const Graph& g, int s, const DetectorOptions& opts) {
  check_guard("find_stable_set", g.order(), opts);
  auto found = find_stable_within(g, s, g.all());
  if (!found) return std::nullopt;
  return set_witness("stable", "stable", *found);
}

int clique_number(const Graph& g, const DetectorOptions& opts) {
  check_guard("clique_number", g.order(), opts);
  int best = 0;
  std::function<void(int, VertexSet)> rec = [&](int size, VertexSet cand) {
    if (cand.empty()) {
      best = std::max(best, size);
      return;
    }
    // Greedy colouring bound.
    int colours = 0;
    VertexSet left = cand;
    while (!left.empty()) {
      ++colours;
      VertexSet layer = left;
      while (!layer.empty()) {
        int v = layer.first();
        left.erase(v);
        layer -= g.closed_neighbors(v);
      }
    }
    if (size + colours <= best) return;
    for (int v : cand) {
      if (size + cand.size() <= best) return;
      rec(size + 1, cand & g.neighbors(v));
      cand.erase(v);
    }
  };
  rec(0, g.all());
  return best;
}

std::optional<Witness> find_induced_biclique(const Graph& g, int s, int t, const DetectorOptions& opts) {
  check_guard("find_induced_biclique", g.order(), opts);
  if (s < 1 || t < 1) throw InvalidInput("biclique sides must be positive");
  std::vector<int> side_a;
  std::optional<Witness> out;
  std::function<bool(const VertexSet&, const VertexSet&)> rec = [&](const VertexSet& cand, const VertexSet& common) {
    if (static_cast<int>(side_a.size()) == s) {
      auto b = find_stable_within(g, t, common);
      if (!b) return false;
      Witness w;
      w.kind = "biclique";
      w.roles["side_a"] = side_a;
      w.roles["side_b"] = *b;
      std::vector<int> all = side_a;
      all.insert(all.end(), b->begin(), b->end());
      w.vertices = sorted_copy(all);
      out = std::move(w);
      return true;
    }
    for (int v : cand) {
      VertexSet next_common = side_a.empty() ? g.neighbors(v) : common & g.neighbors(v);
      if (next_common.size() < t) continue;
      side_a.push_back(v);
      VertexSet next = cand - g.closed_neighbors(v);
      for (int u = next.first(); u != -1 && u < v; u = next.first()) next.erase(u);
      if (rec(next, next_common)) return true;
      side_a.pop_back();
    }
    return false;
  };
  rec(g.all(), g.all());
  return out;
}

Membership membership_E_t(const Graph& g, std::optional<int> t, const DetectorOptions& opts) {
  if (t && *t < 1) throw InvalidInput("t must be at least 1");
  Membership m;
  if ((m.witness = find_induced_biclique(g, 2, 2, opts))) return m;
  if ((m.witness = find_theta(g, opts))) return m;
  if ((m.witness = find_prism(g, opts))) return m;
  if ((m.witness = find_even_wheel(g, opts))) return m;
  if (t && (m.witness = find_clique(g, *t, opts))) return m;
  m.member = true;
  return m;
}

bool is_k_tree(const Graph& h, int k) {
  if (k < 1) throw InvalidInput("k must be at least 1");
  const int n = h.order();
  if (n < k) return false;
  VertexSet alive = h.all();
  bool progress = true;
  int remaining = n;
  while (remaining > k && progress) {
    progress = false;
    for (int v : alive) {
      VertexSet nb = h.neighbors(v) & alive;
      if (nb.size() == k && is_clique(h, nb)) {
        alive.erase(v);
        --remaining;
        progress = true;
        break;
      }
    }
  }
  return remaining == k && is_clique(h, alive);
}

bool is_k_forest(const Graph& h, int k) {
  if (k < 1) throw InvalidInput("k must be at least 1");
  if (!is_chordal(h).chordal) return false;
  // Chordal graphs have a clique of size k + 2 iff some vertex has k + 1
  // later neighbours in a perfect elimination order.
  auto peo = is_chordal(h).elimination_order;
  std::vector<int> pos(static_cast<std::size_t>(h.order()));
  for (std::size_t i = 0; i < peo.size(); ++i) pos[static_cast<std::size_t>(peo[i])] = static_cast<int>(i);
  for (int v = 0; v < h.order(); ++v) {
    int later = 0;
    for (int u : h.neighbors(v)) later += pos[static_cast<std::size_t>(u)] > pos[static_cast<std::size_t>(v)] ? 1 : 0;
    if (later >= k + 1) return false;
  }
  return true;
}

std::optional<std::vector<int>> contains_induced(const Graph& g, const Graph& h, const DetectorOptions& opts) {
  check_guard("contains_induced", g.order(), opts);
  const int nh = h.order();
  if (nh > g.order()) return std::nullopt;
  if (nh == 0) return std::vector<int>{};
  // Order H so each vertex has as many earlier neighbours as possible.
  std::vector<int> order;
  std::vector<bool> placed(static_cast<std::size_t>(nh), false);
  for (int step = 0; step < nh; ++step) {
    int pick = -1, best_back = -1;
    for (int v = 0; v < nh; ++v) {
      if (placed[static_cast<std::size_t>(v)]) continue;
      int back = 0;
      for (int u : order) back += h.adjacent(u, v) ? 1 : 0;
      if (back > best_back || (back == best_back && h.degree(v) > h.degree(pick))) {
        pick = v;
        best_back = back;
      }
    }
    placed[static_cast<std::size_t>(pick)] = true;
    order.push_back(pick);
  }
  std::vector<int> image(static_cast<std::size_t>(nh), -1);
  VertexSet used = g.empty_set();
  std::function<bool(int)> rec = [&](int i) {
    if (i == nh) return true;
    const int hv = order[static_cast<std::size_t>(i)];
    VertexSet cand = g.all() - used;
    for (int j = 0; j < i; ++j) {
      const int hu = order[static_cast<std::size_t>(j)];
      const int gu = image[static_cast<std::size_t>(hu)];
      if (h.adjacent(hu, hv))
        cand &= g.neighbors(gu);
      else
        cand -= g.neighbors(gu);
    }
    for (int gv : cand) {
      if (g.degree(gv) < h.degree(hv)) continue;
      image[static_cast<std::size_t>(hv)] = gv;
      used.insert(gv);
      if (rec(i + 1)) return true;
      used.erase(gv);
    }
    image[static_cast<std::size_t>(hv)] = -1;
    return false;
  };
  if (rec(0)) return image;
  return std::nullopt;
}

RamseyResult find_clique_or_stable(const Graph& g, int c, int s, const DetectorOptions& opts) {
  if (c < 1 || s < 1) throw InvalidInput("c and s must be positive");
  RamseyResult r;
  if ((r.witness = find_clique(g, c, opts))) {
    r.outcome = RamseyOutcome::clique;
    return r;
  }
  if ((r.witness = find_stable_set(g, s, opts))) {
    r.outcome = RamseyOutcome::stable;
    return r;
  }
  if (g.order() >= power_or_inf(c, s))
    throw std::logic_error("neither a clique nor a stable set above the Ramsey bound");
  return r;
}

std::optional<std::vector<int>> anticomplete_family(const Graph& g, const std::vector<VertexSet>& sets, int q) {
  const int m = static_cast<int>(sets.size());
  for (int i = 0; i < m; ++i) {
    if (sets[static_cast<std::size_t>(i)].capacity() != g.order()) throw InvalidInput("set is not over the host graph");
    for (int j = i + 1; j < m; ++j)
      if (sets[static_cast<std::size_t>(i)].intersects(sets[static_cast<std::size_t>(j)]))
        throw InvalidInput("anticomplete_family needs pairwise disjoint sets");
  }
  if (q <= 0) return std::vector<int>{};
  std::vector<VertexSet> reach;
  for (const auto& s : sets) {
    VertexSet r = g.neighbors_of_set(s);
    reach.push_back(std::move(r));
  }
  // conflict[i][j]: an edge runs between sets i and j.
  std::vector<std::vector<bool>> conflict(static_cast<std::size_t>(m), std::vector<bool>(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      conflict[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          i != j && reach[static_cast<std::size_t>(i)].intersects(sets[static_cast<std::size_t>(j)]);
  std::vector<int> chosen;
  std::function<bool(int)> rec = [&](int from) {
    if (static_cast<int>(chosen.size()) == q) return true;
    for (int i = from; i < m; ++i) {
      if (static_cast<int>(chosen.size()) + (m - i) < q) return false;
      bool ok = std::none_of(chosen.begin(), chosen.end(),
                             [&](int c) { return conflict[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)]; });
      if (!ok) continue;
      chosen.push_back(i);
      if (rec(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (rec(0)) return chosen;
  return std::nullopt;
}

TournamentResult acyclic_tournament_or_stable(const Digraph& d, int c, int s, const DetectorOptions& opts) {
  if (c < 1 || s < 1) throw InvalidInput("c and s must be positive");
  const int n = d.order();
  check_guard("acyclic_tournament_or_stable", n, opts);
  TournamentResult r;
  std::vector<int> chain;
  std::function<bool(const VertexSet&)> rec = [&](const VertexSet& cand) {
    if (static_cast<int>(chain.size()) == c) return true;
    for (int v : cand) {
      chain.push_back(v);
      VertexSet next = cand & d.out_neighbors(v);
      next.erase(v);
      if (rec(next)) return true;
      chain.pop_back();
    }
    return false;
  };
  if (rec(VertexSet::full(n))) {
    r.outcome = TournamentOutcome::tournament;
    r.vertices = chain;
    return r;
  }
  std::vector<Edge> under;
  for (auto [u, v] : d.arcs()) under.push_back(make_edge(u, v));
  Graph g(n, under);
  if (auto st = find_stable_within(g, s, g.all())) {
    r.outcome = TournamentOutcome::stable;
    r.vertices = *st;
    return r;
  }
  if (n >= power_or_inf(c, power_or_inf(c, s)))
    throw std::logic_error("neither an acyclic tournament nor a stable set above the Ramsey bound");
  return r;
}

bool is_hole(const Graph& g, const std::vector<int>& cycle) {
  const std::size_t k = cycle.size();
  if (k < 4) return false;
  std::vector<int> seen = sorted_copy(cycle);
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  for (int v : cycle)
    if (!g.valid_vertex(v)) return false;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const bool consecutive = j == i + 1 || (i == 0 && j == k - 1);
      if (g.adjacent(cycle[i], cycle[j]) != consecutive) return false;
    }
  return true;
}

bool is_theta(const Graph& g, const std::vector<int>& vertices) {
  for (int v : vertices)
    if (!g.valid_vertex(v)) return false;
  auto sub = induced_subgraph(g, g.make_set(vertices)).graph;
  if (static_cast<int>(vertices.size()) != sub.order() || !is_connected(sub)) return false;
  std::vector<int> ends;
  for (int v = 0; v < sub.order(); ++v) {
    if (sub.degree(v) == 3)
      ends.push_back(v);
    else if (sub.degree(v) != 2)
      return false;
  }
  if (ends.size() != 2 || sub.adjacent(ends[0], ends[1])) return false;
  // Removing the ends must leave three paths, each joining the two ends.
  VertexSet rest = sub.all();
  rest.erase(ends[0]);
  rest.erase(ends[1]);
  int components = 0;
  VertexSet seen = sub.empty_set();
  for (int v : rest) {
    if (seen.contains(v)) continue;
    ++components;
    auto dist = bfs_distances(sub, v, rest);
    VertexSet comp = sub.empty_set();
    for (int u = 0; u < sub.order(); ++u)
      if (dist[static_cast<std::size_t>(u)] >= 0) comp.insert(u);
    seen |= comp;
    if ((sub.neighbors(ends[0]) & comp).size() != 1 || (sub.neighbors(ends[1]) & comp).size() != 1) return false;
  }
  return components == 3;
}

bool is_prism(const Graph& g, const std::vector<int>& vertices) {
  for (int v : vertices)
    if (!g.valid_vertex(v)) return false;
  auto sub = induced_subgraph(g, g.make_set(vertices)).graph;
  if (static_cast<int>(vertices.size()) != sub.order() || !is_connected(sub)) return false;
  std::vector<int> big;
  for (int v = 0; v < sub.order(); ++v) {
    if (sub.degree(v) == 3)
      big.push_back(v);
    else if (sub.degree(v) != 2)
      return false;
  }
  if (big.size() != 6) return false;
  std::vector<std::vector<int>> tris;
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = a + 1; b < 6; ++b)
      for (std::size_t c = b + 1; c < 6; ++c)
        if (sub.adjacent(big[a], big[b]) && sub.adjacent(big[a], big[c]) && sub.adjacent(big[b], big[c]))
          tris.push_back({big[a], big[b], big[c]});
  if (tris.size() != 2) return false;
  VertexSet t1 = sub.make_set(tris[0]), t2 = sub.make_set(tris[1]);
  if (t1.intersects(t2)) return false;
  GraphBuilder rest(sub.order());
  for (auto [u, v] : sub.edges()) {
    if ((t1.contains(u) && t1.contains(v)) || (t2.contains(u) && t2.contains(v))) continue;
    rest.add_edge(u, v);
  }
  Graph paths = rest.build();
  // Three components, each a path from T1 to T2.
  VertexSet seen = sub.empty_set();
  int components = 0;
  for (int v = 0; v < sub.order(); ++v) {
    if (seen.contains(v)) continue;
    ++components;
    auto dist = bfs_distances(paths, v, paths.all());
    VertexSet comp = sub.empty_set();
    int edges_twice = 0;
    for (int u = 0; u < sub.order(); ++u)
      if (dist[static_cast<std::size_t>(u)] >= 0) {
        comp.insert(u);
        edges_twice += paths.degree(u);
      }
    seen |= comp;
    if (edges_twice / 2 != comp.size() - 1) return false;
    if ((comp & t1).size() != 1 || (comp & t2).size() != 1) return false;
  }
  return components == 3;
}

bool is_even_wheel(const Graph& g, const std::vector<int>& vertices) {
  for (int v : vertices)
    if (!g.valid_vertex(v)) return false;
  VertexSet all = g.make_set(vertices);
  if (all.size() != static_cast<int>(vertices.size()) || all.size() < 5) return false;
  for (int h : all) {
    VertexSet rim = all;
    rim.erase(h);
    auto sub = induced_subgraph(g, rim).graph;
    bool two_regular = true;
    for (int v = 0; v < sub.order(); ++v) two_regular = two_regular && sub.degree(v) == 2;
    if (!two_regular || !is_connected(sub)) continue;
    int k = (g.neighbors(h) & rim).size();
    if (k >= 4 && k % 2 == 0) return true;
  }
  return false;
}

bool witness_is_valid(const Graph& g, const Witness& w) {
  auto role = [&](const std::string& name) -> const std::vector<int>& {
    static const std::vector<int> empty;
    auto it = w.roles.find(name);
    return it == w.roles.end() ? empty : it->second;
  };
  for (int v : w.vertices)
    if (!g.valid_vertex(v)) return false;
  if (w.kind == "hole") return is_hole(g, role("cycle")) && sorted_copy(role("cycle")) == w.vertices;
  if (w.kind == "even-hole")
    return is_hole(g, role("cycle")) && role("cycle").size() % 2 == 0 && sorted_copy(role("cycle")) == w.vertices;
  if (w.kind == "theta") return is_theta(g, w.vertices);
  if (w.kind == "prism") return is_prism(g, w.vertices);
  if (w.kind == "even-wheel") return is_even_wheel(g, w.vertices);
  if (w.kind == "clique") return is_clique(g, g.make_set(w.vertices));
  if (w.kind == "stable") return is_stable_set(g, g.make_set(w.vertices));
  if (w.kind == "biclique") {
    VertexSet a = g.make_set(role("side_a")), b = g.make_set(role("side_b"));
    return !a.empty() && !b.empty() && !a.intersects(b) && is_stable_set(g, a) && is_stable_set(g, b) &&
           is_complete_to(g, a, b);
  }
  return false;
}

}  // namespace obslab
