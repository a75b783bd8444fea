#include "obslab/treewidth.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "obslab/detectors.hpp"
#include "obslab/error.hpp"

namespace obslab {

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(int v) { return Mask{1} << v; }

int popcount(Mask m) { return std::popcount(m); }

std::vector<int> mask_members(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

// Exact decision search over elimination orders: can the graph be eliminated
// with every vertex having at most k neighbours when it goes?
class ExactSearch {
 public:
  ExactSearch(const Graph& g) : n_(g.order()), full_(n_ == 64 ? ~Mask{0} : bit(n_) - 1) {
    base_.resize(static_cast<std::size_t>(n_), 0);
    for (auto [u, v] : g.edges()) {
      base_[static_cast<std::size_t>(u)] |= bit(v);
      base_[static_cast<std::size_t>(v)] |= bit(u);
    }
  }

  bool decide(int k) {
    k_ = k;
    failed_.clear();
    order_.clear();
    return solve(base_, full_);
  }

  const std::vector<int>& order() const { return order_; }

  // Minor-min-width of the graph restricted to `rem`.
  static int minor_min_width(std::vector<Mask> adj, Mask rem) {
    int lb = 0;
    while (popcount(rem) > 1) {
      int v = -1, dv = 1 << 20;
      for (Mask m = rem; m; m &= m - 1) {
        int u = std::countr_zero(m);
        int du = popcount(adj[static_cast<std::size_t>(u)] & rem);
        if (du < dv) {
          v = u;
          dv = du;
        }
      }
      lb = std::max(lb, dv);
      Mask nb = adj[static_cast<std::size_t>(v)] & rem;
      rem &= ~bit(v);
      if (!nb) continue;
      int u = -1, du = 1 << 20;
      for (Mask m = nb; m; m &= m - 1) {
        int w = std::countr_zero(m);
        int dw = popcount(adj[static_cast<std::size_t>(w)] & rem);
        if (dw < du) {
          u = w;
          du = dw;
        }
      }
      // Contract v into u.
      adj[static_cast<std::size_t>(u)] |= nb & ~bit(u);
      for (Mask m = nb; m; m &= m - 1) {
        int w = std::countr_zero(m);
        if (w != u) adj[static_cast<std::size_t>(w)] |= bit(u);
      }
    }
    return lb;
  }

 private:
  static void eliminate(std::vector<Mask>& adj, int v, Mask rem) {
    Mask nb = adj[static_cast<std::size_t>(v)] & rem;
    for (Mask m = nb; m; m &= m - 1) {
      int u = std::countr_zero(m);
      adj[static_cast<std::size_t>(u)] = (adj[static_cast<std::size_t>(u)] | nb) & ~bit(u) & ~bit(v);
    }
  }

  static bool is_clique(const std::vector<Mask>& adj, Mask s) {
    for (Mask m = s; m; m &= m - 1) {
      int u = std::countr_zero(m);
      if ((s & ~bit(u) & ~adj[static_cast<std::size_t>(u)]) != 0) return false;
    }
    return true;
  }

  static bool almost_simplicial(const std::vector<Mask>& adj, Mask nb) {
    if (is_clique(adj, nb)) return true;
    for (Mask m = nb; m; m &= m - 1)
      if (is_clique(adj, nb & ~bit(std::countr_zero(m)))) return true;
    return false;
  }

  bool solve(std::vector<Mask> adj, Mask rem) {
    const std::size_t mark = order_.size();
    for (;;) {
      if (popcount(rem) <= k_ + 1) {
        for (int v : mask_members(rem)) order_.push_back(v);
        return true;
      }
      bool reduced = false;
      for (Mask m = rem; m; m &= m - 1) {
        int v = std::countr_zero(m);
        Mask nb = adj[static_cast<std::size_t>(v)] & rem;
        if (popcount(nb) > k_ || !almost_simplicial(adj, nb)) continue;
        eliminate(adj, v, rem);
        rem &= ~bit(v);
        order_.push_back(v);
        reduced = true;
        break;
      }
      if (!reduced) break;
    }
    const Mask done = full_ & ~rem;
    if (failed_.count(done) || minor_min_width(adj, rem) > k_) {
      failed_.insert(done);
      order_.resize(mark);
      return false;
    }
    const std::size_t base = order_.size();
    for (Mask m = rem; m; m &= m - 1) {
      int v = std::countr_zero(m);
      if (popcount(adj[static_cast<std::size_t>(v)] & rem) > k_) continue;
      std::vector<Mask> next = adj;
      eliminate(next, v, rem);
      order_.push_back(v);
      if (solve(std::move(next), rem & ~bit(v))) return true;
      order_.resize(base);
    }
    failed_.insert(done);
    order_.resize(mark);
    return false;
  }

  int n_;
  Mask full_;
  int k_ = 0;
  std::vector<Mask> base_;
  std::unordered_set<Mask> failed_;
  std::vector<int> order_;
};

enum class Heuristic { min_fill, min_degree };

std::vector<int> greedy_order(const Graph& g, Heuristic h) {
  const int n = g.order();
  std::vector<VertexSet> adj;
  for (int v = 0; v < n; ++v) adj.push_back(g.neighbors(v));
  VertexSet rem = g.all();
  std::vector<int> order;
  while (!rem.empty()) {
    int best = -1;
    long long best_score = 0;
    for (int v : rem) {
      VertexSet nb = adj[static_cast<std::size_t>(v)] & rem;
      long long score = nb.size();
      if (h == Heuristic::min_fill) {
        score = 0;
        for (int u : nb) score += (nb - adj[static_cast<std::size_t>(u)]).size() - 1;
        score /= 2;
      }
      if (best < 0 || score < best_score) {
        best = v;
        best_score = score;
      }
    }
    VertexSet nb = adj[static_cast<std::size_t>(best)] & rem;
    for (int u : nb) {
      adj[static_cast<std::size_t>(u)] |= nb;
      adj[static_cast<std::size_t>(u)].erase(u);
    }
    rem.erase(best);
    order.push_back(best);
  }
  return order;
}

int greedy_clique_size(const Graph& g) {
  int best = g.order() > 0 ? 1 : 0;
  for (int v = 0; v < g.order(); ++v) {
    VertexSet cand = g.neighbors(v);
    int size = 1;
    while (!cand.empty()) {
      int pick = -1, pick_deg = -1;
      for (int u : cand) {
        int d = (g.neighbors(u) & cand).size();
        if (d > pick_deg) {
          pick = u;
          pick_deg = d;
        }
      }
      ++size;
      cand &= g.neighbors(pick);
    }
    best = std::max(best, size);
  }
  return best;
}

int minor_min_width(const Graph& g) {
  const int n = g.order();
  std::vector<VertexSet> adj;
  for (int v = 0; v < n; ++v) adj.push_back(g.neighbors(v));
  VertexSet rem = g.all();
  int lb = 0;
  while (rem.size() > 1) {
    int v = -1, dv = 0;
    for (int u : rem) {
      int du = (adj[static_cast<std::size_t>(u)] & rem).size();
      if (v < 0 || du < dv) {
        v = u;
        dv = du;
      }
    }
    lb = std::max(lb, dv);
    VertexSet nb = adj[static_cast<std::size_t>(v)] & rem;
    rem.erase(v);
    if (nb.empty()) continue;
    int u = -1, du = 0;
    for (int w : nb) {
      int dw = (adj[static_cast<std::size_t>(w)] & rem).size();
      if (u < 0 || dw < du) {
        u = w;
        du = dw;
      }
    }
    adj[static_cast<std::size_t>(u)] |= nb;
    adj[static_cast<std::size_t>(u)].erase(u);
    for (int w : nb)
      if (w != u) adj[static_cast<std::size_t>(w)].insert(u);
  }
  return lb;
}

}  // namespace

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

int elimination_width(const Graph& g, const std::vector<int>& order) {
  const int n = g.order();
  if (static_cast<int>(order.size()) != n) throw InvalidInput("elimination order must list every vertex once");
  std::vector<VertexSet> adj;
  for (int v = 0; v < n; ++v) adj.push_back(g.neighbors(v));
  VertexSet rem = g.all();
  int width = 0;
  for (int v : order) {
    if (!rem.contains(v)) throw InvalidInput("elimination order must list every vertex once");
    VertexSet nb = adj[static_cast<std::size_t>(v)] & rem;
    nb.erase(v);
    width = std::max(width, nb.size());
    for (int u : nb) {
      adj[static_cast<std::size_t>(u)] |= nb;
      adj[static_cast<std::size_t>(u)].erase(u);
    }
    rem.erase(v);
  }
  return width;
}

TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<int>& order) {
  const int n = g.order();
  if (static_cast<int>(order.size()) != n) throw InvalidInput("elimination order must list every vertex once");
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    int v = order[static_cast<std::size_t>(i)];
    if (!g.valid_vertex(v) || pos[static_cast<std::size_t>(v)] >= 0)
      throw InvalidInput("elimination order must list every vertex once");
    pos[static_cast<std::size_t>(v)] = i;
  }
  std::vector<VertexSet> adj;
  for (int v = 0; v < n; ++v) adj.push_back(g.neighbors(v));
  TreeDecomposition td;
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) {
    const int v = order[static_cast<std::size_t>(i)];
    VertexSet later = g.empty_set();
    for (int u : adj[static_cast<std::size_t>(v)])
      if (pos[static_cast<std::size_t>(u)] > i) later.insert(u);
    for (int u : later) {
      adj[static_cast<std::size_t>(u)] |= later;
      adj[static_cast<std::size_t>(u)].erase(u);
    }
    VertexSet bag = later;
    bag.insert(v);
    td.bags.push_back(bag.to_vector());
    int parent = -1;
    for (int u : later)
      if (parent < 0 || pos[static_cast<std::size_t>(u)] < pos[static_cast<std::size_t>(parent)]) parent = u;
    if (parent < 0)
      roots.push_back(i);
    else
      td.tree_edges.emplace_back(i, pos[static_cast<std::size_t>(parent)]);
  }
  for (std::size_t r = 1; r < roots.size(); ++r) td.tree_edges.emplace_back(roots[r - 1], roots[r]);
  return td;
}

TreewidthResult treewidth_exact(const Graph& g, const ExactOptions& opts) {
  if (opts.guard > 64) throw InvalidInput("exact treewidth guard cannot exceed 64");
  if (g.order() > opts.guard) throw ScaleLimit("treewidth_exact", g.order(), opts.guard);
  TreewidthResult upper = tw_upper(g);
  int k = tw_lower(g);
  ExactSearch search(g);
  for (; k < upper.width; ++k) {
    if (!search.decide(k)) continue;
    TreewidthResult out;
    out.width = k;
    out.elimination_order = search.order();
    out.decomposition = decomposition_from_order(g, out.elimination_order);
    return out;
  }
  return upper;
}

TreewidthResult tw_upper(const Graph& g) {
  TreewidthResult best;
  bool first = true;
  for (Heuristic h : {Heuristic::min_fill, Heuristic::min_degree}) {
    auto order = greedy_order(g, h);
    int w = elimination_width(g, order);
    if (first || w < best.width) {
      best.width = w;
      best.elimination_order = std::move(order);
      first = false;
    }
  }
  best.decomposition = decomposition_from_order(g, best.elimination_order);
  return best;
}

int tw_lower(const Graph& g) {
  if (g.order() == 0) return 0;
  int omega = g.order() <= 64 ? clique_number(g) : greedy_clique_size(g);
  return std::max({0, omega - 1, minor_min_width(g)});
}

Validation verify_decomposition(const Graph& g, const TreeDecomposition& td) {
  const int nodes = static_cast<int>(td.bags.size());
  const int n = g.order();
  if (nodes == 0) {
    if (n == 0 && td.tree_edges.empty()) return std::nullopt;
    return Violation{n == 0 ? "tree" : "vertex-coverage", n == 0 ? "edges without nodes" : "vertex 0 is in no bag"};
  }
  if (static_cast<int>(td.tree_edges.size()) != nodes - 1)
    return Violation{"tree", std::to_string(nodes) + " nodes but " + std::to_string(td.tree_edges.size()) + " edges"};
  std::vector<std::vector<int>> tree(static_cast<std::size_t>(nodes));
  for (auto [a, b] : td.tree_edges) {
    if (a < 0 || b < 0 || a >= nodes || b >= nodes || a == b)
      return Violation{"tree", "bad tree edge " + std::to_string(a) + "-" + std::to_string(b)};
    tree[static_cast<std::size_t>(a)].push_back(b);
    tree[static_cast<std::size_t>(b)].push_back(a);
  }
  // Connected with nodes - 1 edges means a tree.
  std::vector<bool> seen(static_cast<std::size_t>(nodes), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    int a = stack.back();
    stack.pop_back();
    for (int b : tree[static_cast<std::size_t>(a)])
      if (!seen[static_cast<std::size_t>(b)]) {
        seen[static_cast<std::size_t>(b)] = true;
        ++reached;
        stack.push_back(b);
      }
  }
  if (reached != nodes) return Violation{"tree", "tree is disconnected"};
  std::vector<VertexSet> bags;
  for (int i = 0; i < nodes; ++i) {
    VertexSet b(n);
    for (int v : td.bags[static_cast<std::size_t>(i)]) {
      if (!g.valid_vertex(v) || b.contains(v))
        return Violation{"range", "bag " + std::to_string(i) + " has bad or repeated vertex " + std::to_string(v)};
      b.insert(v);
    }
    bags.push_back(std::move(b));
  }
  for (int v = 0; v < n; ++v)
    if (std::none_of(bags.begin(), bags.end(), [v](const VertexSet& b) { return b.contains(v); }))
      return Violation{"vertex-coverage", "vertex " + std::to_string(v) + " is in no bag"};
  for (auto [u, v] : g.edges())
    if (std::none_of(bags.begin(), bags.end(), [u, v](const VertexSet& b) { return b.contains(u) && b.contains(v); }))
      return Violation{"edge-coverage", "edge " + std::to_string(u) + "-" + std::to_string(v) + " is in no bag"};
  for (int v = 0; v < n; ++v) {
    int holders = 0, start = -1;
    for (int i = 0; i < nodes; ++i)
      if (bags[static_cast<std::size_t>(i)].contains(v)) {
        ++holders;
        if (start < 0) start = i;
      }
    std::vector<bool> hit(static_cast<std::size_t>(nodes), false);
    std::vector<int> st{start};
    hit[static_cast<std::size_t>(start)] = true;
    int count = 1;
    while (!st.empty()) {
      int a = st.back();
      st.pop_back();
      for (int b : tree[static_cast<std::size_t>(a)])
        if (!hit[static_cast<std::size_t>(b)] && bags[static_cast<std::size_t>(b)].contains(v)) {
          hit[static_cast<std::size_t>(b)] = true;
          ++count;
          st.push_back(b);
        }
    }
    if (count != holders)
      return Violation{"connectivity", "bags holding vertex " + std::to_string(v) + " are not connected"};
  }
  return std::nullopt;
}

std::string to_pace(const TreeDecomposition& td, int n) {
  std::ostringstream out;
  out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << n << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << i + 1;
    for (int v : td.bags[i]) out << ' ' << v + 1;
    out << '\n';
  }
  for (auto [a, b] : td.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
  return out.str();
}

std::pair<TreeDecomposition, int> from_pace(std::istream& in) {
  std::string line;
  TreeDecomposition td;
  long long bags = -1, n = -1, size = -1;
  std::vector<bool> filled;
  auto fail = [](const std::string& why) { return InvalidInput("malformed PACE decomposition: " + why); };
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head == "c") continue;
    if (head == "s") {
      std::string td_tag;
      if (bags >= 0 || !(ls >> td_tag >> bags >> size >> n) || td_tag != "td" || bags < 0 || n < 0 || size < 0)
        throw fail("bad header");
      td.bags.assign(static_cast<std::size_t>(bags), {});
      filled.assign(static_cast<std::size_t>(bags), false);
      continue;
    }
    if (bags < 0) throw fail("content before header");
    if (head == "b") {
      long long id;
      if (!(ls >> id) || id < 1 || id > bags || filled[static_cast<std::size_t>(id - 1)]) throw fail("bad bag id");
      filled[static_cast<std::size_t>(id - 1)] = true;
      long long v;
      auto& bag = td.bags[static_cast<std::size_t>(id - 1)];
      while (ls >> v) {
        if (v < 1 || v > n) throw fail("vertex out of range");
        bag.push_back(static_cast<int>(v - 1));
      }
      if (!ls.eof()) throw fail("bad bag entry");
      continue;
    }
    long long a, b;
    std::istringstream es(line);
    std::string extra;
    if (!(es >> a >> b) || (es >> extra) || a < 1 || b < 1 || a > bags || b > bags) throw fail("bad tree edge");
    td.tree_edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
  }
  if (bags < 0) throw fail("missing header");
  if (std::find(filled.begin(), filled.end(), false) != filled.end()) throw fail("missing bag line");
  if (td.width() + 1 != size && !(bags == 0 && size == 0)) throw fail("declared bag size does not match");
  return {td, static_cast<int>(n)};
}

}  // namespace obslab
