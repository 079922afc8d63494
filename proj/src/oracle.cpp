#include "pathdecomp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>

#include "pathdecomp/errors.hpp"
#include "pathdecomp/generators.hpp"
#include "pathdecomp/random.hpp"

namespace pathdecomp {
namespace {

class Deadline {
 public:
  explicit Deadline(std::chrono::milliseconds limit)
      : end_(std::chrono::steady_clock::now() + limit) {}
  void check() {
    if ((++ticks_ & 0x3ff) == 0 && std::chrono::steady_clock::now() > end_) {
      throw OracleBudgetExceeded("oracle time limit exceeded");
    }
  }

 private:
  std::chrono::steady_clock::time_point end_;
  std::uint64_t ticks_ = 0;
};

void check_size(const Graph& g, const OracleBudget& budget) {
  if (g.num_vertices() > budget.max_vertices) {
    throw OracleBudgetExceeded("graph has more vertices than the oracle budget");
  }
  if (g.num_edges() > budget.max_edges) {
    throw OracleBudgetExceeded("graph has more edges than the oracle budget");
  }
}

std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint32_t> adj(g.num_vertices(), 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  return adj;
}

}  // namespace

PathCoverSolution exact_min_path_cover(const Graph& g, const OracleBudget& budget) {
  if (g.num_vertices() > budget.max_vertices || g.num_vertices() > 20) {
    throw OracleBudgetExceeded("graph has more vertices than the oracle budget");
  }
  Deadline deadline(budget.time_limit);
  const std::size_t n = g.num_vertices();
  PathCoverSolution sol;
  if (n == 0) return sol;
  const auto adj = adjacency_masks(g);
  const std::uint32_t full = (1u << n) - 1;
  // ends[mask]: vertices v such that G[mask] has a Hamilton path ending at v.
  std::vector<std::uint32_t> ends(full + 1, 0);
  for (std::size_t v = 0; v < n; ++v) ends[1u << v] = 1u << v;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    deadline.check();
    for (std::uint32_t e = ends[mask]; e; e &= e - 1) {
      const int v = std::countr_zero(e);
      for (std::uint32_t nb = adj[v] & ~mask; nb; nb &= nb - 1) {
        const int w = std::countr_zero(nb);
        ends[mask | (1u << w)] |= 1u << w;
      }
    }
  }
  std::vector<std::uint8_t> best(full + 1, 255);
  std::vector<std::uint32_t> choice(full + 1, 0);
  best[0] = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t rest = mask ^ low;
    // Enumerate blocks containing the lowest vertex.
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      deadline.check();
      const std::uint32_t block = sub | low;
      if (ends[block] && best[mask ^ block] + 1 < best[mask]) {
        best[mask] = static_cast<std::uint8_t>(best[mask ^ block] + 1);
        choice[mask] = block;
      }
      if (sub == 0) break;
    }
  }
  sol.count = best[full];
  for (std::uint32_t mask = full; mask; mask ^= choice[mask]) {
    std::uint32_t block = choice[mask];
    Path p;
    int v = std::countr_zero(ends[block]);
    std::uint32_t cur = block;
    while (true) {
      p.vertices.push_back(static_cast<Vertex>(v));
      const std::uint32_t prev = cur ^ (1u << v);
      if (!prev) break;
      std::uint32_t cand = ends[prev] & adj[v];
      v = std::countr_zero(cand);
      cur = prev;
    }
    sol.paths.push_back(std::move(p));
  }
  return sol;
}

std::optional<std::vector<Path>> exact_path_decomposition(const Graph& g, std::size_t length,
                                                          const OracleBudget& budget) {
  check_size(g, budget);
  if (length == 0) throw PreconditionError("path length must be positive");
  const std::size_t m = g.num_edges();
  if (m % length != 0) return std::nullopt;
  if (m == 0) return std::vector<Path>{};
  Deadline deadline(budget.time_limit);
  std::vector<char> used(m, 0);
  std::vector<char> on_path(g.num_vertices(), 0);
  std::vector<Path> chosen;

  // on_path marks the vertices of the path under construction only.
  std::function<bool()> solve;
  std::function<bool(std::vector<Vertex>&, std::vector<Vertex>&, std::size_t)> grow =
      [&](std::vector<Vertex>& left, std::vector<Vertex>& right, std::size_t need_left) {
        deadline.check();
        if (left.size() + right.size() - 1 == length) {
          Path p;
          p.vertices.assign(left.rbegin(), left.rend());
          p.vertices.insert(p.vertices.end(), right.begin(), right.end());
          for (Vertex v : p.vertices) on_path[v] = 0;
          chosen.push_back(p);
          if (solve()) return true;
          chosen.pop_back();
          for (Vertex v : p.vertices) on_path[v] = 1;
          return false;
        }
        std::vector<Vertex>& side = need_left > 0 ? left : right;
        const Vertex tip = side.back();
        auto nbrs = g.neighbors(tip);
        auto ids = g.incident(tip);
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
          if (used[ids[k]] || on_path[nbrs[k]]) continue;
          used[ids[k]] = 1;
          on_path[nbrs[k]] = 1;
          side.push_back(nbrs[k]);
          if (grow(left, right, need_left > 0 ? need_left - 1 : 0)) return true;
          side.pop_back();
          on_path[nbrs[k]] = 0;
          used[ids[k]] = 0;
        }
        return false;
      };

  solve = [&]() -> bool {
    EdgeId first = 0;
    while (first < m && used[first]) ++first;
    if (first == m) return true;
    const Edge e = g.edge(first);
    used[first] = 1;
    on_path[e.u] = on_path[e.v] = 1;
    // The lowest unused edge must lie on some path; try every offset of it.
    for (std::size_t need_left = 0; need_left < length; ++need_left) {
      std::vector<Vertex> left{e.u}, right{e.v};
      if (grow(left, right, need_left)) return true;
    }
    on_path[e.u] = on_path[e.v] = 0;
    used[first] = 0;
    return false;
  };

  if (!solve()) return std::nullopt;
  return chosen;
}

std::optional<std::vector<Edge>> exact_perfect_matching(const Graph& g,
                                                        const OracleBudget& budget) {
  if (g.num_vertices() > std::max<std::size_t>(budget.max_vertices, 1) ||
      g.num_vertices() > 24) {
    throw OracleBudgetExceeded("graph has more vertices than the oracle budget");
  }
  Deadline deadline(budget.time_limit);
  const std::size_t n = g.num_vertices();
  if (n % 2) return std::nullopt;
  const auto adj = adjacency_masks(g);
  std::map<std::uint32_t, bool> memo;
  std::function<bool(std::uint32_t)> feasible = [&](std::uint32_t free) -> bool {
    if (!free) return true;
    deadline.check();
    if (auto it = memo.find(free); it != memo.end()) return it->second;
    const int v = std::countr_zero(free);
    bool ok = false;
    for (std::uint32_t nb = adj[v] & free & ~(1u << v); nb && !ok; nb &= nb - 1) {
      const int w = std::countr_zero(nb);
      ok = feasible(free & ~(1u << v) & ~(1u << w));
    }
    memo[free] = ok;
    return ok;
  };
  std::uint32_t free = n == 32 ? ~0u : (1u << n) - 1;
  if (!feasible(free)) return std::nullopt;
  std::vector<Edge> matching;
  while (free) {
    const int v = std::countr_zero(free);
    for (std::uint32_t nb = adj[v] & free & ~(1u << v); nb; nb &= nb - 1) {
      const int w = std::countr_zero(nb);
      const std::uint32_t next = free & ~(1u << v) & ~(1u << w);
      if (feasible(next)) {
        matching.push_back(Edge::of(static_cast<Vertex>(v), static_cast<Vertex>(w)));
        free = next;
        break;
      }
    }
  }
  return matching;
}

KotzigResult kotzig_check(const Graph& g, const OracleBudget& budget) {
  if (!g.is_regular(3)) throw PreconditionError("kotzig_check needs a cubic graph");
  KotzigResult res;
  res.has_p3_decomposition = exact_path_decomposition(g, 3, budget).has_value();
  res.has_perfect_matching = exact_perfect_matching(g, budget).has_value();
  return res;
}

namespace {

// Per-vertex invariant: counts of vertices at each BFS distance.
std::vector<std::vector<std::size_t>> distance_profiles(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<std::size_t>> prof(n);
  for (Vertex s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1);
    std::vector<Vertex> q{s};
    dist[s] = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (Vertex w : g.neighbors(q[i])) {
        if (dist[w] < 0) {
          dist[w] = dist[q[i]] + 1;
          q.push_back(w);
        }
      }
    }
    std::vector<std::size_t> cnt(n + 1, 0);
    for (int d : dist) cnt[d < 0 ? n : static_cast<std::size_t>(d)]++;
    prof[s] = std::move(cnt);
  }
  return prof;
}

}  // namespace

bool are_isomorphic(const Graph& a, const Graph& b) {
  const std::size_t n = a.num_vertices();
  if (n != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  auto pa = distance_profiles(a), pb = distance_profiles(b);
  {
    auto sa = pa, sb = pb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  // Map vertices of a in BFS order so each new vertex has mapped neighbours.
  std::vector<Vertex> order;
  std::vector<char> seen(n, 0);
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    order.push_back(s);
    for (std::size_t i = order.size() - 1; i < order.size(); ++i) {
      for (Vertex w : a.neighbors(order[i])) {
        if (!seen[w]) {
          seen[w] = 1;
          order.push_back(w);
        }
      }
    }
  }
  std::vector<int> map_ab(n, -1), map_ba(n, -1);
  std::function<bool(std::size_t)> extend = [&](std::size_t k) -> bool {
    if (k == n) return true;
    const Vertex x = order[k];
    for (Vertex y = 0; y < n; ++y) {
      if (map_ba[y] >= 0 || pa[x] != pb[y] || a.degree(x) != b.degree(y)) continue;
      bool ok = true;
      for (Vertex w : a.neighbors(x)) {
        if (map_ab[w] >= 0 && !b.has_edge(y, static_cast<Vertex>(map_ab[w]))) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      std::size_t mapped_nb_a = 0, mapped_nb_b = 0;
      for (Vertex w : a.neighbors(x)) mapped_nb_a += map_ab[w] >= 0;
      for (Vertex w : b.neighbors(y)) mapped_nb_b += map_ba[w] >= 0;
      if (mapped_nb_a != mapped_nb_b) continue;
      map_ab[x] = static_cast<int>(y);
      map_ba[y] = static_cast<int>(x);
      if (extend(k + 1)) return true;
      map_ab[x] = map_ba[y] = -1;
    }
    return false;
  };
  return extend(0);
}

std::vector<Graph> sample_cubic_graph_classes(std::size_t n, std::size_t samples,
                                              std::uint64_t seed) {
  std::vector<Graph> classes;
  std::vector<std::vector<std::vector<std::size_t>>> keys;
  for (std::size_t s = 0; s < samples; ++s) {
    Graph g = gen_random_regular(n, 3, mix_seed(seed, s));
    if (connected_components(g).size() != 1) continue;
    auto key = distance_profiles(g);
    std::sort(key.begin(), key.end());
    bool known = false;
    for (std::size_t i = 0; i < classes.size() && !known; ++i) {
      known = keys[i] == key && are_isomorphic(classes[i], g);
    }
    if (!known) {
      classes.push_back(std::move(g));
      keys.push_back(std::move(key));
    }
  }
  return classes;
}

}  // namespace pathdecomp
