#include "pathdecomp/generators.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "pathdecomp/errors.hpp"
#include "pathdecomp/random.hpp"

namespace pathdecomp {
namespace {

std::uint64_t key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Pairs stubs consecutively after a shuffle.
std::vector<Edge> pair_stubs(std::vector<Vertex> stubs, Rng& rng) {
  shuffle_in_place(stubs, rng);
  std::vector<Edge> pairs;
  pairs.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    pairs.push_back(Edge{stubs[i], stubs[i + 1]});
  }
  return pairs;
}

bool is_simple(const std::vector<Edge>& pairs) {
  std::unordered_map<std::uint64_t, int> seen;
  seen.reserve(pairs.size() * 2);
  for (const Edge& e : pairs) {
    if (e.u == e.v || seen[key(e.u, e.v)]++) return false;
  }
  return true;
}

// Double-edge swaps that remove loops and parallel edges. `allowed` (if set)
// restricts new edges, e.g. to keep a bipartition.
template <class Allowed>
std::vector<Edge> repair(std::vector<Edge> pairs, Rng& rng, Allowed allowed) {
  std::unordered_map<std::uint64_t, int> mult;
  mult.reserve(pairs.size() * 2);
  for (const Edge& e : pairs) ++mult[key(e.u, e.v)];
  auto bad = [&](const Edge& e) { return e.u == e.v || mult[key(e.u, e.v)] > 1; };
  const std::size_t m = pairs.size();
  const std::size_t budget = 200 * m + 1000;
  for (std::size_t iter = 0; iter < budget; ++iter) {
    std::vector<std::size_t> bad_idx;
    for (std::size_t i = 0; i < m; ++i) {
      if (bad(pairs[i])) bad_idx.push_back(i);
    }
    if (bad_idx.empty()) return pairs;
    for (std::size_t i : bad_idx) {
      if (!bad(pairs[i])) continue;
      for (int tries = 0; tries < 64; ++tries) {
        std::size_t j = uniform_below(rng, m);
        if (j == i) continue;
        Edge a = pairs[i], b = pairs[j];
        if (bernoulli(rng, 0.5)) std::swap(b.u, b.v);
        Edge na{a.u, b.u}, nb{a.v, b.v};
        if (na.u == na.v || nb.u == nb.v) continue;
        if (key(na.u, na.v) == key(nb.u, nb.v)) continue;
        if (!allowed(na) || !allowed(nb)) continue;
        if (mult[key(na.u, na.v)] > 0 || mult[key(nb.u, nb.v)] > 0) continue;
        --mult[key(a.u, a.v)];
        --mult[key(pairs[j].u, pairs[j].v)];
        ++mult[key(na.u, na.v)];
        ++mult[key(nb.u, nb.v)];
        pairs[i] = na;
        pairs[j] = nb;
        break;
      }
    }
  }
  throw BudgetExhausted("edge-swap repair did not converge");
}

}  // namespace

Graph gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed,
                         std::size_t retry_budget) {
  if ((n * d) % 2 != 0) throw PreconditionError("n*d must be even");
  if (d >= n && !(n == 0 && d == 0)) throw PreconditionError("d must be smaller than n");
  Rng rng = make_rng(seed, 0x7e6);
  std::vector<Vertex> stubs;
  stubs.reserve(n * d);
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < d; ++k) stubs.push_back(v);
  }
  // Rejection succeeds with probability about exp((1 - d^2) / 4), so large d
  // goes to repair after the first pairing.
  const std::size_t attempts = d * d <= 40 ? std::max<std::size_t>(retry_budget, 1) : 1;
  std::vector<Edge> pairs;
  for (std::size_t a = 0; a < attempts; ++a) {
    pairs = pair_stubs(stubs, rng);
    if (is_simple(pairs)) return Graph::from_edges(n, pairs);
  }
  pairs = repair(std::move(pairs), rng, [](const Edge&) { return true; });
  Graph g = Graph::from_edges(n, pairs);
  if (!g.is_regular(d)) throw Error("random regular generator produced wrong degrees");
  return g;
}

Graph gen_clique_union(std::size_t copies, std::size_t size) {
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < copies; ++c) {
    Vertex base = static_cast<Vertex>(c * size);
    for (Vertex i = 0; i < size; ++i) {
      for (Vertex j = i + 1; j < size; ++j) edges.push_back({base + i, base + j});
    }
  }
  return Graph::from_edges(copies * size, edges);
}

Graph gen_complete(std::size_t n) { return gen_clique_union(1, n); }

Graph gen_cycle(std::size_t n) {
  if (n < 3) throw PreconditionError("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.push_back(Edge::of(i, static_cast<Vertex>((i + 1) % n)));
  return Graph::from_edges(n, edges);
}

Graph gen_complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < a; ++i) {
    for (Vertex j = 0; j < b; ++j) edges.push_back({i, static_cast<Vertex>(a + j)});
  }
  return Graph::from_edges(a + b, edges);
}

Graph gen_petersen() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.push_back(Edge::of(i, (i + 1) % 5));
    edges.push_back(Edge::of(i, i + 5));
    edges.push_back(Edge::of(i + 5, (i + 2) % 5 + 5));
  }
  return Graph::from_edges(10, edges);
}

Graph gen_clique_pair(std::size_t a, std::size_t b, std::size_t crossing,
                      std::uint64_t seed) {
  if (crossing > a * b) throw PreconditionError("too many crossing edges");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < a; ++i) {
    for (Vertex j = i + 1; j < a; ++j) edges.push_back({i, j});
  }
  for (Vertex i = 0; i < b; ++i) {
    for (Vertex j = i + 1; j < b; ++j) {
      edges.push_back({static_cast<Vertex>(a + i), static_cast<Vertex>(a + j)});
    }
  }
  std::vector<Edge> cross;
  for (Vertex i = 0; i < a; ++i) {
    for (Vertex j = 0; j < b; ++j) cross.push_back({i, static_cast<Vertex>(a + j)});
  }
  Rng rng = make_rng(seed, 0xc1);
  shuffle_in_place(cross, rng);
  edges.insert(edges.end(), cross.begin(), cross.begin() + static_cast<std::ptrdiff_t>(crossing));
  return Graph::from_edges(a + b, edges);
}

Graph gen_linked_cliques(std::size_t copies, std::size_t d, std::size_t links,
                         std::uint64_t seed) {
  const std::size_t size = d + 1;
  if (copies < 2) throw PreconditionError("need at least two cliques");
  if ((copies == 2 ? 2 : 4) * links > size) {
    throw PreconditionError("too many links per clique pair");
  }
  Graph base = gen_clique_union(copies, size);
  std::vector<Edge> edges = base.edges();
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < edges.size(); ++i) index[key(edges[i].u, edges[i].v)] = i;
  std::vector<char> removed(edges.size(), 0);
  Rng rng = make_rng(seed, 0x11c);
  std::vector<Edge> added;
  // Clique c donates the matching edges (0,1),(2,3),... to its successor and
  // the edges (size-1,size-2),... to its predecessor.
  for (std::size_t c = 0; c < copies; ++c) {
    const std::size_t next = (c + 1) % copies;
    if (copies == 2 && c == 1) break;
    const Vertex bc = static_cast<Vertex>(c * size), bn = static_cast<Vertex>(next * size);
    for (std::size_t k = 0; k < links; ++k) {
      Vertex a1 = bc + static_cast<Vertex>(2 * k), b1 = a1 + 1;
      Vertex a2 = bn + static_cast<Vertex>(size - 1 - 2 * k), b2 = a2 - 1;
      if (copies == 2) {
        a2 = bn + static_cast<Vertex>(2 * k);
        b2 = a2 + 1;
      }
      removed[index.at(key(a1, b1))] = 1;
      removed[index.at(key(a2, b2))] = 1;
      if (bernoulli(rng, 0.5)) std::swap(a2, b2);
      added.push_back(Edge::of(a1, a2));
      added.push_back(Edge::of(b1, b2));
    }
  }
  std::vector<Edge> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!removed[i]) out.push_back(edges[i]);
  }
  out.insert(out.end(), added.begin(), added.end());
  return Graph::from_edges(copies * size, out);
}

Graph gen_random_bipartite(std::size_t n, std::size_t dmin, std::size_t dmax,
                           std::uint64_t seed) {
  if (dmin > dmax || dmax > n) throw PreconditionError("bad degree range");
  Rng rng = make_rng(seed, 0xb1);
  auto draw = [&] {
    std::vector<std::size_t> deg(n);
    for (auto& x : deg) x = dmin + uniform_below(rng, dmax - dmin + 1);
    return deg;
  };
  auto left = draw(), right = draw();
  auto sum = [](const std::vector<std::size_t>& v) {
    std::size_t s = 0;
    for (auto x : v) s += x;
    return s;
  };
  // Balance the sums by nudging degrees of the heavier side toward dmin.
  while (sum(left) != sum(right)) {
    auto& heavy = sum(left) > sum(right) ? left : right;
    std::size_t i = uniform_below(rng, n);
    if (heavy[i] > dmin) --heavy[i];
  }
  std::vector<Vertex> ls, rs;
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < left[v]; ++k) ls.push_back(v);
    for (std::size_t k = 0; k < right[v]; ++k) rs.push_back(static_cast<Vertex>(n + v));
  }
  shuffle_in_place(rs, rng);
  std::vector<Edge> pairs;
  for (std::size_t i = 0; i < ls.size(); ++i) pairs.push_back(Edge{ls[i], rs[i]});
  const Vertex split = static_cast<Vertex>(n);
  pairs = repair(std::move(pairs), rng, [split](const Edge& e) {
    return (e.u < split) != (e.v < split);
  });
  return Graph::from_edges(2 * n, pairs);
}

}  // namespace pathdecomp
