#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "pathdecomp/errors.hpp"
#include "pathdecomp/generators.hpp"
#include "pathdecomp/oracle.hpp"
#include "pathdecomp/random.hpp"

using namespace pathdecomp;

namespace {

Graph random_gnp(std::size_t n, double p, std::uint64_t seed) {
  Rng rng = make_rng(seed, 1);
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (bernoulli(rng, p)) edges.push_back({i, j});
    }
  }
  return Graph::from_edges(n, edges);
}

// Every path cover is a vertex ordering cut at non-adjacent neighbours.
std::size_t brute_min_path_cover(const Graph& g) {
  std::vector<Vertex> perm(g.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  if (perm.empty()) return 0;
  std::size_t best = perm.size();
  do {
    std::size_t pieces = 1;
    for (std::size_t i = 0; i + 1 < perm.size(); ++i) pieces += !g.has_edge(perm[i], perm[i + 1]);
    best = std::min(best, pieces);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool chunk_is_path(const Graph& g, const std::vector<EdgeId>& chunk) {
  std::map<Vertex, int> deg;
  for (EdgeId e : chunk) {
    ++deg[g.edge(e).u];
    ++deg[g.edge(e).v];
  }
  int ends = 0;
  for (auto [v, d] : deg) {
    if (d > 2) return false;
    ends += d == 1;
  }
  // A union of k edges with max degree 2, two ends and k+1 vertices is a path.
  return ends == 2 && deg.size() == chunk.size() + 1;
}

bool brute_path_decomposition(const Graph& g, std::size_t len) {
  std::vector<EdgeId> order(g.num_edges());
  std::iota(order.begin(), order.end(), 0);
  if (order.size() % len) return false;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < order.size() && ok; i += len) {
      std::vector<EdgeId> chunk(order.begin() + i, order.begin() + i + len);
      ok = chunk_is_path(g, chunk);
    }
    if (ok) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

bool brute_perfect_matching(const Graph& g) {
  const std::size_t m = g.num_edges(), n = g.num_vertices();
  if (n % 2) return false;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != n / 2) continue;
    std::set<Vertex> covered;
    for (EdgeId e = 0; e < m; ++e) {
      if (mask >> e & 1) {
        covered.insert(g.edge(e).u);
        covered.insert(g.edge(e).v);
      }
    }
    if (covered.size() == n) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("minimum path cover on small examples") {
  CHECK(exact_min_path_cover(gen_complete(4)).count == 1);
  CHECK(exact_min_path_cover(gen_clique_union(2, 4)).count == 2);
  CHECK(exact_min_path_cover(Graph::from_edges(3, std::vector<Edge>{})).count == 3);
  CHECK(exact_min_path_cover(gen_complete_bipartite(1, 5)).count == 4);
  auto sol = exact_min_path_cover(gen_petersen());
  CHECK(sol.count == 1);
  auto rep = verify_edge_disjoint_paths(gen_petersen(), sol.paths);
  CHECK(rep.valid);
  CHECK_THROWS_AS(exact_min_path_cover(gen_complete(13)), OracleBudgetExceeded);
}

TEST_CASE("minimum path cover agrees with permutation search") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Graph g = random_gnp(7, 0.3, seed);
    auto sol = exact_min_path_cover(g);
    CHECK(sol.count == brute_min_path_cover(g));
    CHECK(sol.paths.size() == sol.count);
    std::set<Vertex> seen;
    for (const auto& p : sol.paths) {
      for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        CHECK(seen.insert(p.vertices[i]).second);
        if (i) CHECK(g.has_edge(p.vertices[i - 1], p.vertices[i]));
      }
    }
    CHECK(seen.size() == 7);
  }
}

TEST_CASE("path decomposition existence") {
  auto k4 = exact_path_decomposition(gen_complete(4), 3);
  REQUIRE(k4.has_value());
  CHECK(verify_edge_disjoint_paths(gen_complete(4), *k4).covered_edges == 6);
  CHECK_FALSE(exact_path_decomposition(gen_complete(4), 4).has_value());
  CHECK(exact_path_decomposition(gen_cycle(6), 3).has_value());
  CHECK_FALSE(exact_path_decomposition(gen_complete_bipartite(1, 3), 3).has_value());
  CHECK(exact_path_decomposition(gen_complete_bipartite(1, 4), 2).has_value());
  CHECK(exact_path_decomposition(gen_complete(5), 2).has_value());
}

TEST_CASE("path decomposition agrees with edge-order search") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Graph g = random_gnp(6, 0.45, seed);
    if (g.num_edges() > 9 || g.num_edges() == 0) continue;
    for (std::size_t len : {2u, 3u}) {
      auto got = exact_path_decomposition(g, len);
      CHECK(got.has_value() == brute_path_decomposition(g, len));
      if (got) {
        auto rep = verify_edge_disjoint_paths(g, *got);
        CHECK(rep.valid);
        CHECK(rep.covered_edges == g.num_edges());
        for (const auto& p : *got) CHECK(p.length() == len);
      }
    }
  }
}

TEST_CASE("perfect matching agrees with subset search") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Graph g = random_gnp(8, 0.25, seed);
    if (g.num_edges() > 16) continue;
    auto m = exact_perfect_matching(g);
    CHECK(m.has_value() == brute_perfect_matching(g));
  }
}

TEST_CASE("cubic examples satisfy both sides of the criterion") {
  for (const Graph& g : {gen_complete(4), gen_complete_bipartite(3, 3), gen_petersen()}) {
    auto r = kotzig_check(g);
    CHECK(r.has_p3_decomposition);
    CHECK(r.has_perfect_matching);
  }
  CHECK_THROWS_AS(kotzig_check(gen_cycle(5)), PreconditionError);
}

TEST_CASE("isomorphism test") {
  Graph a = gen_cycle(6);
  std::vector<Edge> relabel;
  const Vertex perm[6] = {3, 5, 0, 2, 4, 1};
  for (const Edge& e : a.edges()) relabel.push_back(Edge::of(perm[e.u], perm[e.v]));
  CHECK(are_isomorphic(a, Graph::from_edges(6, relabel)));
  CHECK_FALSE(are_isomorphic(gen_complete_bipartite(3, 3), gen_clique_union(2, 3)));
}

TEST_CASE("sampled cubic corpus finds the known class counts") {
  // Connected cubic graphs on 4..10 vertices: 1, 2, 5, 19 classes.
  CHECK(sample_cubic_graph_classes(4, 20, 1).size() == 1);
  CHECK(sample_cubic_graph_classes(6, 200, 1).size() == 2);
  CHECK(sample_cubic_graph_classes(8, 2000, 1).size() == 5);
  CHECK(sample_cubic_graph_classes(10, 6000, 1).size() == 19);
}
