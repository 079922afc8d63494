#include <doctest.h>

#include <algorithm>
#include <deque>
#include <set>

#include "pathdecomp/dense_spots.hpp"
#include "pathdecomp/errors.hpp"
#include "pathdecomp/generators.hpp"

using namespace pathdecomp;

namespace {

std::size_t girth(const Graph& g) {
  std::size_t best = SIZE_MAX;
  const std::size_t n = g.num_vertices();
  for (Vertex s = 0; s < n; ++s) {
    std::vector<long> dist(n, -1), par(n, -1);
    std::deque<Vertex> q{s};
    dist[s] = 0;
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop_front();
      for (Vertex w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          par[w] = v;
          q.push_back(w);
        } else if (par[v] != static_cast<long>(w)) {
          best = std::min<std::size_t>(best, static_cast<std::size_t>(dist[v] + dist[w] + 1));
        }
      }
    }
  }
  return best;
}

std::size_t count_in(const std::vector<Vertex>& set, const std::vector<char>& mask) {
  std::size_t c = 0;
  for (Vertex v : set) c += mask[v];
  return c;
}

SampleSet manual_sample(std::vector<Vertex> X) {
  SampleSet s;
  s.X = std::move(X);
  s.p = 1;
  s.K = 2;
  return s;
}

}  // namespace

TEST_CASE("dense family of disjoint cliques is exactly the cliques") {
  const std::size_t d = 10;
  const Graph g = gen_clique_union(3, d + 1);
  const auto fam = find_maximal_dense_family(g, {0.1, static_cast<double>(d), 2});
  REQUIRE(fam.spots.size() == 3);
  std::set<std::vector<Vertex>> got(fam.spots.begin(), fam.spots.end());
  for (Vertex c = 0; c < 3; ++c) {
    std::vector<Vertex> clique;
    for (Vertex i = 0; i <= d; ++i) clique.push_back(c * (d + 1) + i);
    CHECK(got.count(clique) == 1);
  }
  CHECK(fam.maximal);
  CHECK(fam.scan.back().found == 0);
}

TEST_CASE("dense family is empty on a regular graph of girth above four") {
  Graph g;
  for (std::uint64_t seed = 1;; ++seed) {
    g = gen_random_regular(120, 3, seed);
    if (girth(g) > 4) break;
    REQUIRE(seed < 500);
  }
  const auto fam = find_maximal_dense_family(g, {0.1, 3, 2});
  CHECK(fam.spots.empty());
  CHECK(fam.maximal);
}

TEST_CASE("pendant path is not part of the clique spot") {
  const std::size_t d = 8;
  std::vector<Edge> edges = gen_complete(d + 1).edges();
  // Path 0 - 9 - 10 - 11 hanging off the clique.
  edges.push_back({0, 9});
  edges.push_back({9, 10});
  edges.push_back({10, 11});
  const Graph g = Graph::from_edges(12, edges);
  const auto fam = find_maximal_dense_family(g, {0.1, static_cast<double>(d), 2});
  REQUIRE(fam.spots.size() == 1);
  std::vector<Vertex> clique(d + 1);
  for (Vertex i = 0; i <= d; ++i) clique[i] = i;
  CHECK(fam.spots[0] == clique);
}

TEST_CASE("linked cliques still split into cliques") {
  const std::size_t d = 12;
  const Graph g = gen_linked_cliques(5, d, 2, 7);
  const auto fam = find_maximal_dense_family(g, {0.2, static_cast<double>(d), 2});
  CHECK(fam.spots.size() == 5);
  for (const auto& s : fam.spots) CHECK(check_dense_spot(g, s, fam.spec).ok);
}

TEST_CASE("good sample on a single large clique") {
  const std::size_t d = 200;
  const Graph g = gen_complete(d + 1);
  const auto fam = find_maximal_dense_family(g, {0.1, static_cast<double>(d), 2});
  REQUIRE(fam.spots.size() == 1);
  SampleParams sp;
  sp.union_sets = 32;
  const auto s = good_sample(g, fam, 0.2, 0.2, 2, 0.2, 11, sp);
  const auto xm = vertex_mask(g.num_vertices(), s.X);
  const double expect = 0.2 * 201;
  const auto inside = static_cast<double>(count_in(fam.spots[0], xm));
  CHECK(inside >= (1 - s.gamma) * expect - 1e-9);
  CHECK(inside <= (1 + s.gamma) * expect + 1e-9);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    std::size_t c = 0;
    for (Vertex w : g.neighbors(v)) c += xm[w];
    CHECK(static_cast<double>(c) >= (1 - s.gamma) * 0.2 * d - 1e-9);
    CHECK(static_cast<double>(c) <= (1 + s.gamma) * 0.2 * d + 1e-9);
  }
  const auto again = audit_sample(g, fam, s.X, 0.2, s.gamma);
  CHECK(again.size_ok);
  CHECK(again.degrees_ok);
  CHECK(again.spot_sizes_ok);
  CHECK(again.spot_degrees_ok);
  CHECK(s.certificate.success);
}

TEST_CASE("good sample with p = 1 is the whole vertex set") {
  const Graph g = gen_clique_union(2, 9);
  const auto fam = find_maximal_dense_family(g, {0.1, 8, 2});
  const auto s = good_sample(g, fam, 1.0, 0.01, 2, 0.1, 3);
  CHECK(s.X.size() == g.num_vertices());
  CHECK(s.audit.ok());
  CHECK(s.warnings.empty());
}

TEST_CASE("good sample with no spots checks only global events") {
  const Graph g = gen_random_regular(400, 40, 5);
  const DenseFamily fam;
  const auto s = good_sample(g, fam, 0.3, 0.5, 2, 0.5, 9);
  CHECK(s.certificate.success);
  CHECK(s.audit.size_ok);
  CHECK(s.audit.degrees_ok);
}

TEST_CASE("good sample rejects bad input") {
  CHECK_THROWS_AS(good_sample(gen_complete(5), DenseFamily{}, 0, 0.1, 1, 0.1, 1),
                  PreconditionError);
  std::vector<Edge> path{{0, 1}, {1, 2}};
  CHECK_THROWS_AS(good_sample(Graph::from_edges(3, path), DenseFamily{}, 0.5, 0.1, 1, 0.1, 1),
                  PreconditionError);
}

TEST_CASE("approximability witnesses") {
  const Graph g = gen_complete(11);
  std::vector<Vertex> X{0, 1, 2, 3, 4, 5, 6};
  // H = N(0, X).
  std::vector<Vertex> H{1, 2, 3, 4, 5, 6};
  auto w = is_approximable(g, X, H, 1, 0.0, 1.0);
  CHECK(w.ok);
  CHECK(w.difference == 0);
  REQUIRE(w.witness.size() == 1);
  // Any clique vertex outside X sees exactly X; the difference is |X - H|.
  std::vector<Vertex> H2{0, 1, 2, 3, 4, 5};
  w = is_approximable(g, X, H2, 1, 1.0, 1.0);
  CHECK(w.ok);
  CHECK(w.difference <= 1);

  // Four isolated sample vertices at pairwise distance >= 4 on a long cycle.
  const Graph c = gen_cycle(40);
  std::vector<Vertex> far{0, 10, 20, 30};
  w = is_approximable(c, far, far, 1, 2.5, 1.0);
  CHECK_FALSE(w.ok);
  // Exhaustive check of every single-vertex witness agrees.
  std::size_t best = far.size();
  const auto xm = vertex_mask(40, far);
  for (Vertex v = 0; v < 40; ++v) {
    std::size_t hit = 0;
    for (Vertex u : c.neighbors(v)) hit += xm[u];
    best = std::min(best, far.size() - hit);
  }
  CHECK(static_cast<double>(best) > 2.5);
  CHECK_THROWS_AS(is_approximable(c, far, std::vector<Vertex>{1}, 1, 1, 1), PreconditionError);
}

TEST_CASE("connecting with no forests is empty") {
  const Graph g = gen_complete(6);
  const auto r = connect_forests_to_spots(g, DenseFamily{}, manual_sample({0}), {}, 4, 1);
  CHECK(r.connected.empty());
  CHECK(r.leftover_paths == 0);
  CHECK(r.rescan_clean);
}

TEST_CASE("one join through a shared sample vertex") {
  // Paths 0-1-2 and 3-4-5; vertex 6 sees all four ends.
  std::vector<Edge> e{{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 6}, {2, 6}, {3, 6}, {5, 6}};
  const Graph g = Graph::from_edges(7, e);
  std::vector<PathForest> forests{PathForest({Path{{0, 1, 2}}, Path{{3, 4, 5}}})};
  const auto r = connect_forests_to_spots(g, DenseFamily{}, manual_sample({6}), forests, 1, 4);
  REQUIRE(r.joins.size() == 1);
  REQUIRE(r.joins[0].size() == 1);
  CHECK(r.joins[0][0].length() == 2);
  CHECK(r.joins[0][0].vertices[1] == 6);
  CHECK(r.attaches[0].empty());
  REQUIRE(r.leftover[0].size() == 1);
  CHECK(r.leftover[0].paths()[0].length() == 6);
  CHECK(r.rescan_clean);
}

TEST_CASE("attachment into a spot by length-one connectors") {
  const std::size_t d = 8;
  std::vector<Edge> edges = gen_complete(d + 1).edges();
  edges.push_back({9, 10});
  edges.push_back({10, 11});
  edges.push_back({0, 9});
  edges.push_back({1, 11});
  const Graph g = Graph::from_edges(12, edges);
  DenseFamily fam;
  fam.spec = {0.1, static_cast<double>(d), 2};
  fam.spots.push_back({0, 1, 2, 3, 4, 5, 6, 7, 8});
  std::vector<PathForest> forests{PathForest({Path{{9, 10, 11}}})};
  const auto r = connect_forests_to_spots(g, fam, manual_sample({0, 1, 2, 3}), forests, 1, 2);
  REQUIRE(r.connected[0].size() == 1);
  const Path& p = r.connected[0].paths()[0];
  CHECK(p.length() == 4);
  std::set<Vertex> ends{p.front(), p.back()};
  CHECK(ends == std::set<Vertex>{0, 1});
  CHECK(r.attaches[0].size() == 2);
  for (const auto& c : r.attaches[0]) CHECK(c.length() == 1);
  CHECK(r.leftover_paths == 0);
}

TEST_CASE("connectors on a random graph respect every invariant") {
  const std::size_t d = 12;
  // Five spots K_13 and a random 12-regular part, joined by a few switches.
  const Graph cl = gen_clique_union(5, d + 1);
  const Graph rr = gen_random_regular(300, d, 3);
  std::vector<Edge> edges = cl.edges();
  const Vertex off = static_cast<Vertex>(cl.num_vertices());
  for (const auto& e : rr.edges()) edges.push_back({e.u + off, e.v + off});
  // Each clique vertex 0..3 gets one edge into the random part.
  for (Vertex c = 0; c < 5; ++c) {
    for (Vertex i = 0; i < 4; ++i) edges.push_back({c * 13 + i, off + c * 40 + i * 7});
  }
  const Graph g = Graph::from_edges(off + 300, edges);
  DenseFamily fam;
  fam.spec = {0.2, static_cast<double>(d), 2};
  for (Vertex c = 0; c < 5; ++c) {
    std::vector<Vertex> s;
    for (Vertex i = 0; i < 13; ++i) s.push_back(c * 13 + i);
    fam.spots.push_back(s);
  }
  // X: every clique vertex 0..5 and every third random vertex.
  std::vector<Vertex> X;
  for (Vertex c = 0; c < 5; ++c) {
    for (Vertex i = 0; i < 6; ++i) X.push_back(c * 13 + i);
  }
  for (Vertex v = off; v < off + 300; v += 3) X.push_back(v);
  const auto xm = vertex_mask(g.num_vertices(), X);
  const auto owner = fam.owner(g.num_vertices());

  // Two forests of greedy length-3 paths in the random part outside X.
  std::vector<char> used(g.num_edges(), 0);
  std::vector<PathForest> forests(2);
  for (std::size_t f = 0; f < 2; ++f) {
    std::vector<char> on(g.num_vertices(), 0);
    for (Vertex s = off; s < off + 300; ++s) {
      if (xm[s] || on[s]) continue;
      Path p{{s}};
      while (p.length() < 3) {
        bool grew = false;
        for (Vertex w : g.neighbors(p.back())) {
          const auto e = *g.edge_id(p.back(), w);
          if (w >= off && !xm[w] && !on[w] && !used[e] &&
              std::find(p.vertices.begin(), p.vertices.end(), w) == p.vertices.end()) {
            p.vertices.push_back(w);
            grew = true;
            break;
          }
        }
        if (!grew) break;
      }
      if (p.length() < 3) continue;
      for (Vertex v : p.vertices) on[v] = 1;
      for (EdgeId e : path_edge_ids(g, p)) used[e] = 1;
      forests[f].add(p);
    }
  }
  const std::size_t k = 3;
  const auto r = connect_forests_to_spots(g, fam, manual_sample(X), forests, k, 17);
  CHECK(r.rescan_clean);

  std::vector<Path> all;
  for (std::size_t f = 0; f < 2; ++f) {
    std::size_t in_edges = 0, out_edges = 0;
    for (const auto& p : forests[f].paths()) in_edges += p.length();
    for (const auto& q : r.joins[f]) {
      CHECK(q.length() <= 2 * k);
      for (std::size_t i = 1; i + 1 < q.vertices.size(); ++i) CHECK(xm[q.vertices[i]]);
      in_edges += q.length();
    }
    for (const auto& c : r.attaches[f]) {
      CHECK(c.length() <= k);
      CHECK(xm[c.back()]);
      CHECK(owner[c.back()] != UINT32_MAX);
      for (std::size_t i = 1; i + 1 < c.vertices.size(); ++i) {
        CHECK(xm[c.vertices[i]]);
        CHECK(owner[c.vertices[i]] == UINT32_MAX);
      }
    }
    for (const auto& p : r.connected[f].paths()) {
      CHECK(xm[p.front()]);
      CHECK(xm[p.back()]);
      CHECK(owner[p.front()] != UINT32_MAX);
      CHECK(owner[p.back()] != UINT32_MAX);
      out_edges += p.length();
      all.push_back(p);
    }
    for (const auto& p : r.leftover[f].paths()) {
      out_edges += p.length();
      all.push_back(p);
    }
    std::size_t attach_edges = 0;
    for (const auto& c : r.attaches[f]) attach_edges += c.length();
    CHECK(out_edges == in_edges + attach_edges);
    std::vector<Path> both = r.connected[f].paths();
    both.insert(both.end(), r.leftover[f].paths().begin(), r.leftover[f].paths().end());
    CHECK(PathForest(both).vertex_disjoint());
  }
  CHECK(verify_edge_disjoint_paths(g, all).valid);

  // End quotas: sqrt(d) per vertex over all forests and per (spot, forest).
  const double quota = std::sqrt(static_cast<double>(g.max_degree()));
  std::vector<std::size_t> load(g.num_vertices(), 0);
  for (std::size_t f = 0; f < 2; ++f) {
    std::vector<std::size_t> per_spot(fam.spots.size(), 0);
    for (const auto& p : r.connected[f].paths()) {
      for (Vertex e : {p.front(), p.back()}) {
        ++load[e];
        ++per_spot[owner[e]];
      }
    }
    for (auto c : per_spot) CHECK(static_cast<double>(c) <= quota + 1e-9);
  }
  for (auto c : load) CHECK(static_cast<double>(c) <= quota + 1e-9);
}

TEST_CASE("connecting rejects forests inside X") {
  const Graph g = gen_complete(5);
  std::vector<PathForest> forests{PathForest({Path{{0, 1}}})};
  CHECK_THROWS_AS(connect_forests_to_spots(g, DenseFamily{}, manual_sample({1}), forests, 2, 1),
                  PreconditionError);
}

TEST_CASE("dense family and sample manifests serialize") {
  const Graph g = gen_clique_union(2, 9);
  const auto fam = find_maximal_dense_family(g, {0.1, 8, 2});
  nlohmann::json j = fam;
  CHECK(j["spots"].size() == 2);
  const auto s = good_sample(g, fam, 1.0, 0.01, 2, 0.1, 3);
  nlohmann::json js = s;
  CHECK(js["X"].size() == 18);
  CHECK(js["certificate"]["success"] == true);
}
