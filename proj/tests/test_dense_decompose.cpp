#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "pathdecomp/dense_decompose.hpp"
#include "pathdecomp/errors.hpp"
#include "pathdecomp/generators.hpp"

using namespace pathdecomp;

namespace {

std::vector<Edge> edges_of(std::span<const Path> paths) {
  std::vector<Edge> out;
  for (const auto& p : paths) {
    for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
      out.push_back(Edge::of(p.vertices[i], p.vertices[i + 1]));
    }
  }
  return out;
}

std::vector<Path> all_paths(std::span<const PathForest> forests) {
  std::vector<Path> out;
  for (const auto& f : forests) out.insert(out.end(), f.paths().begin(), f.paths().end());
  return out;
}

// K_{d+1} on 0..d plus a path d+1, d+2, ... of `len` edges ending at 0.
Graph clique_with_tail(std::size_t d, std::size_t len, Path* tail) {
  std::vector<Edge> e = gen_complete(d + 1).edges();
  tail->vertices.clear();
  for (std::size_t i = 0; i < len; ++i) tail->vertices.push_back(static_cast<Vertex>(d + 1 + i));
  tail->vertices.push_back(0);
  for (std::size_t i = 0; i + 1 < tail->vertices.size(); ++i) {
    e.push_back(Edge::of(tail->vertices[i], tail->vertices[i + 1]));
  }
  return Graph::from_edges(d + 1 + len, e);
}

std::vector<Vertex> iota_vertices(Vertex from, Vertex to) {
  std::vector<Vertex> out;
  for (Vertex v = from; v < to; ++v) out.push_back(v);
  return out;
}

}  // namespace

TEST_CASE("complete packing of Hamilton paths reuses the rotation family") {
  for (std::size_t m : {2u, 4u, 10u, 16u}) {
    std::vector<std::size_t> lengths(m / 2, m - 1);
    const auto paths = complete_path_packing(lengths, m, 1);
    const auto rep = verify_edge_disjoint_paths(gen_complete(m), paths);
    CHECK(rep.valid);
    CHECK(rep.covered_edges == m * (m - 1) / 2);
  }
}

TEST_CASE("complete packing trivial cases") {
  CHECK(complete_path_packing(std::vector<std::size_t>{}, 5, 1).empty());
  const auto one = complete_path_packing(std::vector<std::size_t>{1}, 5, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].length() == 1);
  CHECK(verify_edge_disjoint_paths(gen_complete(5), one).valid);
  CHECK_THROWS_AS(complete_path_packing(std::vector<std::size_t>{5}, 5, 1), PreconditionError);
  CHECK_THROWS_AS(complete_path_packing(std::vector<std::size_t>{4, 4, 4}, 5, 1, 0.2),
                  PreconditionError);
}

TEST_CASE("complete packing of mixed lengths") {
  const std::size_t m = 24;
  std::vector<std::size_t> lengths{23, 20, 17, 17, 12, 12, 12, 9, 5, 5, 3, 1, 1};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto paths = complete_path_packing(lengths, m, seed, 0.3);
    REQUIRE(paths.size() == lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) CHECK(paths[i].length() == lengths[i]);
    CHECK(verify_edge_disjoint_paths(gen_complete(m), paths).valid);
  }
}

TEST_CASE("greedy packing covers most of a clique") {
  for (std::size_t d : {32u, 64u}) {
    const Graph g = gen_complete(d + 1);
    std::vector<char> used(g.num_edges(), 0);
    const std::size_t l = static_cast<std::size_t>(std::ceil(0.7 * static_cast<double>(d)));
    const auto paths = pack_paths(g, used, l, 3);
    const auto rep = verify_edge_disjoint_paths(g, paths);
    CHECK(rep.valid);
    for (const auto& p : paths) CHECK(p.length() == l);
    std::size_t marked = 0;
    for (char u : used) marked += u;
    CHECK(marked == rep.covered_edges);
    MESSAGE("d=" << d << " coverage " << double(rep.covered_edges) / double(g.num_edges()));
    CHECK(double(rep.covered_edges) >= 0.7 * double(g.num_edges()));
  }
}

TEST_CASE("sized forests on a clique") {
  const std::size_t d = 64;
  const Graph g = gen_complete(d + 1);
  const DenseSpotSpec spec{0.1, double(d), 2};
  const auto one = sized_forests(g, spec, {{d / 2}}, 5);
  REQUIRE(one.size() == 1);
  CHECK(one[0].num_vertices() == d / 2);
  CHECK(one[0].vertex_disjoint());
  CHECK(double(one[0].size()) <= std::pow(double(d), 0.9));
  CHECK(verify_edge_disjoint_paths(g, one[0].paths()).valid);

  CHECK_THROWS_AS(sized_forests(g, spec, {std::vector<std::size_t>(40, 60)}, 5), PreconditionError);
  CHECK_THROWS_AS(sized_forests(gen_cycle(20), {0.1, 4, 20}, {{5}}, 5), PreconditionError);
}

TEST_CASE("sized forests with equal large requests") {
  const std::size_t d = 120;
  const Graph g = gen_complete(d + 1);
  const DenseSpotSpec spec{0.1, double(d), 2};
  const std::size_t size = 84;  // (1 - 0.3) d
  const std::vector<std::size_t> sizes(6, size);
  const auto forests = sized_forests(g, spec, {sizes}, 9);
  REQUIRE(forests.size() == sizes.size());
  for (const auto& f : forests) {
    CHECK(f.num_vertices() == size);
    CHECK(f.vertex_disjoint());
    CHECK(double(f.size()) <= std::pow(double(d), 0.9));
  }
  CHECK(verify_edge_disjoint_paths(g, all_paths(forests)).valid);
}

TEST_CASE("spread forests keep sizes within the slack and ends spread") {
  const std::size_t d = 120;
  const Graph g = gen_complete(d + 1);
  const DenseSpotSpec spec{0.1, double(d), 2};
  SizedForestParams params;
  const std::vector<std::size_t> sizes{36, 40, 60, 84, 84};
  const auto forests = sized_forests_spread(g, spec, {sizes}, 4, params);
  REQUIRE(forests.size() == sizes.size());
  std::vector<std::size_t> load(g.num_vertices(), 0);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    CHECK(forests[i].num_vertices() >= sizes[i]);
    CHECK(double(forests[i].num_vertices()) <= (1 + params.spread_slack) * double(sizes[i]) + 1e-9);
    for (auto [v, c] : forests[i].endpoint_counts()) load[v] += c;
  }
  for (auto c : load) CHECK(double(c) <= std::pow(double(d), params.spread_cap_exponent) + 1e-9);
  CHECK(verify_edge_disjoint_paths(g, all_paths(forests)).valid);
}

TEST_CASE("chopping a path") {
  const Path p{{0, 1, 2, 3, 4, 5, 6}};
  std::vector<Edge> rest;
  const auto pieces = chop_path(p, 4, &rest);
  REQUIRE(pieces.size() == 1);
  CHECK(pieces[0] == Path{{0, 1, 2, 3, 4}});
  CHECK(rest == std::vector<Edge>{{4, 5}, {5, 6}});
  CHECK(chop_path(p, 3).size() == 2);
  CHECK_THROWS_AS(chop_path(p, 0), PreconditionError);
}

TEST_CASE("spot without attached paths") {
  const std::size_t d = 64, l = 45;
  const Graph g = gen_complete(d + 1);
  AttachedSpot a;
  a.spot = iota_vertices(0, d + 1);
  const auto r = decompose_spot_with_attached(g, a, l, 3);
  for (const auto& p : r.paths) CHECK(p.length() == l);
  CHECK(verify_edge_disjoint_paths(g, r.paths).valid);
  auto both = edges_of(r.paths);
  both.insert(both.end(), r.leftover.begin(), r.leftover.end());
  std::sort(both.begin(), both.end());
  CHECK(both == g.edges());
  MESSAGE("leftover fraction " << double(r.leftover.size()) / double(g.num_edges()));
}

TEST_CASE("attached path one short of a full piece") {
  const std::size_t d = 30, l = 21;
  Path tail;
  const Graph g = clique_with_tail(d, l - 1, &tail);
  AttachedSpot a;
  a.spot = iota_vertices(0, d + 1);
  a.junk = {0};
  a.attached = {tail};
  const auto r = decompose_spot_with_attached(g, a, l, 8);
  CHECK(r.extended == 1);
  CHECK(r.attached_outside_junk == 0);
  // The piece holding the tail also holds one clique edge.
  bool found = false;
  for (const auto& p : r.paths) {
    CHECK(p.length() == l);
    if (p.front() == tail.front()) {
      found = true;
      CHECK(p.vertices[l - 1] == 0);
      CHECK(p.vertices[l] <= d);
    }
  }
  CHECK(found);
  CHECK(verify_edge_disjoint_paths(g, r.paths).valid);
  std::size_t covered = 0;
  for (const auto& p : r.paths) covered += p.length();
  CHECK(covered + r.leftover.size() == g.num_edges());
}

TEST_CASE("spot decomposition preconditions") {
  const Graph g = gen_complete(10);
  AttachedSpot a;
  a.spot = iota_vertices(0, 10);
  CHECK_THROWS_AS(decompose_spot_with_attached(g, a, 10, 1), PreconditionError);
  CHECK_THROWS_AS(decompose_spot_with_attached(g, a, 0, 1), PreconditionError);
  // A path through the spot is not attached.
  a.attached = {Path{{0, 1, 2}}};
  CHECK_THROWS_AS(decompose_spot_with_attached(g, a, 5, 1), PreconditionError);
}

TEST_CASE("dense family decomposition") {
  SUBCASE("empty") {
    const Graph g = gen_cycle(5);
    const auto r = decompose_dense_family(g, DenseFamily{}, {}, 3, 1);
    CHECK(r.paths.empty());
    CHECK(r.leftover.empty());
  }
  SUBCASE("two cliques and a path between them") {
    const std::size_t d = 24, l = 17;
    std::vector<Edge> e = gen_clique_union(2, d + 1).edges();
    // 0 - 50 - 51 - 52 - 25
    const Path link{{0, 50, 51, 52, 25}};
    for (std::size_t i = 0; i + 1 < link.vertices.size(); ++i) {
      e.push_back(Edge::of(link.vertices[i], link.vertices[i + 1]));
    }
    const Graph g = Graph::from_edges(53, e);
    DenseFamily fam;
    fam.spec = {0.1, double(d), 2};
    fam.spots = {iota_vertices(0, 25), iota_vertices(25, 50)};
    const auto r = decompose_dense_family(g, fam, std::vector<Path>{link}, l, 2);
    CHECK(r.extended == 1);
    for (const auto& p : r.paths) CHECK(p.length() == l);
    CHECK(verify_edge_disjoint_paths(g, r.paths).valid);
    auto both = edges_of(r.paths);
    both.insert(both.end(), r.leftover.begin(), r.leftover.end());
    std::sort(both.begin(), both.end());
    CHECK(both == g.edges());
    // Every link edge is in an output path.
    std::set<Edge> covered;
    for (const auto& x : edges_of(r.paths)) covered.insert(x);
    for (std::size_t i = 0; i + 1 < link.vertices.size(); ++i) {
      CHECK(covered.count(Edge::of(link.vertices[i], link.vertices[i + 1])) == 1);
    }
  }
}
