#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "pathdecomp/errors.hpp"
#include "pathdecomp/generators.hpp"
#include "pathdecomp/io.hpp"
#include "pathdecomp/paths.hpp"

using namespace pathdecomp;

namespace {

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

bool simple_and_regular(const Graph& g, std::size_t d) {
  std::set<std::pair<Vertex, Vertex>> seen;
  for (const Edge& e : g.edges()) {
    if (e.u == e.v || !seen.insert({e.u, e.v}).second) return false;
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.neighbors(v).size() != d) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("edge list parsing") {
  auto g = parse("0 1\n1 2");
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 2);
  CHECK(parse("0 1\n0 1").num_edges() == 1);
  CHECK(parse("0 1\n1 0\n").num_edges() == 1);
  CHECK(parse("# n=10\n# comment\n0 1\n\n").num_vertices() == 10);
  CHECK_THROWS_AS(parse("0 0"), ParseError);
  try {
    parse("0 1\n1 2\n2 x\n");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse("0 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse("# n=2\n0 5\n"), ParseError);
}

TEST_CASE("edge list round trip") {
  Graph g = gen_random_regular(30, 4, 7);
  std::stringstream buf;
  write_edge_list(g, buf);
  Graph h = parse_edge_list(buf);
  CHECK(h.num_vertices() == g.num_vertices());
  CHECK(h.edges() == g.edges());
}

TEST_CASE("graph queries") {
  Graph g = gen_complete(5);
  CHECK(g.num_edges() == 10);
  CHECK(g.is_regular(4));
  CHECK(g.has_edge(0, 4));
  CHECK(g.has_edge(4, 0));
  CHECK_FALSE(g.has_edge(2, 2));
  for (Vertex v = 0; v < 5; ++v) {
    auto nb = g.neighbors(v);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const Edge& e = g.edge(g.incident(v)[k]);
      CHECK(e.other(v) == nb[k]);
    }
  }
  CHECK_THROWS_AS(Graph::from_edges(3, std::vector<Edge>{{1, 1}}), PreconditionError);
}

TEST_CASE("induced and edge subgraphs map back to the parent") {
  Graph g = gen_cycle(6);
  std::vector<Vertex> keep{1, 2, 3, 5};
  auto sub = induced_subgraph(g, keep);
  CHECK(sub.graph.num_vertices() == 4);
  CHECK(sub.graph.num_edges() == 2);
  for (const Edge& e : sub.graph.edges()) {
    CHECK(g.has_edge(sub.parent_of(e.u), sub.parent_of(e.v)));
  }
  std::vector<EdgeId> ids{*g.edge_id(0, 1), *g.edge_id(4, 5)};
  auto es = edge_subgraph(g, ids);
  CHECK(es.graph.num_vertices() == 4);
  CHECK(es.graph.num_edges() == 2);
  auto comps = connected_components(gen_clique_union(3, 4));
  CHECK(comps.size() == 3);
}

TEST_CASE("random regular generator") {
  Graph g = gen_random_regular(8, 3, 1);
  CHECK(simple_and_regular(g, 3));
  Graph k4 = gen_random_regular(4, 3, 0);
  CHECK(k4.num_edges() == 6);
  CHECK(simple_and_regular(k4, 3));
  CHECK_THROWS_AS(gen_random_regular(5, 3, 0), PreconditionError);
  CHECK_THROWS_AS(gen_random_regular(4, 4, 0), PreconditionError);
  Graph big = gen_random_regular(600, 64, 3);
  CHECK(simple_and_regular(big, 64));
  CHECK(gen_random_regular(600, 64, 3).edges() == big.edges());
  CHECK(gen_random_regular(600, 64, 4).edges() != big.edges());
}

TEST_CASE("clique unions and gadgets") {
  Graph g = gen_clique_union(2, 4);
  CHECK(g.num_vertices() == 8);
  CHECK(g.num_edges() == 12);
  CHECK(g.is_regular(3));
  CHECK(gen_clique_union(1, 2).num_edges() == 1);
  Graph h = gen_clique_union(3, 5);
  CHECK(h.num_vertices() == 15);
  CHECK(h.num_edges() == 3 * (5 * 4 / 2));
  CHECK(h.is_regular(4));
  Graph linked = gen_linked_cliques(3, 10, 2, 5);
  CHECK(simple_and_regular(linked, 10));
  CHECK(connected_components(linked).size() == 1);
  Graph pair = gen_clique_pair(5, 6, 3, 1);
  CHECK(pair.num_edges() == 10 + 15 + 3);
  CHECK(gen_petersen().is_regular(3));
}

TEST_CASE("random bipartite generator respects the degree band") {
  Graph g = gen_random_bipartite(200, 8, 12, 2);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    CHECK(g.degree(v) >= 8);
    CHECK(g.degree(v) <= 12);
  }
  for (const Edge& e : g.edges()) CHECK((e.u < 200) != (e.v < 200));
}

TEST_CASE("path family verification") {
  Graph k4 = gen_complete(4);
  std::vector<Path> rot{{{0, 1, 3, 2}}, {{1, 2, 0, 3}}};
  auto rep = verify_edge_disjoint_paths(k4, rot);
  CHECK(rep.valid);
  CHECK(rep.covered_edges == 6);
  CHECK(rep.length_histogram.at(3) == 2);

  std::vector<Path> bad{{{0, 1, 2}}, {{1, 2, 3}}};
  auto rep2 = verify_edge_disjoint_paths(k4, bad);
  CHECK_FALSE(rep2.valid);
  REQUIRE(rep2.reused_edges.size() == 1);
  CHECK(rep2.reused_edges[0] == Edge{1, 2});

  auto rep3 = verify_edge_disjoint_paths(k4, std::vector<Path>{});
  CHECK(rep3.valid);
  CHECK(rep3.covered_edges == 0);

  Graph c5 = gen_cycle(5);
  auto rep4 = verify_edge_disjoint_paths(c5, std::vector<Path>{{{0, 2}}, {{1, 2, 1}}});
  CHECK_FALSE(rep4.valid);
  CHECK(rep4.nonedges.size() == 1);
  CHECK(rep4.non_simple_paths.size() == 1);

  nlohmann::json j = rep2;
  CHECK(j["valid"] == false);
  CHECK(j["reused_edges"].size() == 1);
}

TEST_CASE("boundedness audit") {
  Graph p5 = Graph::from_edges(5, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  std::vector<PathForest> one{PathForest({Path{{0, 1, 2}}})};
  CHECK(check_bounded(p5, one, {1, 2, 5}).ok);

  std::vector<PathForest> f{PathForest({Path{{0, 1, 2}}, Path{{3, 4}}})};
  // Ends are {0,2,3,4}; vertex 3 sees ends 2 and 4.
  auto rep = check_bounded(p5, f, {2, 1, 2});
  CHECK(rep.ok);
  CHECK(rep.worst_endpoint_neighbors == 2);
  CHECK_FALSE(check_bounded(p5, f, {2, 1, 1}).ok);
  CHECK_FALSE(check_bounded(p5, f, {1, 1, 2}).ok);

  Graph star = gen_complete_bipartite(1, 6);
  std::vector<PathForest> two{
      PathForest({Path{{1, 0, 2}}, Path{{3}}, Path{{4}}}),
      PathForest({Path{{3, 0, 4}}, Path{{1}}, Path{{2}}})};
  auto r2 = check_bounded(star, two, {10, 5, 10});
  CHECK(r2.worst_endpoint_total == 2);
  CHECK(r2.ok);
  PathForest pf({Path{{1, 0, 2}}});
  CHECK(pf.endpoint_counts().at(1) == 1);
  CHECK(pf.vertex_disjoint());
  CHECK_FALSE(PathForest({Path{{1, 0}}, Path{{0, 2}}}).vertex_disjoint());
}

TEST_CASE("dense spot audit") {
  Graph k5 = gen_complete(5);
  std::vector<Vertex> all{0, 1, 2, 3, 4};
  CHECK(check_dense_spot(k5, all, {0.0, 4, 2}).ok);
  std::vector<Edge> edges = k5.edges();
  edges.erase(edges.begin());
  Graph k5m = Graph::from_edges(5, edges);
  CHECK_FALSE(check_dense_spot(k5m, all, {0.0, 4, 2}).ok);
  Graph c8 = gen_cycle(8);
  std::vector<Vertex> arc{2, 3, 4, 5};
  CHECK(check_dense_spot(c8, arc, {0.5, 2, 2}).ok);
  CHECK_FALSE(check_dense_spot(c8, std::vector<Vertex>{}, {0.5, 2, 2}).ok);
  CHECK_FALSE(check_dense_spot(c8, std::vector<Vertex>{0, 1, 2, 3, 4}, {0.5, 2, 2}).ok);
}
