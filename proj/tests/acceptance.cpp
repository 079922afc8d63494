// Acceptance checks 1-9. Prints one PASS/FAIL line per criterion and exits
// nonzero when any fails. Every check recomputes its verdict with code
// that does not share logic with the construction under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pathdecomp/connectivity.hpp"
#include "pathdecomp/forests.hpp"
#include "pathdecomp/generators.hpp"
#include "pathdecomp/io.hpp"
#include "pathdecomp/oracle.hpp"
#include "pathdecomp/paths.hpp"
#include "pathdecomp/pipeline.hpp"
#include "pathdecomp/regularize.hpp"

using namespace pathdecomp;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("violated: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(double x, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Sorted, deduplicated edge list of a path set; false on any repeated edge,
// repeated vertex inside a path, or non-edge.
bool independent_path_audit(const Graph& g, const std::vector<Path>& paths, std::size_t length,
                            std::size_t* covered) {
  std::vector<std::pair<Vertex, Vertex>> used;
  for (const auto& p : paths) {
    if (p.length() != length) return false;
    std::vector<Vertex> vs = p.vertices;
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) return false;
    for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
      const Vertex a = p.vertices[i], b = p.vertices[i + 1];
      if (!g.has_edge(a, b)) return false;
      used.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(used.begin(), used.end());
  if (std::adjacent_find(used.begin(), used.end()) != used.end()) return false;
  *covered = used.size();
  return true;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 ? xs[m] : (xs[m - 1] + xs[m]) / 2;
}

// Exact search for a bipartition with both sides >= need and at most budget
// crossing edges. Vertices are assigned in order; a branch dies as soon as
// its partial cut exceeds the budget or a side can no longer reach `need`.
bool exact_cut_exists(const Graph& g, double need, std::size_t budget) {
  const std::size_t n = g.num_vertices();
  if (static_cast<double>(n) < 2 * need) return false;
  std::vector<int> side(n, -1);
  std::function<bool(Vertex, std::size_t, std::size_t, std::size_t)> go =
      [&](Vertex v, std::size_t cut, std::size_t n0, std::size_t n1) -> bool {
    const double rest = static_cast<double>(n - v);
    if (static_cast<double>(n0) + rest < need || static_cast<double>(n1) + rest < need) return false;
    if (v == n) return true;
    for (int s : {0, 1}) {
      if (v == 0 && s == 1) continue;  // symmetry
      std::size_t add = 0;
      for (Vertex w : g.neighbors(v)) {
        if (w < v && side[w] != s) ++add;
      }
      if (cut + add > budget) continue;
      side[v] = s;
      if (go(v + 1, cut + add, n0 + (s == 0), n1 + (s == 1))) return true;
      side[v] = -1;
    }
    return false;
  };
  return go(0, 0, 0, 0);
}

// 1. Structural validity and runtime.
Outcome criterion1() {
  Outcome o;
  const std::vector<std::string> suite = {
      "random:4000:32",  "random:4000:64", "random:4000:128", "random:50000:32",
      "random:20000:128", "cliques:20:32",  "cliques:10:64",   "cliques:6:128",
      "linked:8:64:4",   "linked:6:128:8"};
  PipelineConfig cfg;
  double worst = 0;
  std::size_t runs = 0;
  for (const auto& spec : suite) {
    const auto inst = make_instance(spec, 1);
    const auto t0 = std::chrono::steady_clock::now();
    DecompositionReport r;
    try {
      r = approx_decompose(inst.graph, inst.d, cfg);
    } catch (const std::exception& e) {
      o.require(false, spec + " threw: " + e.what());
      continue;
    }
    const double secs = seconds_since(t0);
    worst = std::max(worst, secs);
    const std::size_t l = static_cast<std::size_t>(std::ceil(0.7 * static_cast<double>(inst.d) - 1e-9));
    std::size_t covered = 0;
    o.require(verify_edge_disjoint_paths(inst.graph, r.paths).valid, spec + " library verifier");
    o.require(independent_path_audit(inst.graph, r.paths, l, &covered), spec + " independent audit");
    o.require(covered + r.leftover.size() == inst.graph.num_edges(), spec + " edge accounting");
    o.require(secs <= 300, spec + " runtime " + fmt(secs) + "s");
    o.note(spec + " leftover=" + fmt(r.leftover_fraction) + " t=" + fmt(secs, 3) + "s");
    ++runs;
  }
  o.note(std::to_string(runs) + " runs, slowest " + fmt(worst, 3) + "s");
  return o;
}

// 2. Leftover on clique unions.
Outcome criterion2() {
  Outcome o;
  std::vector<double> med;
  const std::vector<std::pair<std::size_t, std::size_t>> cases = {{32, 20}, {64, 10}, {128, 6}};
  for (auto [d, copies] : cases) {
    const Graph g = gen_clique_union(copies, d + 1);
    std::vector<double> fr;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      PipelineConfig cfg;
      cfg.seed = seed;
      const auto r = approx_decompose(g, d, cfg);
      std::size_t covered = 0;
      o.require(independent_path_audit(g, r.paths, r.l_target, &covered), "audit d=" + std::to_string(d));
      fr.push_back(static_cast<double>(g.num_edges() - covered) / static_cast<double>(g.num_edges()));
    }
    med.push_back(median(fr));
    o.note("d=" + std::to_string(d) + " median leftover " + fmt(med.back()));
    if (d >= 64) o.require(med.back() <= 0.3, "leftover <= 0.3 at d=" + std::to_string(d));
  }
  for (std::size_t i = 1; i < med.size(); ++i) o.require(med[i] <= med[i - 1], "non-increasing in d");
  return o;
}

// 3. Path cover.
Outcome criterion3() {
  Outcome o;
  PipelineConfig cfg;
  std::size_t small = 0;
  for (std::size_t d = 1; d + 1 <= 12; ++d) {
    for (std::size_t m = 1; m <= 3; ++m) {
      const Graph g = gen_clique_union(m, d + 1);
      const auto r = cover(g, d, cfg);
      // Oracle on one component; the optimum of a disjoint union is additive.
      const std::size_t opt = m * exact_min_path_cover(gen_complete(d + 1)).count;
      if (m * (d + 1) <= 12) o.require(exact_min_path_cover(g).count == opt, "oracle additivity");
      o.require(r.paths.size() == m, "K_" + std::to_string(d + 1) + " x" + std::to_string(m) + " path count");
      o.require(r.paths.size() == opt, "matches oracle optimum");
      o.require(r.uncovered == 0, "cliques fully covered");
      ++small;
    }
  }
  o.note(std::to_string(small) + " clique unions agree with the oracle");
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const std::size_t n = 2000, d = 64;
    const Graph g = gen_random_regular(n, d, seed);
    cfg.seed = seed;
    const auto r = cover(g, d, cfg);
    std::vector<char> seen(n, 0);
    bool disjoint = true;
    for (const auto& p : r.paths) {
      for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        disjoint = disjoint && !seen[p.vertices[i]];
        seen[p.vertices[i]] = 1;
        if (i) disjoint = disjoint && g.has_edge(p.vertices[i - 1], p.vertices[i]);
      }
    }
    const std::size_t uncovered = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), 0));
    o.require(disjoint, "random cover paths are vertex-disjoint paths");
    o.require(r.paths.size() <= n / (d + 1), "random path count <= n/(d+1)");
    o.require(static_cast<double>(uncovered) <= 0.3 * n, "uncovered <= 0.3 n");
    o.note("random seed " + std::to_string(seed) + ": " + std::to_string(r.paths.size()) + " paths, " +
           std::to_string(uncovered) + " uncovered");
  }
  return o;
}

// 4. Matchings on a near-regular bipartite graph.
Outcome criterion4() {
  Outcome o;
  const std::size_t n = 2000;
  const Graph h = gen_random_bipartite(n, 96, 104, 7);
  for (Vertex v = 0; v < h.num_vertices(); ++v) {
    o.require(h.degree(v) >= 96 && h.degree(v) <= 104, "host degrees in (1 +- 0.04) 100");
    if (!o.pass) return o;
  }
  const auto fam = bipartite_matchings(h, 100, n, 0.04);
  std::size_t good = 0;
  std::vector<char> edge_used(h.num_edges(), 0);
  for (const auto& m : fam.matchings) {
    std::vector<char> hit(h.num_vertices(), 0);
    for (EdgeId e : m) {
      const Edge ed = h.edges()[e];
      o.require(ed.u < n && ed.v >= n, "matching edge crosses the sides");
      o.require(!hit[ed.u] && !hit[ed.v], "matching is vertex-disjoint");
      o.require(!edge_used[e], "matchings are edge-disjoint");
      hit[ed.u] = hit[ed.v] = 1;
      edge_used[e] = 1;
    }
    good += m.size() >= 1600;
  }
  o.require(good >= 80, ">= 80 matchings of size >= 1600");
  o.note(std::to_string(good) + " of " + std::to_string(fam.matchings.size()) +
         " matchings have size >= 1600");
  return o;
}

// 5. Hamilton path decompositions of K_s.
Outcome criterion5() {
  Outcome o;
  for (std::size_t s = 2; s <= 64; s += 2) {
    const auto paths = ks_rotation_paths(s);
    o.require(paths.size() == s / 2, "s/2 paths for s=" + std::to_string(s));
    std::set<std::pair<Vertex, Vertex>> edges;
    std::vector<int> ends(s, 0);
    for (const auto& p : paths) {
      std::vector<Vertex> vs = p.vertices;
      std::sort(vs.begin(), vs.end());
      bool ham = vs.size() == s;
      for (std::size_t i = 0; ham && i < s; ++i) ham = vs[i] == i;
      o.require(ham, "Hamilton path for s=" + std::to_string(s));
      if (!ham) continue;
      ++ends[p.front()];
      ++ends[p.back()];
      for (std::size_t i = 0; i + 1 < s; ++i) {
        const Vertex a = p.vertices[i], b = p.vertices[i + 1];
        o.require(edges.insert({std::min(a, b), std::max(a, b)}).second, "edge-disjoint");
      }
    }
    o.require(edges.size() == s * (s - 1) / 2, "covers E(K_s)");
    for (int e : ends) o.require(e == 1, "each vertex ends exactly one path");
  }
  o.note("even s = 2..64");
  return o;
}

// 6. Cubic criterion.
Outcome criterion6() {
  Outcome o;
  const std::vector<std::pair<std::size_t, std::size_t>> known = {
      {4, 1}, {6, 2}, {8, 5}, {10, 19}, {12, 85}};
  std::size_t total = 0, with_pm = 0;
  for (auto [n, count] : known) {
    const auto classes = sample_cubic_graph_classes(n, 60000, 1);
    o.require(classes.size() == count, "class count n=" + std::to_string(n));
    for (const auto& g : classes) {
      const bool p3 = exact_path_decomposition(g, 3).has_value();
      const bool pm = exact_perfect_matching(g).has_value();
      o.require(p3 == pm, "P3 decomposition iff perfect matching");
      with_pm += pm;
      ++total;
    }
  }
  o.note(std::to_string(total) + " connected cubic classes, " + std::to_string(with_pm) +
         " with a perfect matching");
  return o;
}

// 7. Connectivity against exact search; crossing-edge path counts.
Outcome criterion7() {
  Outcome o;
  std::size_t cases = 0, disconnected = 0;
  const std::vector<std::pair<std::size_t, std::size_t>> sizes = {
      {10, 10}, {12, 20}, {15, 15}, {16, 24}, {20, 20}};
  for (auto [a, b] : sizes) {
    for (std::size_t c = 0; c <= 6; ++c) {
      const Graph g = gen_clique_pair(a, b, c, 100 * a + 10 * b + c);
      for (double lambda : {0.005, 0.01, 0.015}) {
        const ConnectivitySpec spec{0.25, lambda, 20};
        const auto cert = check_connectivity(g, spec);
        const bool exact = exact_cut_exists(g, spec.min_side(g.num_vertices()), spec.cut_budget());
        o.require(cert.connected == !exact, "agreement a=" + std::to_string(a) + " b=" +
                                                 std::to_string(b) + " c=" + std::to_string(c));
        if (!cert.connected) o.require(witness_is_valid(g, spec, *cert.witness), "witness valid");
        disconnected += !cert.connected;
        ++cases;
      }
      std::vector<Vertex> U, V;
      for (Vertex v = 0; v < a; ++v) U.push_back(v);
      for (Vertex v = static_cast<Vertex>(a); v < a + b; ++v) V.push_back(v);
      const auto fam = edge_disjoint_short_paths(g, U, V, ConnectivitySpec{0.2, 0.1, 15}, 2);
      o.require(fam.paths.size() == c, "exactly c paths");
      std::size_t covered = 0;
      std::set<std::pair<Vertex, Vertex>> used;
      for (const auto& p : fam.paths) {
        o.require(p.front() < a && p.back() >= a, "path joins the two cliques");
        for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
          const Vertex x = p.vertices[i], y = p.vertices[i + 1];
          o.require(g.has_edge(x, y), "path edge exists");
          o.require(used.insert({std::min(x, y), std::max(x, y)}).second, "paths edge-disjoint");
          ++covered;
        }
      }
    }
  }
  o.note(std::to_string(cases) + " gadget cases, " + std::to_string(disconnected) +
         " disconnected, up to 40 vertices");
  return o;
}

// 8. Regular slices.
Outcome criterion8() {
  Outcome o;
  const double d = 128, eps = 0.3;
  std::vector<std::pair<std::string, Graph>> inputs;
  inputs.emplace_back("random 128-regular", gen_random_regular(2000, 128, 3));
  {
    // Random vertex deletion leaves degrees spread well below d.
    const Graph g = gen_random_regular(3000, 128, 4);
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (v % 5 != 0) keep.push_back(v);
    }
    inputs.emplace_back("random minus a fifth", induced_subgraph(g, keep).graph);
  }
  {
    std::vector<Edge> e = gen_complete(129).edges();
    const Graph r = gen_random_regular(1000, 96, 5);
    for (const Edge& x : r.edges()) e.push_back({x.u + 129, x.v + 129});
    inputs.emplace_back("K129 plus random 96-regular", Graph::from_edges(1129, e));
  }
  for (const auto& [name, g] : inputs) {
    const auto res = regular_slices(g, d, 0.5, eps, 11);
    std::set<std::pair<Vertex, Vertex>> seen;
    double sum = 0;
    bool bands = true;
    std::size_t covered = 0;
    for (const auto& s : res.slices) {
      sum += static_cast<double>(s.d);
      const auto lo = static_cast<std::size_t>(std::ceil((1 - s.eta) * static_cast<double>(s.d) - 1e-9));
      const auto hi = static_cast<std::size_t>(std::floor((1 + s.eta) * static_cast<double>(s.d) + 1e-9));
      for (Vertex v = 0; v < s.subgraph.graph.num_vertices(); ++v) {
        const std::size_t deg = s.subgraph.graph.degree(v);
        bands = bands && deg >= lo && deg <= hi && s.band.contains(deg);
      }
      for (const Edge& e : s.subgraph.graph.edges()) {
        const Vertex a = s.subgraph.parent_of(e.u), b = s.subgraph.parent_of(e.v);
        o.require(g.has_edge(a, b), name + ": slice edge in the input");
        o.require(seen.insert({std::min(a, b), std::max(a, b)}).second, name + ": slices edge-disjoint");
        ++covered;
      }
    }
    const std::size_t uncovered = g.num_edges() - covered;
    o.require(!res.slices.empty(), name + ": at least one slice");
    o.require(bands, name + ": every vertex inside its slice band");
    o.require(sum <= (1 + eps) * d + 1e-9, name + ": sum of slice degrees");
    o.require(uncovered == res.uncovered_edges, name + ": reported uncovered count");
    o.require(static_cast<double>(uncovered) <= eps * static_cast<double>(g.num_vertices()) * d,
              name + ": uncovered <= eps |V| d");
    o.note(name + ": " + std::to_string(res.slices.size()) + " slices, sum d_i=" + fmt(sum) +
           ", uncovered " + fmt(static_cast<double>(uncovered) / static_cast<double>(g.num_edges())) +
           " of E");
  }
  return o;
}

// 9. Determinism.
Outcome criterion9() {
  Outcome o;
  auto dump = [](const std::vector<Path>& paths) {
    std::ostringstream os;
    write_paths(paths, os);
    return os.str();
  };
  for (const std::string spec : {"random:3000:64", "cliques:8:32", "linked:6:32:4"}) {
    const auto inst = make_instance(spec, 2);
    PipelineConfig cfg;
    cfg.seed = 9;
    const auto a = approx_decompose(inst.graph, inst.d, cfg);
    const auto b = approx_decompose(inst.graph, inst.d, cfg);
    o.require(!a.paths.empty(), spec + ": nonempty output");
    o.require(dump(a.paths) == dump(b.paths), spec + ": identical path lists");
    o.require(report_json(a, true, false).dump() == report_json(b, true, false).dump(),
              spec + ": identical reports");
    const auto ca = cover(inst.graph, inst.d, cfg);
    const auto cb = cover(inst.graph, inst.d, cfg);
    o.require(dump(ca.paths) == dump(cb.paths), spec + ": identical covers");
  }
  PipelineConfig cfg;
  const std::vector<std::string> suite{"cliques:4:16", "random:500:16"};
  BenchOptions one, many;
  many.workers = 4;
  o.require(bench_json(bench(suite, {cfg}, {1, 2, 3}, one), false) ==
                bench_json(bench(suite, {cfg}, {1, 2, 3}, many), false),
            "bench rows independent of worker count");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"structural validity", criterion1},   {"clique-union leftover trend", criterion2},
      {"path cover", criterion3},            {"matching extraction", criterion4},
      {"K_s rotation", criterion5},          {"cubic criterion", criterion6},
      {"connectivity oracle", criterion7},   {"regular slices", criterion8},
      {"determinism", criterion9}};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << "AC" << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << ": " << criteria[i].first
              << " (" << fmt(seconds_since(t0), 3) << "s)\n";
    std::size_t shown = 0;
    for (const auto& n : o.notes) {
      if (++shown > 24) break;
      std::cout << "    " << n << "\n";
    }
    std::cout.flush();
  }
  return all ? 0 : 1;
}
