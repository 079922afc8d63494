#include "pathdecomp/paths.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "pathdecomp/errors.hpp"

namespace pathdecomp {

PathForest::PathForest(std::vector<Path> paths) {
  for (auto& p : paths) add(std::move(p));
}

void PathForest::add(Path p) {
  if (p.empty()) return;
  ++endpoints_[p.front()];
  if (p.length() > 0) ++endpoints_[p.back()];
  paths_.push_back(std::move(p));
}

std::size_t PathForest::num_edges() const {
  std::size_t total = 0;
  for (const auto& p : paths_) total += p.length();
  return total;
}

std::size_t PathForest::num_vertices() const {
  std::size_t total = 0;
  for (const auto& p : paths_) total += p.vertices.size();
  return total;
}

std::vector<Vertex> PathForest::vertices() const {
  std::vector<Vertex> out;
  for (const auto& p : paths_) out.insert(out.end(), p.vertices.begin(), p.vertices.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool PathForest::vertex_disjoint() const {
  auto vs = vertices();
  return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

BoundednessReport check_bounded(const Graph& g, std::span<const PathForest> forests,
                                const BoundednessSpec& spec) {
  BoundednessReport rep;
  auto note = [&rep](std::string msg) {
    if (rep.violation_count++ < BoundednessReport::kKept) rep.violations.push_back(std::move(msg));
  };
  std::vector<std::size_t> total(g.num_vertices(), 0);
  std::vector<std::size_t> nbr(g.num_vertices(), 0);
  std::vector<Vertex> touched;
  for (std::size_t i = 0; i < forests.size(); ++i) {
    const auto& f = forests[i];
    rep.worst_paths = std::max(rep.worst_paths, f.size());
    if (static_cast<double>(f.size()) > spec.max_paths) {
      note("forest " + std::to_string(i) + " has " +
                               std::to_string(f.size()) + " paths");
    }
    touched.clear();
    for (const auto& [v, c] : f.endpoint_counts()) {
      total[v] += c;
      for (Vertex w : g.neighbors(v)) {
        if (nbr[w]++ == 0) touched.push_back(w);
      }
    }
    for (Vertex w : touched) {
      rep.worst_endpoint_neighbors = std::max(rep.worst_endpoint_neighbors, nbr[w]);
      if (static_cast<double>(nbr[w]) > spec.max_endpoint_neighbors) {
        note("vertex " + std::to_string(w) + " has " +
                                 std::to_string(nbr[w]) +
                                 " neighbours among ends of forest " +
                                 std::to_string(i));
      }
      nbr[w] = 0;
    }
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    rep.worst_endpoint_total = std::max(rep.worst_endpoint_total, total[v]);
    if (static_cast<double>(total[v]) > spec.max_endpoint_total) {
      note("vertex " + std::to_string(v) + " ends " +
                               std::to_string(total[v]) + " paths");
    }
  }
  rep.ok = rep.violation_count == 0;
  return rep;
}

DenseSpotReport check_dense_spot(const Graph& g, std::span<const Vertex> U,
                                 const DenseSpotSpec& spec) {
  DenseSpotReport rep;
  std::vector<Vertex> uniq(U.begin(), U.end());
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  rep.size = uniq.size();
  if (uniq.empty()) {
    rep.reason = "empty set";
    return rep;
  }
  if (static_cast<double>(uniq.size()) > spec.K * spec.d) {
    rep.reason = "size exceeds K d";
    return rep;
  }
  auto mask = vertex_mask(g.num_vertices(), uniq);
  rep.min_inner_degree = SIZE_MAX;
  for (Vertex v : uniq) {
    std::size_t inner = 0;
    for (Vertex w : g.neighbors(v)) inner += mask[w];
    rep.min_inner_degree = std::min(rep.min_inner_degree, inner);
  }
  if (static_cast<double>(rep.min_inner_degree) < (1.0 - spec.eta) * spec.d) {
    rep.reason = "inner degree below (1-eta) d";
    return rep;
  }
  rep.ok = true;
  return rep;
}

std::vector<EdgeId> path_edge_ids(const Graph& g, const Path& p) {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    auto e = g.edge_id(p.vertices[i], p.vertices[i + 1]);
    if (!e) throw PreconditionError("path uses a non-edge");
    out.push_back(*e);
  }
  return out;
}

PathReport verify_edge_disjoint_paths(const Graph& g, std::span<const Path> paths) {
  PathReport rep;
  std::vector<char> used(g.num_edges(), 0);
  std::unordered_set<Vertex> seen;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    ++rep.length_histogram[p.length()];
    seen.clear();
    bool simple = true;
    for (Vertex v : p.vertices) {
      if (v >= g.num_vertices() || !seen.insert(v).second) simple = false;
    }
    if (!simple) rep.non_simple_paths.push_back(i);
    for (std::size_t k = 0; k + 1 < p.vertices.size(); ++k) {
      Vertex a = p.vertices[k], b = p.vertices[k + 1];
      auto e = g.edge_id(a, b);
      if (!e) {
        rep.nonedges.push_back(Edge::of(a, b));
        continue;
      }
      if (used[*e]) {
        rep.reused_edges.push_back(g.edge(*e));
      } else {
        used[*e] = 1;
        ++rep.covered_edges;
      }
    }
  }
  rep.valid = rep.reused_edges.empty() && rep.nonedges.empty() &&
              rep.non_simple_paths.empty();
  return rep;
}

void to_json(nlohmann::json& j, const Path& p) { j = p.vertices; }

void from_json(const nlohmann::json& j, Path& p) {
  p.vertices = j.get<std::vector<Vertex>>();
}

void to_json(nlohmann::json& j, const PathForest& f) { j = f.paths(); }

static nlohmann::json edge_list_json(const std::vector<Edge>& es) {
  auto arr = nlohmann::json::array();
  for (const auto& e : es) arr.push_back({e.u, e.v});
  return arr;
}

void to_json(nlohmann::json& j, const PathReport& r) {
  nlohmann::json hist = nlohmann::json::object();
  for (auto [len, cnt] : r.length_histogram) hist[std::to_string(len)] = cnt;
  j = {{"valid", r.valid},
       {"reused_edges", edge_list_json(r.reused_edges)},
       {"nonedges", edge_list_json(r.nonedges)},
       {"non_simple_paths", r.non_simple_paths},
       {"length_histogram", hist},
       {"covered_edges", r.covered_edges}};
}

void to_json(nlohmann::json& j, const BoundednessReport& r) {
  j = {{"ok", r.ok},
       {"worst_paths", r.worst_paths},
       {"worst_endpoint_total", r.worst_endpoint_total},
       {"worst_endpoint_neighbors", r.worst_endpoint_neighbors},
       {"violation_count", r.violation_count},
       {"violations", r.violations}};
}

void to_json(nlohmann::json& j, const BoundednessSpec& s) {
  j = {{"max_paths", s.max_paths},
       {"max_endpoint_total", s.max_endpoint_total},
       {"max_endpoint_neighbors", s.max_endpoint_neighbors}};
}

}  // namespace pathdecomp
