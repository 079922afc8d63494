#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "pathdecomp/graph.hpp"

namespace pathdecomp {

struct Path {
  std::vector<Vertex> vertices;

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  bool empty() const { return vertices.empty(); }
  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
  bool operator==(const Path&) const = default;
};

// Vertex-disjoint paths with an index of how many paths end at each vertex.
// A length-0 path counts once for its single vertex.
class PathForest {
 public:
  PathForest() = default;
  explicit PathForest(std::vector<Path> paths);

  void add(Path p);
  const std::vector<Path>& paths() const { return paths_; }
  std::size_t size() const { return paths_.size(); }
  bool empty() const { return paths_.empty(); }
  std::size_t num_edges() const;
  std::size_t num_vertices() const;
  std::vector<Vertex> vertices() const;
  const std::unordered_map<Vertex, std::size_t>& endpoint_counts() const {
    return endpoints_;
  }
  bool vertex_disjoint() const;

 private:
  std::vector<Path> paths_;
  std::unordered_map<Vertex, std::size_t> endpoints_;
};

// (m, Δ0, Δ1): at most m paths per forest, every vertex ends at most Δ0 paths
// over all forests, and has at most Δ1 neighbours among one forest's ends.
struct BoundednessSpec {
  double max_paths = 0;
  double max_endpoint_total = 0;
  double max_endpoint_neighbors = 0;
};

struct BoundednessReport {
  bool ok = true;
  std::size_t worst_paths = 0;
  std::size_t worst_endpoint_total = 0;
  std::size_t worst_endpoint_neighbors = 0;
  std::size_t violation_count = 0;
  static constexpr std::size_t kKept = 32;
  std::vector<std::string> violations;  // the first kKept only
};

BoundednessReport check_bounded(const Graph& g, std::span<const PathForest> forests,
                                const BoundednessSpec& spec);

// (η, d, K)-dense spot: 0 < |U| <= K d and min degree inside >= (1-η) d.
struct DenseSpotSpec {
  double eta = 0.1;
  double d = 0;
  double K = 2;
};

struct DenseSpotReport {
  bool ok = false;
  std::size_t size = 0;
  std::size_t min_inner_degree = 0;
  std::string reason;
};

DenseSpotReport check_dense_spot(const Graph& g, std::span<const Vertex> U,
                                 const DenseSpotSpec& spec);

struct PathReport {
  bool valid = true;
  std::vector<Edge> reused_edges;
  std::vector<Edge> nonedges;
  std::vector<std::size_t> non_simple_paths;
  std::map<std::size_t, std::size_t> length_histogram;
  std::size_t covered_edges = 0;
};

PathReport verify_edge_disjoint_paths(const Graph& g, std::span<const Path> paths);

std::vector<EdgeId> path_edge_ids(const Graph& g, const Path& p);

void to_json(nlohmann::json& j, const Path& p);
void from_json(const nlohmann::json& j, Path& p);
void to_json(nlohmann::json& j, const PathForest& f);
void to_json(nlohmann::json& j, const PathReport& r);
void to_json(nlohmann::json& j, const BoundednessReport& r);
void to_json(nlohmann::json& j, const BoundednessSpec& s);

}  // namespace pathdecomp
