#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathdecomp/engine.hpp"
#include "pathdecomp/graph.hpp"
#include "pathdecomp/paths.hpp"
#include "pathdecomp/regularize.hpp"

namespace pathdecomp {

// Colour classes of a bipartite host, largest first. Edge ids refer to the
// host graph.
struct MatchingFamily {
  std::vector<std::vector<EdgeId>> matchings;
  std::size_t colors = 0;
};

// Proper edge colouring with max_degree(h) colours by alternating-path
// recolouring. Throws if h is not bipartite.
std::vector<std::size_t> bipartite_edge_coloring(const Graph& h);

// Sides from a 2-colouring of h; throws if there is none.
std::vector<char> bipartition(const Graph& h);

// All colour classes of an exact colouring, sorted by size. Checks class
// sizes (1 +- gamma) n, degrees (1 +- gamma) d and gamma d >= 1.
MatchingFamily bipartite_matchings(const Graph& h, double d, double n, double gamma);

// s/2 edge-disjoint Hamilton paths of K_s: the zigzag 0, 1, s-1, 2, s-2, ...
// shifted by 0, 1, ..., s/2 - 1.
std::vector<Path> ks_rotation_paths(std::size_t s);

struct PartitionPlan {
  std::size_t s = 0;
  std::vector<std::uint32_t> class_of;
  std::vector<std::vector<Vertex>> classes;
  double eta = 0;
  Certificate certificate;
};

struct ForestParams {
  double gamma_scale = 2.0;       // degree precondition gamma = scale * d^-exp
  double gamma_exponent = 0.4;
  double partition_exponent = 0.15;  // s = 2 ceil(d^exp)
  std::size_t partition_classes = 0; // overrides s when nonzero (rounded up to even)
  double partition_eta = 0.9;
  // Boundedness exponents: initial forests are (n/d^a, d^b, d^b)-bounded,
  // improve_forests expects (n/d^c, d^e, d^e) and targets d^f.
  double initial_paths_exp = 1.0 / 8;
  double initial_endpoint_exp = 7.0 / 8;
  double improve_paths_exp = 1.0 / 9;
  double improve_endpoint_exp = 8.0 / 9;
  double final_exp = 0.25;
  std::size_t y_splits = 10;
  double reserve_p = 0.1;
  double reserve_gamma = 1.0;
  ResamplePolicy policy{ResampleMode::ScopedResample, 400, 0};
  SliceParams slices;
};

// Equipartition into s classes with d(v, A_i) = (1 +- eta) d / s.
PartitionPlan balanced_partition(const Graph& g, double d, std::size_t s, double eta,
                                 std::uint64_t seed, const ResamplePolicy& policy);

std::size_t partition_class_count(double d, const ForestParams& params);

// floor(d/2) edge-disjoint path forests built from matchings between class
// pairs along the rotation paths of K_s. Only paths meeting every class are
// kept.
std::vector<PathForest> initial_forests(const Graph& g, double d, double eps, std::uint64_t seed,
                                        const ForestParams& params = {});

// Random reserve Y with |N(v) cap Y| = (1 +- reserve_gamma) p d for all v.
std::vector<Vertex> reserve_set(const Graph& g, double d, double p, double gamma,
                                std::uint64_t seed, const ResamplePolicy& policy);

struct ImproveStats {
  std::size_t connectors = 0;
  std::size_t pendant_edges = 0;
  std::size_t paths_before = 0;
  std::size_t paths_after = 0;
  BoundednessReport input_bounds;
  Certificate pendant_certificate;
  std::vector<std::string> warnings;
};

// Joins paths of each forest through length-2 connectors with middle vertex
// in Y, then moves ends off over-used vertices with pendant edges into Y.
// Forests must avoid Y. Every input forest is contained in its output. Input
// boundedness is audited into the stats rather than enforced.
std::vector<PathForest> improve_forests(const Graph& g, std::span<const Vertex> Y,
                                        std::vector<PathForest> forests, double d, double p,
                                        double eps, std::uint64_t seed,
                                        const ForestParams& params = {},
                                        ImproveStats* stats = nullptr);

struct ForestDecomposition {
  std::vector<PathForest> forests;
  std::vector<Vertex> reserve;
  std::size_t covered_edges = 0;
  std::size_t slices = 0;
  BoundednessReport bounded;
  std::vector<std::string> warnings;
};

// floor(d/2) bounded path forests covering all but about eps n d edges.
ForestDecomposition decompose_into_forests(const Graph& g, double d, double eps,
                                           std::uint64_t seed, const ForestParams& params = {});

struct CoverResult {
  std::vector<Path> paths;
  std::size_t limit = 0;            // floor(n / (d+1))
  std::size_t covered_before = 0;   // by the chosen forest's longest paths
  std::size_t covered_after = 0;    // after greedy extension
  std::vector<std::string> warnings;
};

// At most floor(n/(d+1)) vertex-disjoint paths for a d-regular g.
CoverResult vertex_path_cover(const Graph& g, std::size_t d, double eps, std::uint64_t seed,
                              const ForestParams& params = {});

// Re-expresses paths of a subgraph in parent ids.
Path lift_path(const Subgraph& s, const Path& p);

BoundednessSpec power_bounds(double n, double d, double paths_exp, double endpoint_exp);

nlohmann::json forests_to_json(std::span<const PathForest> forests);
std::vector<PathForest> forests_from_json(const nlohmann::json& j);
// One path per line; forests separated by a line holding "--".
void write_forests(std::ostream& out, std::span<const PathForest> forests);
std::vector<PathForest> read_forests(std::istream& in);

}  // namespace pathdecomp
