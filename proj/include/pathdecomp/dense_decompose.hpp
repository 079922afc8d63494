#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathdecomp/dense_spots.hpp"
#include "pathdecomp/engine.hpp"
#include "pathdecomp/graph.hpp"
#include "pathdecomp/paths.hpp"

namespace pathdecomp {

struct PackingParams {
  std::size_t repair_budget = 64;  // rotations per path
  std::size_t restarts = 8;        // start vertices tried per path
};

// Edge-disjoint paths of the given lengths in K_m (vertices 0..m-1), in the
// order requested. m/2 paths of length m-1 with m even use the rotation
// family; everything else is walked greedily toward high residual degree
// with rotation repair. Throws PreconditionError when a length exceeds m-1
// or the total exceeds (1 - slack) C(m, 2), PackingFailure when a walk dies.
std::vector<Path> complete_path_packing(std::span<const std::size_t> lengths, std::size_t m,
                                        std::uint64_t seed, double slack = 0.0,
                                        const PackingParams& params = {});

// As many paths of exactly `length` edges as the greedy walk finds among
// edges with used[e] == 0; their edges are marked used.
std::vector<Path> pack_paths(const Graph& g, std::vector<char>& used, std::size_t length,
                             std::uint64_t seed, const PackingParams& params = {});

struct SizedForestRequest {
  std::vector<std::size_t> sizes;
};

struct SizedForestParams {
  double budget_fraction = 0.5;  // sum of sizes <= fraction |V| d / 2
  double partition_exponent = 0.15;
  double partition_eta = 0.9;
  double path_cap_exponent = 0.9;     // at most d^exp paths per forest
  double spread_cap_exponent = 0.95;  // endpoint total per vertex
  double spread_slack = 0.1;          // sizes in [n_i, (1 + slack) n_i]
  std::size_t max_class_growth = 8;   // extra class pairs tried on packing failure
  ResamplePolicy policy{ResampleMode::ScopedResample, 400, 0};
  PackingParams packing;
};

// Edge-disjoint forests with |V(F_i)| = n_i. Vertices are split into s
// classes, each request becomes a path through ceil(n_i / unit) classes in
// a packing of K_s, each class pair contributes one maximum matching, and
// leaves are trimmed to the exact size.
std::vector<PathForest> sized_forests(const Graph& g, const DenseSpotSpec& spec,
                                      const SizedForestRequest& request, std::uint64_t seed,
                                      const SizedForestParams& params = {});

// Sizes in [n_i, (1 + slack) n_i]; over-requested forests lose leaves at
// vertices ending many paths first.
std::vector<PathForest> sized_forests_spread(const Graph& g, const DenseSpotSpec& spec,
                                             const SizedForestRequest& request,
                                             std::uint64_t seed,
                                             const SizedForestParams& params = {});

struct AttachedSpot {
  std::vector<Vertex> spot;      // parent ids
  std::vector<Vertex> junk;      // J, parent ids
  std::vector<Path> attached;    // parent ids, outside the spot except at their ends
};

struct DenseParams {
  PackingParams packing;
  std::size_t partition_cap = 0;  // partition_connected on spots up to this size
  double lambda = 0.01;
};

struct SpotDecomposition {
  std::vector<Path> paths;         // all of length l_target
  std::vector<Edge> leftover;
  std::size_t extended = 0;        // attached paths completed to a multiple of l_target
  std::size_t attached_outside_junk = 0;
  std::size_t max_attached_load = 0;
  std::size_t pieces = 1;          // connected pieces reported by partition_connected
  std::vector<std::string> warnings;
};

// Completes every attached path inside the spot to a multiple of l_target
// edges, chops it starting from the attached end, then packs the rest of the
// spot with l_target-paths. Path edges plus leftover equal the spot's edges
// plus the attached paths' edges.
SpotDecomposition decompose_spot_with_attached(const Graph& g, const AttachedSpot& a,
                                               std::size_t l_target, std::uint64_t seed,
                                               const DenseParams& params = {});

// Spots in decreasing size; each attached path goes to the spot holding its
// first end (or its last when the first lies outside every spot).
SpotDecomposition decompose_dense_family(const Graph& g, const DenseFamily& family,
                                         std::span<const Path> attached, std::size_t l_target,
                                         std::uint64_t seed, const DenseParams& params = {});

// Consecutive pieces of exactly `length` edges from the front of p; the
// remainder's edges go to `rest`.
std::vector<Path> chop_path(const Path& p, std::size_t length, std::vector<Edge>* rest = nullptr);

void to_json(nlohmann::json& j, const SpotDecomposition& s);

}  // namespace pathdecomp
