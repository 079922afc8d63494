#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathdecomp/engine.hpp"
#include "pathdecomp/graph.hpp"

namespace pathdecomp {

struct DegreeBand {
  std::size_t low = 0;
  std::size_t high = 0;
  bool contains(std::size_t x) const { return low <= x && x <= high; }
};

DegreeBand degree_band(const Graph& g);

struct RegularizeParams {
  // C' in the target width high - low <= C' log(low).
  double band_log_constant = 8.0;
  // The step warns when eps * d < gate_constant * log d.
  double gate_constant = 1000.0;
  // near_regular_subgraph runs ceil(steps_per_log * log C) steps.
  double steps_per_log = 10.0;
  double step_epsilon = 0.05;
  std::size_t corollary_steps = 50;
  ResamplePolicy policy{ResampleMode::ScopedResample, 400, 0};
};

// Repeatedly deletes vertices of degree < t; none if nothing survives.
std::optional<Subgraph> min_degree_subgraph(const Graph& g, std::size_t t);

struct RegularizeOutcome {
  Subgraph graph;  // ids map to the input graph
  std::size_t d_prime = 0;
  DegreeBand band;
  std::size_t steps = 0;
  std::vector<std::string> warnings;
  std::vector<Certificate> certificates;
};

// One randomized regularization step for degrees in [d, (1+gamma) d]:
// low-degree vertices are deleted with probability eps, and so are edges
// from them to high-degree vertices. Needs gamma >= 10 eps, eps <= 1/100 and
// eps d >= 1.
RegularizeOutcome regularize_step(const Graph& g, double d, double gamma, double eps,
                                  std::uint64_t seed, const RegularizeParams& params = {});

// Spanning subgraph (up to a few deleted vertices) with degree band width at
// most C' log d'. Needs degrees in [d, (1+gamma) d] with gamma <= 1/100.
RegularizeOutcome spanning_near_regular(const Graph& g, double d, double gamma,
                                        std::uint64_t seed,
                                        const RegularizeParams& params = {});

// Subgraph with a narrow degree band from degrees in [d, C d].
RegularizeOutcome near_regular_subgraph(const Graph& g, double d, double C,
                                        std::uint64_t seed,
                                        const RegularizeParams& params = {});

// Deletes edges joining two vertices of degree > threshold (random order).
Graph trim_high_edges(const Graph& g, std::size_t threshold, Rng& rng);

struct RegularSlice {
  Subgraph subgraph;  // ids map to the input graph
  std::size_t d = 0;  // even
  double eta = 0;
  DegreeBand band;    // [ceil((1-eta) d), floor((1+eta) d)]
};

struct SliceParams {
  double mu = 0.5;           // k = round(1 / (2 mu)) allocation sets
  double tolerance = 0.25;   // eta of each slice
  double min_fraction = -1;  // beta; negative means eps / 3
  double keep_band = 1.0;    // edges kept if common count is (1 +- keep_band) b_i^2 k
  bool structured_allocation = true;
  std::size_t max_pieces = 64;
  RegularizeParams regularize;
};

struct SliceResult {
  std::vector<RegularSlice> slices;
  std::size_t uncovered_edges = 0;
  std::size_t pieces = 0;        // maximal near-regular subgraphs found
  std::size_t allocation_sets = 0;
  bool structured = false;
  std::vector<std::string> warnings;
};

SliceResult regular_slices(const Graph& g, double d, double mu, double eps,
                           std::uint64_t seed, const SliceParams& params = {});

void to_json(nlohmann::json& j, const DegreeBand& b);
nlohmann::json slice_manifest(const SliceResult& r);

}  // namespace pathdecomp
