#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pathdecomp/graph.hpp"
#include "pathdecomp/paths.hpp"

namespace pathdecomp {

struct OracleBudget {
  std::size_t max_vertices = 12;
  std::size_t max_edges = 30;
  std::chrono::milliseconds time_limit{10000};
};

struct PathCoverSolution {
  std::size_t count = 0;
  std::vector<Path> paths;
};

// Minimum number of vertex-disjoint paths covering every vertex (subset DP).
PathCoverSolution exact_min_path_cover(const Graph& g, const OracleBudget& budget = {});

// Decomposition of E(g) into paths of length exactly `length`, if one exists.
std::optional<std::vector<Path>> exact_path_decomposition(const Graph& g, std::size_t length,
                                                          const OracleBudget& budget = {});

std::optional<std::vector<Edge>> exact_perfect_matching(const Graph& g,
                                                        const OracleBudget& budget = {});

struct KotzigResult {
  bool has_p3_decomposition = false;
  bool has_perfect_matching = false;
};

// For cubic g: whether E(g) splits into paths of length 3, and whether g has
// a perfect matching. The two always agree.
KotzigResult kotzig_check(const Graph& g, const OracleBudget& budget = {});

bool are_isomorphic(const Graph& a, const Graph& b);

// Connected cubic graphs on n vertices, one per isomorphism class, found by
// sampling the configuration model `samples` times.
std::vector<Graph> sample_cubic_graph_classes(std::size_t n, std::size_t samples,
                                              std::uint64_t seed);

}  // namespace pathdecomp
