#pragma once

#include <cstddef>
#include <cstdint>

#include "pathdecomp/graph.hpp"

namespace pathdecomp {

// Configuration model: rejects pairings with loops or multi-edges up to
// `retry_budget` times, then repairs the last pairing by edge swaps.
Graph gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed,
                         std::size_t retry_budget = 200);

Graph gen_clique_union(std::size_t copies, std::size_t size);
Graph gen_complete(std::size_t n);
Graph gen_cycle(std::size_t n);
Graph gen_complete_bipartite(std::size_t a, std::size_t b);
Graph gen_petersen();

// Two cliques (vertices 0..a-1 and a..a+b-1) joined by `crossing` distinct
// edges chosen at random.
Graph gen_clique_pair(std::size_t a, std::size_t b, std::size_t crossing,
                      std::uint64_t seed);

// `copies` disjoint K_{d+1} arranged in a ring; each consecutive pair is
// joined by `links` edge switches, so the result stays d-regular.
Graph gen_linked_cliques(std::size_t copies, std::size_t d, std::size_t links,
                         std::uint64_t seed);

// Bipartite graph with sides 0..n-1 and n..2n-1, every degree in
// [dmin, dmax], degree sums balanced.
Graph gen_random_bipartite(std::size_t n, std::size_t dmin, std::size_t dmax,
                           std::uint64_t seed);

}  // namespace pathdecomp
