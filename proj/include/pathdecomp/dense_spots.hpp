#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathdecomp/engine.hpp"
#include "pathdecomp/graph.hpp"
#include "pathdecomp/paths.hpp"

namespace pathdecomp {

struct ScanRecord {
  std::size_t round = 0;
  std::size_t residual = 0;  // vertices still available
  std::size_t found = 0;     // spots added in this round
};

struct DenseFamily {
  std::vector<std::vector<Vertex>> spots;
  DenseSpotSpec spec;
  std::vector<ScanRecord> scan;
  bool maximal = false;  // the last scan found nothing

  std::vector<Vertex> vertices() const;
  // spot index per vertex, or UINT32_MAX.
  std::vector<std::uint32_t> owner(std::size_t n) const;
};

// Repeatedly peels the residual graph to minimum degree (1-eta) d, takes
// closed neighbourhoods that stay dense after peeling, then shrinks oversized
// components by lowest-degree removal. Stops when a round finds nothing.
DenseFamily find_maximal_dense_family(const Graph& g, const DenseSpotSpec& spec);

struct ApproxWitness {
  bool ok = false;
  std::vector<Vertex> witness;
  std::size_t difference = 0;  // |H sym-diff union N(v, X)|
};

// Looks for at most k vertices, pairwise within distance k, whose
// X-neighbourhoods cover H up to eta * pd vertices. Starts from the vertices
// with most neighbours in H and descends greedily.
ApproxWitness is_approximable(const Graph& g, std::span<const Vertex> X, std::span<const Vertex> H,
                              std::size_t k, double eta, double pd,
                              std::size_t starts = 16);

struct SampleParams {
  std::size_t union_sets = 256;  // sampled members of the truncated S family
  std::size_t k_cap = 3;         // k_eff = min(k, k_cap)
  std::size_t widen_attempts = 4;
  double widen_factor = 1.5;
  std::size_t audit_candidates = 32;
  ResamplePolicy policy{ResampleMode::ScopedResample, 60, 0};
};

struct SampleAudit {
  bool size_ok = true;          // |X| band
  bool degrees_ok = true;       // d(v, X) band
  bool spot_sizes_ok = true;    // |V cap X| band
  bool spot_degrees_ok = true;  // d(v, V cap X) band
  std::size_t inheritance_checked = 0;
  std::size_t inheritance_failed = 0;
  bool ok() const {
    return size_ok && degrees_ok && spot_sizes_ok && spot_degrees_ok && inheritance_failed == 0;
  }
};

struct SampleSet {
  std::vector<Vertex> X;
  double p = 0, gamma = 0, eta = 0, K = 0;
  std::size_t k = 0, k_eff = 0;
  std::size_t union_sets = 0;
  Certificate certificate;
  SampleAudit audit;
  std::vector<std::string> warnings;
};

// Good sample for a d-regular g: independent p-inclusion redrawn until the
// degree, block, spot and neighbourhood-union events all hold. When the
// budget runs out gamma and eta are widened (with a warning) and the engine
// restarts; the last failure throws BudgetExhausted.
SampleSet good_sample(const Graph& g, const DenseFamily& family, double p, double gamma,
                      std::size_t k, double eta, std::uint64_t seed,
                      const SampleParams& params = {});

// Recomputes the size and degree bands of a sample from scratch.
SampleAudit audit_sample(const Graph& g, const DenseFamily& family, std::span<const Vertex> X,
                         double p, double gamma);

struct ConnectParams {
  double quota = 0;  // per-vertex and per-spot end quota; 0 means sqrt(d)
  double d = 0;      // 0 means max degree
  ResamplePolicy policy;
};

struct ConnectionResult {
  std::vector<PathForest> connected;  // both ends in X cap V(F)
  std::vector<PathForest> leftover;
  std::vector<std::vector<Path>> joins;     // Q connectors per forest
  std::vector<std::vector<Path>> attaches;  // R connectors per forest
  std::size_t leftover_paths = 0;
  double leftover_target = 0;  // 16 n / (K d)
  bool rescan_clean = true;
  BoundednessReport input_bounds;
  std::vector<std::string> warnings;
};

// Joins ends of each forest through X (length <= 2k) and then attaches the
// remaining ends to X cap V(F) through X - V(F) (length <= k). Forests must
// avoid V(F) and X and be pairwise edge-disjoint.
ConnectionResult connect_forests_to_spots(const Graph& g, const DenseFamily& family,
                                          const SampleSet& sample,
                                          std::span<const PathForest> forests, std::size_t k,
                                          std::uint64_t seed, const ConnectParams& params = {});

void to_json(nlohmann::json& j, const DenseFamily& f);
void to_json(nlohmann::json& j, const SampleSet& s);
void to_json(nlohmann::json& j, const ConnectionResult& r);

}  // namespace pathdecomp
