#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathdecomp/engine.hpp"
#include "pathdecomp/graph.hpp"
#include "pathdecomp/paths.hpp"

namespace pathdecomp {

// (zeta, lambda, d)-connected: no set of at most lambda d^2 edges separates two
// vertex sets of size at least zeta d.
struct ConnectivitySpec {
  double zeta = 0.1;
  double lambda = 0.01;
  double d = 1;
  // Read set-size bounds as zeta |V| instead of zeta d.
  bool size_by_n = false;

  double min_side(std::size_t n) const;
  std::size_t cut_budget() const;
};

struct ConnectivityParams {
  std::size_t flow_vertex_cap = 2000;  // exact seed-pair flows up to this size
  std::size_t all_pairs_below = 41;    // every vertex pair is a seed pair below this
  std::size_t flow_seeds = 24;
  std::size_t layer_seeds = 16;
};

struct CutWitness {
  std::vector<Edge> cut;  // F
  std::vector<Vertex> side1, side2;
};

struct ConnectivityCertificate {
  bool connected = true;
  std::optional<CutWitness> witness;
  std::string method;  // trivial, components, layers, flow, or none
  std::size_t flows = 0;
};

ConnectivityCertificate check_connectivity(const Graph& g, const ConnectivitySpec& spec,
                                           const ConnectivityParams& params = {});

// Sound iff the witness sides partition V, are large enough, and every edge
// between them is in the cut, which fits the budget.
bool witness_is_valid(const Graph& g, const ConnectivitySpec& spec, const CutWitness& w);

struct PartitionAudit {
  bool junk_small = true;      // |J| <= sqrt(lambda) d
  bool pieces_dense = true;    // every piece minus J is (2 beta, d, K)-dense
  bool few_pieces = true;      // t <= 2K
  bool edges_conserved = true;
};

struct ConnectedPartition {
  std::vector<std::vector<Vertex>> pieces;
  std::vector<Vertex> junk;
  std::vector<Edge> deleted;
  PartitionAudit audit;
};

// Splits a (beta, d, K)-dense graph along witness cuts until every piece is
// (lambda^{1/4}, lambda, d)-connected. J collects vertices incident to more
// than lambda^{1/5} d deleted edges.
ConnectedPartition partition_connected(const Graph& g, double beta, double d, double K,
                                       double lambda, const ConnectivityParams& params = {});

// Shortest U-V path by BFS; length 0 when U and V meet. Throws Error when no
// path of length at most 8K/lambda exists.
Path short_path(const Graph& g, std::span<const Vertex> U, std::span<const Vertex> V,
                const ConnectivitySpec& spec, double K);

struct PathFamily {
  std::vector<Path> paths;
  std::size_t max_length = 0;
  double target = 0;  // lambda^2 d^2 / 32K
};

// Greedy edge-disjoint U-V paths, shortest first, each of length at most
// 16K/lambda. Shared vertices of U and V give length-0 paths first.
PathFamily edge_disjoint_short_paths(const Graph& g, std::span<const Vertex> U,
                                     std::span<const Vertex> V, const ConnectivitySpec& spec,
                                     double K, std::size_t limit = SIZE_MAX);

struct ConnectorParams {
  std::size_t sample_pairs = 200;
  std::size_t min_paths = 0;  // 0 means max(1, floor(q d^2))
  ResamplePolicy policy{ResampleMode::ScopedResample, 400, 0};
};

struct PairRecord {
  Vertex v = 0, w = 0;
  std::size_t paths = 0;
};

struct ConnectorSet {
  std::vector<Vertex> W;
  std::size_t target = 0;
  std::vector<PairRecord> sample;
  bool certified = false;
  Certificate engine;
};

// Random W (each vertex with probability eps) with |W| <= 2 eps |V| and at
// most 2 eps d W-neighbours per vertex, certified on a pair sample by path
// families inside g[W] of length at most 1/q. Throws BudgetExhausted when no
// draw certifies.
ConnectorSet connector_set(const Graph& g, const ConnectivitySpec& spec, double K, double q,
                           double eps, std::uint64_t seed, const ConnectorParams& params = {});

void to_json(nlohmann::json& j, const CutWitness& w);
void to_json(nlohmann::json& j, const ConnectivityCertificate& c);
void to_json(nlohmann::json& j, const ConnectedPartition& p);
void to_json(nlohmann::json& j, const ConnectorSet& c);

}  // namespace pathdecomp
