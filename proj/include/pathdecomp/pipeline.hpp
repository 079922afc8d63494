#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathdecomp/errors.hpp"
#include "pathdecomp/graph.hpp"
#include "pathdecomp/paths.hpp"

namespace pathdecomp {

inline constexpr int kReportSchemaVersion = 1;

struct PipelineConfig {
  double eps = 0.3;
  double p = 0.1;       // sample probability for X
  double eta = 0.05;    // dense-spot degree slack
  double K = 4;         // dense spots have at most K d vertices
  std::size_t k = 4;    // connector length scale
  double gamma = 0.5;   // sample band width
  double sample_eta = 0.5;  // slack of the neighbourhood-union events
  double lambda = 0.01;
  double mu = 0.5;
  double q = 0.1;
  // Exponent knobs.
  double partition_exp = 0.15;
  double initial_paths_exp = 1.0 / 8;
  double initial_endpoint_exp = 7.0 / 8;
  double improve_paths_exp = 1.0 / 9;
  double improve_endpoint_exp = 8.0 / 9;
  double final_exp = 0.25;
  double path_cap_exp = 0.9;
  double spread_exp = 0.95;
  double route_exp = 0.75;
  double connector_exp = 199.0 / 200;
  std::uint64_t seed = 1;
  // Retry budgets.
  std::size_t engine_rounds = 400;
  std::size_t sample_rounds = 60;
  std::size_t union_sets = 64;
  std::size_t widen_attempts = 4;
  std::size_t repair_budget = 64;
  std::size_t restarts = 8;
  double reserve_p = 0.1;
  double reserve_gamma = 1.0;
  bool final_packing = true;  // pack unused edges after the dense stage

  bool operator==(const PipelineConfig&) const = default;
};

// Flat key=value lines; '#' starts a comment. Unknown keys and malformed
// values throw ParseError, out-of-range values PreconditionError.
PipelineConfig parse_config(std::istream& in);
PipelineConfig load_config(const std::string& path);
void apply_config_line(PipelineConfig& cfg, const std::string& key, const std::string& value);
void write_config(const PipelineConfig& cfg, std::ostream& out);
void validate_config(const PipelineConfig& cfg);
// Ordering checks eta < p < 1/K < eps <= 1, reported as warnings.
std::vector<std::string> hierarchy_warnings(const PipelineConfig& cfg);
void to_json(nlohmann::json& j, const PipelineConfig& cfg);

class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct DecompositionReport {
  std::size_t n = 0, d = 0, edges = 0;
  std::size_t l_target = 0;
  std::vector<Path> paths;
  std::vector<Edge> leftover;
  std::size_t covered_edges = 0;
  double coverage = 0;            // covered / |E|
  double leftover_fraction = 0;   // leftover / |E|
  double leftover_vs_eps_nd = 0;  // leftover / (eps n d)
  std::map<std::size_t, std::size_t> histogram;
  nlohmann::json stages = nlohmann::json::object();
  std::vector<std::string> warnings;
  bool valid = false;
  double runtime_ms = 0;
  std::map<std::string, double> stage_ms;
  PipelineConfig config;
};

// Dense family, good sample, forests on the sparse remainder, connection
// to the spots, chopping, dense-spot decomposition and a final packing
// pass. The result is re-verified from scratch; a failed audit throws.
DecompositionReport approx_decompose(const Graph& g, std::size_t d, const PipelineConfig& cfg);

struct CoverReport {
  std::size_t n = 0, d = 0;
  std::vector<Path> paths;
  std::size_t limit = 0;
  std::size_t covered_vertices = 0;
  std::size_t uncovered = 0;
  std::vector<std::string> warnings;
  bool valid = false;
  double runtime_ms = 0;
  PipelineConfig config;
};

CoverReport cover(const Graph& g, std::size_t d, const PipelineConfig& cfg);

// Without runtime when include_runtime is false, so reports compare bytewise.
nlohmann::json report_json(const DecompositionReport& r, bool include_paths = true,
                           bool include_runtime = true);
nlohmann::json report_json(const CoverReport& r, bool include_runtime = true);

struct GraphInstance {
  Graph graph;
  std::size_t d = 0;
};

// "random:n:d", "cliques:m:d" (m copies of K_{d+1}), "linked:m:d:links",
// "complete:n", "cycle:n".
GraphInstance make_instance(const std::string& spec, std::uint64_t seed);

struct BenchRow {
  std::string graph;
  std::size_t config_index = 0;
  std::uint64_t seed = 0;
  std::string mode;
  std::size_t n = 0, d = 0;
  std::string status = "ok";
  std::size_t paths = 0;
  double coverage = 0;           // edges (decompose) or vertices (cover)
  double leftover_fraction = 0;  // edges or vertices left
  double runtime_ms = 0;
  std::string error;
};

struct BenchOptions {
  std::string mode = "decompose";  // or "cover"
  std::size_t workers = 1;
};

// One row per (graph, config, seed), ordered by that key. Failures become
// rows with status "error".
std::vector<BenchRow> bench(const std::vector<std::string>& suite,
                            const std::vector<PipelineConfig>& grid,
                            const std::vector<std::uint64_t>& seeds,
                            const BenchOptions& options = {});
void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out,
                     bool include_runtime = true);
nlohmann::json bench_json(const std::vector<BenchRow>& rows, bool include_runtime = true);

}  // namespace pathdecomp
