#include "pathdecomp/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>
#include <type_traits>
#include <variant>

#include "pathdecomp/dense_decompose.hpp"
#include "pathdecomp/dense_spots.hpp"
#include "pathdecomp/forests.hpp"
#include "pathdecomp/generators.hpp"
#include "pathdecomp/random.hpp"

namespace pathdecomp {

namespace {

static_assert(std::is_same_v<std::size_t, std::uint64_t>);
using Field = std::variant<double PipelineConfig::*, std::size_t PipelineConfig::*,
                           bool PipelineConfig::*>;

const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"eps", &PipelineConfig::eps},
      {"p", &PipelineConfig::p},
      {"eta", &PipelineConfig::eta},
      {"K", &PipelineConfig::K},
      {"k", &PipelineConfig::k},
      {"gamma", &PipelineConfig::gamma},
      {"sample_eta", &PipelineConfig::sample_eta},
      {"lambda", &PipelineConfig::lambda},
      {"mu", &PipelineConfig::mu},
      {"q", &PipelineConfig::q},
      {"partition_exp", &PipelineConfig::partition_exp},
      {"initial_paths_exp", &PipelineConfig::initial_paths_exp},
      {"initial_endpoint_exp", &PipelineConfig::initial_endpoint_exp},
      {"improve_paths_exp", &PipelineConfig::improve_paths_exp},
      {"improve_endpoint_exp", &PipelineConfig::improve_endpoint_exp},
      {"final_exp", &PipelineConfig::final_exp},
      {"path_cap_exp", &PipelineConfig::path_cap_exp},
      {"spread_exp", &PipelineConfig::spread_exp},
      {"route_exp", &PipelineConfig::route_exp},
      {"connector_exp", &PipelineConfig::connector_exp},
      {"seed", &PipelineConfig::seed},
      {"engine_rounds", &PipelineConfig::engine_rounds},
      {"sample_rounds", &PipelineConfig::sample_rounds},
      {"union_sets", &PipelineConfig::union_sets},
      {"widen_attempts", &PipelineConfig::widen_attempts},
      {"repair_budget", &PipelineConfig::repair_budget},
      {"restarts", &PipelineConfig::restarts},
      {"reserve_p", &PipelineConfig::reserve_p},
      {"reserve_gamma", &PipelineConfig::reserve_gamma},
      {"final_packing", &PipelineConfig::final_packing},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
bool parse_number(const std::string& s, T& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string format_double(double x, int digits = 17) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

ForestParams forest_params(const PipelineConfig& cfg) {
  ForestParams fp;
  fp.partition_exponent = cfg.partition_exp;
  fp.initial_paths_exp = cfg.initial_paths_exp;
  fp.initial_endpoint_exp = cfg.initial_endpoint_exp;
  fp.improve_paths_exp = cfg.improve_paths_exp;
  fp.improve_endpoint_exp = cfg.improve_endpoint_exp;
  fp.final_exp = cfg.final_exp;
  fp.reserve_p = cfg.reserve_p;
  fp.reserve_gamma = cfg.reserve_gamma;
  fp.policy = {ResampleMode::ScopedResample, cfg.engine_rounds, 0};
  fp.slices.mu = cfg.mu;
  return fp;
}

template <class F>
auto stage(const char* name, std::map<std::string, double>& times, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if constexpr (std::is_void_v<decltype(body())>) {
      body();
      times[name] = ms_since(t0);
    } else {
      auto r = body();
      times[name] = ms_since(t0);
      return r;
    }
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e.what());
  }
}

void mark_used(const Graph& g, std::span<const Path> paths, std::vector<char>& used) {
  for (const auto& p : paths) {
    for (EdgeId e : path_edge_ids(g, p)) used[e] = 1;
  }
}

}  // namespace

void apply_config_line(PipelineConfig& cfg, const std::string& key, const std::string& value) {
  const auto& table = fields();
  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const auto& f) { return f.first == key; });
  if (it == table.end()) throw ParseError(0, "unknown key '" + key + "'");
  const bool ok = std::visit(
      [&](auto member) {
        using T = std::remove_cvref_t<decltype(cfg.*member)>;
        if constexpr (std::is_same_v<T, bool>) {
          if (value == "true" || value == "1") return (cfg.*member = true, true);
          if (value == "false" || value == "0") return (cfg.*member = false, true);
          return false;
        } else {
          return parse_number(value, cfg.*member);
        }
      },
      it->second);
  if (!ok) throw ParseError(0, "bad value '" + value + "' for " + key);
}

PipelineConfig parse_config(std::istream& in) {
  PipelineConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key=value");
    try {
      apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ParseError& e) {
      const std::string msg = e.what();
      throw ParseError(lineno, msg.substr(msg.find(": ") + 2));
    }
  }
  validate_config(cfg);
  return cfg;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path);
  return parse_config(in);
}

void write_config(const PipelineConfig& cfg, std::ostream& out) {
  for (const auto& [name, field] : fields()) {
    out << name << '=';
    std::visit(
        [&](auto member) {
          using T = std::remove_cvref_t<decltype(cfg.*member)>;
          if constexpr (std::is_same_v<T, bool>) {
            out << (cfg.*member ? "true" : "false");
          } else if constexpr (std::is_same_v<T, double>) {
            out << format_double(cfg.*member);
          } else {
            out << cfg.*member;
          }
        },
        field);
    out << '\n';
  }
}

void validate_config(const PipelineConfig& cfg) {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw PreconditionError(std::string("config: ") + what);
  };
  need(cfg.eps > 0 && cfg.eps <= 1, "eps must be in (0, 1]");
  need(cfg.p > 0 && cfg.p <= 1, "p must be in (0, 1]");
  need(cfg.eta >= 0 && cfg.eta < 1, "eta must be in [0, 1)");
  need(cfg.K > 0, "K must be positive");
  need(cfg.k >= 1, "k must be at least 1");
  need(cfg.gamma > 0, "gamma must be positive");
  need(cfg.sample_eta > 0, "sample_eta must be positive");
  need(cfg.lambda > 0 && cfg.lambda < 1, "lambda must be in (0, 1)");
  need(cfg.mu > 0 && cfg.mu <= 1, "mu must be in (0, 1]");
  need(cfg.q > 0 && cfg.q <= 1, "q must be in (0, 1]");
  need(cfg.reserve_p > 0 && cfg.reserve_p < 1, "reserve_p must be in (0, 1)");
  need(cfg.reserve_gamma > 0, "reserve_gamma must be positive");
  for (double x : {cfg.partition_exp, cfg.initial_paths_exp, cfg.initial_endpoint_exp,
                   cfg.improve_paths_exp, cfg.improve_endpoint_exp, cfg.final_exp,
                   cfg.path_cap_exp, cfg.spread_exp, cfg.route_exp, cfg.connector_exp}) {
    need(x > 0 && x <= 1, "exponents must be in (0, 1]");
  }
  need(cfg.engine_rounds > 0 && cfg.sample_rounds > 0, "engine budgets must be positive");
  need(cfg.widen_attempts > 0, "widen_attempts must be positive");
}

std::vector<std::string> hierarchy_warnings(const PipelineConfig& cfg) {
  std::vector<std::string> out;
  if (!(cfg.eta < cfg.p)) out.push_back("hierarchy: eta >= p");
  if (!(cfg.p < 1 / cfg.K)) out.push_back("hierarchy: p >= 1/K");
  if (!(1 / cfg.K < cfg.eps)) out.push_back("hierarchy: 1/K >= eps");
  return out;
}

void to_json(nlohmann::json& j, const PipelineConfig& cfg) {
  j = nlohmann::json::object();
  for (const auto& [name, field] : fields()) {
    std::visit([&, &name = name](auto member) { j[name] = cfg.*member; }, field);
  }
}

DecompositionReport approx_decompose(const Graph& g, std::size_t d, const PipelineConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  validate_config(cfg);
  if (d == 0 || !g.is_regular(d)) {
    throw PreconditionError("approx_decompose needs a d-regular graph with d >= 1");
  }
  DecompositionReport r;
  r.config = cfg;
  r.n = g.num_vertices();
  r.d = d;
  r.edges = g.num_edges();
  const double dd = static_cast<double>(d);
  r.l_target = static_cast<std::size_t>(std::ceil((1 - cfg.eps) * dd - 1e-9));
  if (r.l_target == 0) throw PreconditionError("target path length is zero");
  r.warnings = hierarchy_warnings(cfg);
  const std::size_t l = r.l_target;
  const std::uint64_t seed = cfg.seed;

  // Dense spots and the sample X.
  const DenseSpotSpec spec{cfg.eta, dd, cfg.K};
  const DenseFamily family =
      stage("dense_family", r.stage_ms, [&] { return find_maximal_dense_family(g, spec); });
  r.stages["dense_family"] = {{"spots", family.spots.size()},
                              {"vertices", family.vertices().size()},
                              {"scan_rounds", family.scan.size()},
                              {"maximal", family.maximal}};

  SampleParams sp;
  sp.union_sets = cfg.union_sets;
  sp.widen_attempts = cfg.widen_attempts;
  sp.policy = {ResampleMode::ScopedResample, cfg.sample_rounds, 0};
  const SampleSet sample = stage("sample", r.stage_ms, [&] {
    return good_sample(g, family, cfg.p, cfg.gamma, cfg.k, cfg.sample_eta, mix_seed(seed, 1), sp);
  });
  r.warnings.insert(r.warnings.end(), sample.warnings.begin(), sample.warnings.end());
  r.stages["sample"] = {{"size", sample.X.size()},
                        {"gamma", sample.gamma},
                        {"eta", sample.eta},
                        {"rounds", sample.certificate.rounds},
                        {"audit_ok", sample.audit.ok()},
                        {"inheritance_checked", sample.audit.inheritance_checked},
                        {"inheritance_failed", sample.audit.inheritance_failed}};

  // Forests on G' = G - V(F) - X.
  std::vector<char> outside(r.n, 1);
  for (Vertex v : family.vertices()) outside[v] = 0;
  for (Vertex v : sample.X) outside[v] = 0;
  std::vector<Vertex> rest_vertices;
  for (Vertex v = 0; v < r.n; ++v) {
    if (outside[v]) rest_vertices.push_back(v);
  }
  std::vector<PathForest> forests;
  nlohmann::json fstage{{"vertices", rest_vertices.size()}, {"skipped", false}};
  if (static_cast<double>(rest_vertices.size()) <= cfg.eps * static_cast<double>(r.n) / 2) {
    fstage["skipped"] = true;
  } else {
    const auto t1 = std::chrono::steady_clock::now();
    const Subgraph rest = induced_subgraph(g, rest_vertices);
    try {
      auto fd = decompose_into_forests(rest.graph, dd, cfg.eps, mix_seed(seed, 2), forest_params(cfg));
      for (const auto& f : fd.forests) {
        std::vector<Path> lifted;
        for (const auto& p : f.paths()) lifted.push_back(lift_path(rest, p));
        forests.emplace_back(std::move(lifted));
      }
      fstage["slices"] = fd.slices;
      fstage["covered_edges"] = fd.covered_edges;
      fstage["bounded"] = fd.bounded.ok;
      fstage["warnings"] = fd.warnings.size();
    } catch (const Error& e) {
      r.warnings.push_back(std::string("forests: ") + e.what());
      forests.clear();
    }
    r.stage_ms["forests"] = ms_since(t1);
  }
  fstage["forests"] = forests.size();
  r.stages["forests"] = fstage;

  // Connect forests to the spots through X.
  ConnectParams cp;
  cp.d = dd;
  cp.policy = {ResampleMode::ScopedResample, cfg.engine_rounds, 0};
  const ConnectionResult conn = stage("connect", r.stage_ms, [&] {
    return connect_forests_to_spots(g, family, sample, forests, cfg.k, mix_seed(seed, 3), cp);
  });
  r.warnings.insert(r.warnings.end(), conn.warnings.begin(), conn.warnings.end());
  std::vector<Path> attached;
  for (const auto& f : conn.connected) {
    for (const auto& p : f.paths()) {
      if (p.length() > 0) attached.push_back(p);
    }
  }
  std::size_t joins = 0, attaches = 0;
  for (const auto& j : conn.joins) joins += j.size();
  for (const auto& a : conn.attaches) attaches += a.size();
  r.stages["connect"] = {{"attached_paths", attached.size()},
                         {"leftover_paths", conn.leftover_paths},
                         {"leftover_target", conn.leftover_target},
                         {"joins", joins},
                         {"attaches", attaches},
                         {"rescan_clean", conn.rescan_clean}};

  // Paths that reached no spot are chopped.
  std::vector<Path> out;
  std::size_t chopped_edges = 0;
  for (const auto& f : conn.leftover) {
    for (const auto& p : f.paths()) {
      if (p.length() < l) continue;
      auto pieces = chop_path(p, l);
      chopped_edges += pieces.size() * l;
      out.insert(out.end(), pieces.begin(), pieces.end());
    }
  }
  r.stages["chop"] = {{"pieces", out.size()}, {"edges", chopped_edges}};

  DenseParams dp;
  dp.packing = {cfg.repair_budget, cfg.restarts};
  dp.lambda = cfg.lambda;
  const SpotDecomposition dense = stage("dense_decompose", r.stage_ms, [&] {
    return decompose_dense_family(g, family, attached, l, mix_seed(seed, 4), dp);
  });
  r.warnings.insert(r.warnings.end(), dense.warnings.begin(), dense.warnings.end());
  out.insert(out.end(), dense.paths.begin(), dense.paths.end());
  r.stages["dense_decompose"] = {{"paths", dense.paths.size()},
                                 {"extended", dense.extended},
                                 {"attached_outside_junk", dense.attached_outside_junk},
                                 {"max_attached_load", dense.max_attached_load}};

  std::vector<char> used(r.edges, 0);
  mark_used(g, out, used);
  if (cfg.final_packing) {
    const auto extra = stage("final_packing", r.stage_ms, [&] {
      return pack_paths(g, used, l, mix_seed(seed, 5), dp.packing);
    });
    r.stages["final_packing"] = {{"paths", extra.size()}};
    out.insert(out.end(), extra.begin(), extra.end());
  }

  // Audit from scratch.
  const PathReport audit = verify_edge_disjoint_paths(g, out);
  bool lengths_ok = true;
  for (const auto& p : out) lengths_ok = lengths_ok && p.length() == l;
  std::vector<char> covered(r.edges, 0);
  if (audit.valid) mark_used(g, out, covered);
  r.leftover.clear();
  for (EdgeId e = 0; e < r.edges; ++e) {
    if (!covered[e]) r.leftover.push_back(g.edges()[e]);
  }
  r.valid = audit.valid && lengths_ok && audit.covered_edges + r.leftover.size() == r.edges;
  if (!r.valid) throw StageError("audit", "output paths failed structural verification");

  r.paths = std::move(out);
  r.covered_edges = audit.covered_edges;
  for (const auto& p : r.paths) ++r.histogram[p.length()];
  const double m = static_cast<double>(std::max<std::size_t>(r.edges, 1));
  r.coverage = static_cast<double>(r.covered_edges) / m;
  r.leftover_fraction = static_cast<double>(r.leftover.size()) / m;
  r.leftover_vs_eps_nd =
      static_cast<double>(r.leftover.size()) / (cfg.eps * static_cast<double>(r.n) * dd);
  r.runtime_ms = ms_since(t0);
  return r;
}

CoverReport cover(const Graph& g, std::size_t d, const PipelineConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  validate_config(cfg);
  CoverReport r;
  r.config = cfg;
  r.n = g.num_vertices();
  r.d = d;
  CoverResult c;
  try {
    c = vertex_path_cover(g, d, cfg.eps, cfg.seed, forest_params(cfg));
  } catch (const PreconditionError&) {
    throw;
  } catch (const Error& e) {
    throw StageError("cover", e.what());
  }
  r.paths = std::move(c.paths);
  r.limit = c.limit;
  r.warnings = std::move(c.warnings);

  // Audit: real paths, vertex-disjoint, within the count limit.
  std::vector<char> seen(r.n, 0);
  bool ok = r.paths.size() <= r.limit;
  for (const auto& p : r.paths) {
    if (p.empty()) ok = false;
    for (std::size_t i = 0; ok && i < p.vertices.size(); ++i) {
      const Vertex v = p.vertices[i];
      if (v >= r.n || seen[v]) {
        ok = false;
        break;
      }
      seen[v] = 1;
      if (i > 0 && !g.edge_id(p.vertices[i - 1], v)) ok = false;
    }
    if (!ok) break;
  }
  if (!ok) throw StageError("audit", "cover paths failed verification");
  r.valid = true;
  for (char s : seen) r.covered_vertices += s;
  r.uncovered = r.n - r.covered_vertices;
  r.runtime_ms = ms_since(t0);
  return r;
}

nlohmann::json report_json(const DecompositionReport& r, bool include_paths, bool include_runtime) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "decomposition";
  j["seed"] = r.config.seed;
  j["n"] = r.n;
  j["d"] = r.d;
  j["edges"] = r.edges;
  j["l_target"] = r.l_target;
  j["path_count"] = r.paths.size();
  j["covered_edges"] = r.covered_edges;
  j["leftover_edges"] = r.leftover.size();
  j["coverage"] = r.coverage;
  j["leftover_fraction"] = r.leftover_fraction;
  j["leftover_vs_eps_nd"] = r.leftover_vs_eps_nd;
  nlohmann::json hist = nlohmann::json::object();
  for (auto [len, c] : r.histogram) hist[std::to_string(len)] = c;
  j["histogram"] = hist;
  j["stages"] = r.stages;
  j["warnings"] = r.warnings;
  j["valid"] = r.valid;
  j["config"] = r.config;
  if (include_runtime) {
    j["runtime_ms"] = r.runtime_ms;
    j["stage_ms"] = r.stage_ms;
  }
  if (include_paths) {
    j["paths"] = r.paths;
    nlohmann::json left = nlohmann::json::array();
    for (const auto& e : r.leftover) left.push_back({e.u, e.v});
    j["leftover"] = left;
  }
  return j;
}

nlohmann::json report_json(const CoverReport& r, bool include_runtime) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "cover";
  j["seed"] = r.config.seed;
  j["n"] = r.n;
  j["d"] = r.d;
  j["limit"] = r.limit;
  j["path_count"] = r.paths.size();
  j["covered_vertices"] = r.covered_vertices;
  j["uncovered"] = r.uncovered;
  j["warnings"] = r.warnings;
  j["valid"] = r.valid;
  j["config"] = r.config;
  if (include_runtime) j["runtime_ms"] = r.runtime_ms;
  j["paths"] = r.paths;
  return j;
}

GraphInstance make_instance(const std::string& spec, std::uint64_t seed) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  auto num = [&](std::size_t i) {
    std::size_t x = 0;
    if (i >= parts.size() || !parse_number(parts[i], x)) {
      throw PreconditionError("bad graph spec '" + spec + "'");
    }
    return x;
  };
  const std::string kind = parts.empty() ? "" : parts[0];
  if (kind == "random" && parts.size() == 3) {
    return {gen_random_regular(num(1), num(2), seed), num(2)};
  }
  if (kind == "cliques" && parts.size() == 3) return {gen_clique_union(num(1), num(2) + 1), num(2)};
  if (kind == "linked" && parts.size() == 4) {
    return {gen_linked_cliques(num(1), num(2), num(3), seed), num(2)};
  }
  if (kind == "complete" && parts.size() == 2) return {gen_complete(num(1)), num(1) - 1};
  if (kind == "cycle" && parts.size() == 2) return {gen_cycle(num(1)), 2};
  throw PreconditionError("bad graph spec '" + spec + "'");
}

std::vector<BenchRow> bench(const std::vector<std::string>& suite,
                            const std::vector<PipelineConfig>& grid,
                            const std::vector<std::uint64_t>& seeds, const BenchOptions& options) {
  if (suite.empty()) throw PreconditionError("bench: empty suite");
  if (grid.empty()) throw PreconditionError("bench: empty config grid");
  if (seeds.empty()) throw PreconditionError("bench: no seeds");
  if (options.mode != "decompose" && options.mode != "cover") {
    throw PreconditionError("bench: mode must be decompose or cover");
  }
  std::vector<BenchRow> rows;
  for (const auto& spec : suite) {
    for (std::size_t c = 0; c < grid.size(); ++c) {
      for (auto s : seeds) {
        BenchRow row;
        row.graph = spec;
        row.config_index = c;
        row.seed = s;
        row.mode = options.mode;
        rows.push_back(row);
      }
    }
  }
  auto run = [&](BenchRow& row) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto inst = make_instance(row.graph, row.seed);
      row.n = inst.graph.num_vertices();
      row.d = inst.d;
      PipelineConfig cfg = grid[row.config_index];
      cfg.seed = row.seed;
      if (row.mode == "decompose") {
        const auto r = approx_decompose(inst.graph, inst.d, cfg);
        row.paths = r.paths.size();
        row.coverage = r.coverage;
        row.leftover_fraction = r.leftover_fraction;
      } else {
        const auto r = cover(inst.graph, inst.d, cfg);
        row.paths = r.paths.size();
        const double n = static_cast<double>(std::max<std::size_t>(row.n, 1));
        row.coverage = static_cast<double>(r.covered_vertices) / n;
        row.leftover_fraction = static_cast<double>(r.uncovered) / n;
      }
    } catch (const std::exception& e) {
      row.status = "error";
      row.error = e.what();
    }
    row.runtime_ms = ms_since(t0);
  };
  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, rows.size());
  if (workers == 1) {
    for (auto& row : rows) run(row);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < rows.size(); i += workers) run(rows[i]);
      });
    }
    for (auto& t : pool) t.join();
  }
  return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out, bool include_runtime) {
  out << "graph,config,seed,mode,n,d,status,paths,coverage,leftover_fraction";
  if (include_runtime) out << ",runtime_ms";
  out << ",error\n";
  for (const auto& r : rows) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), '"', '\'');
    out << r.graph << ',' << r.config_index << ',' << r.seed << ',' << r.mode << ',' << r.n << ','
        << r.d << ',' << r.status << ',' << r.paths << ',' << format_double(r.coverage, 10) << ','
        << format_double(r.leftover_fraction, 10);
    if (include_runtime) out << ',' << format_double(r.runtime_ms, 6);
    out << ",\"" << err << "\"\n";
  }
}

nlohmann::json bench_json(const std::vector<BenchRow>& rows, bool include_runtime) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row{{"graph", r.graph},   {"config", r.config_index},
                       {"seed", r.seed},     {"mode", r.mode},
                       {"n", r.n},           {"d", r.d},
                       {"status", r.status}, {"paths", r.paths},
                       {"coverage", r.coverage}, {"leftover_fraction", r.leftover_fraction},
                       {"error", r.error}};
    if (include_runtime) row["runtime_ms"] = r.runtime_ms;
    j.push_back(row);
  }
  return j;
}

}  // namespace pathdecomp
