#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "pathdecomp/errors.hpp"
#include "pathdecomp/io.hpp"
#include "pathdecomp/oracle.hpp"
#include "pathdecomp/paths.hpp"
#include "pathdecomp/pipeline.hpp"

using namespace pathdecomp;

namespace {

struct Common {
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "random seed (overrides the config)");
  cmd->add_option("--config", c.config, "key=value configuration file");
  cmd->add_option("--out", c.out, "output file (default stdout)");
}

PipelineConfig load(const Common& c) {
  PipelineConfig cfg = c.config.empty() ? PipelineConfig{} : load_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw Error("cannot write " + c.out);
  f << text;
}

std::size_t degree_of(const Graph& g, std::optional<std::size_t> d) {
  if (d) return *d;
  if (g.num_vertices() == 0) throw PreconditionError("empty graph");
  return g.degree(0);
}

std::vector<std::uint64_t> parse_seeds(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');) out.push_back(std::stoull(part));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate path decompositions of regular graphs"};
  app.require_subcommand(1);

  // generate
  Common gen_c;
  std::string gen_spec;
  auto* gen = app.add_subcommand("generate", "write a generated graph as an edge list");
  add_common(gen, gen_c);
  gen->add_option("--spec", gen_spec, "random:n:d, cliques:m:d, linked:m:d:links, complete:n, cycle:n")
      ->required();

  // decompose
  Common dec_c;
  std::string dec_graph, dec_paths;
  std::optional<std::size_t> dec_d;
  bool dec_no_runtime = false;
  auto* dec = app.add_subcommand("decompose", "decompose edges into paths of length ceil((1-eps) d)");
  add_common(dec, dec_c);
  dec->add_option("--graph", dec_graph, "edge-list file")->required();
  dec->add_option("--d", dec_d, "degree (default: degree of vertex 0)");
  dec->add_option("--paths", dec_paths, "also write the paths, one per line");
  dec->add_flag("--no-runtime", dec_no_runtime, "omit timings so reports compare bytewise");

  // cover
  Common cov_c;
  std::string cov_graph;
  std::optional<std::size_t> cov_d;
  bool cov_no_runtime = false;
  auto* cov = app.add_subcommand("cover", "cover vertices by at most n/(d+1) disjoint paths");
  add_common(cov, cov_c);
  cov->add_option("--graph", cov_graph, "edge-list file")->required();
  cov->add_option("--d", cov_d, "degree (default: degree of vertex 0)");
  cov->add_flag("--no-runtime", cov_no_runtime, "omit timings");

  // verify
  Common ver_c;
  std::string ver_graph, ver_paths;
  std::optional<std::size_t> ver_length;
  auto* ver = app.add_subcommand("verify", "check that paths are edge-disjoint paths of the graph");
  add_common(ver, ver_c);
  ver->add_option("--graph", ver_graph, "edge-list file")->required();
  ver->add_option("--paths", ver_paths, "path file (lines or JSON)")->required();
  ver->add_option("--length", ver_length, "required length of every path");

  // oracle
  Common ora_c;
  std::string ora_graph, ora_task;
  std::size_t ora_length = 0;
  auto* ora = app.add_subcommand("oracle", "exact answers on small graphs");
  add_common(ora, ora_c);
  ora->add_option("--graph", ora_graph, "edge-list file")->required();
  ora->add_option("--task", ora_task, "path-cover, matching, kotzig or decompose")
      ->required()
      ->check(CLI::IsMember({"path-cover", "matching", "kotzig", "decompose"}));
  ora->add_option("--length", ora_length, "path length for the decompose task");

  // bench
  Common ben_c;
  std::vector<std::string> ben_suite, ben_grid;
  std::string ben_seeds, ben_format = "csv", ben_mode = "decompose";
  std::size_t ben_workers = 1;
  bool ben_no_runtime = false;
  auto* ben = app.add_subcommand("bench", "tabulate runs over graphs, configs and seeds");
  add_common(ben, ben_c);
  ben->add_option("--suite", ben_suite, "graph spec, repeatable")->required();
  ben->add_option("--grid", ben_grid, "extra config file per grid point, repeatable");
  ben->add_option("--seeds", ben_seeds, "comma-separated seeds (default: --seed, else 1)");
  ben->add_option("--format", ben_format)->check(CLI::IsMember({"csv", "json"}));
  ben->add_option("--mode", ben_mode)->check(CLI::IsMember({"decompose", "cover"}));
  ben->add_option("--workers", ben_workers);
  ben->add_flag("--no-runtime", ben_no_runtime, "omit timings");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto cfg = load(gen_c);
      std::ostringstream os;
      write_edge_list(make_instance(gen_spec, cfg.seed).graph, os);
      emit(gen_c, os.str());
    } else if (*dec) {
      const auto cfg = load(dec_c);
      const Graph g = load_graph(dec_graph);
      const auto r = approx_decompose(g, degree_of(g, dec_d), cfg);
      emit(dec_c, report_json(r, true, !dec_no_runtime).dump(1) + "\n");
      if (!dec_paths.empty()) {
        std::ofstream f(dec_paths);
        if (!f) throw Error("cannot write " + dec_paths);
        write_paths(r.paths, f);
      }
    } else if (*cov) {
      const auto cfg = load(cov_c);
      const Graph g = load_graph(cov_graph);
      const auto r = cover(g, degree_of(g, cov_d), cfg);
      emit(cov_c, report_json(r, !cov_no_runtime).dump(1) + "\n");
    } else if (*ver) {
      load(ver_c);
      const Graph g = load_graph(ver_graph);
      const auto paths = load_paths(ver_paths);
      const auto rep = verify_edge_disjoint_paths(g, paths);
      bool lengths_ok = true;
      if (ver_length) {
        for (const auto& p : paths) lengths_ok = lengths_ok && p.length() == *ver_length;
      }
      nlohmann::json j = rep;
      j["lengths_ok"] = lengths_ok;
      j["edges"] = g.num_edges();
      emit(ver_c, j.dump(1) + "\n");
      return rep.valid && lengths_ok ? 0 : 1;
    } else if (*ora) {
      load(ora_c);
      const Graph g = load_graph(ora_graph);
      nlohmann::json j{{"task", ora_task}};
      if (ora_task == "path-cover") {
        const auto s = exact_min_path_cover(g);
        j["count"] = s.count;
        j["paths"] = s.paths;
      } else if (ora_task == "matching") {
        const auto m = exact_perfect_matching(g);
        j["exists"] = m.has_value();
        if (m) {
          nlohmann::json edges = nlohmann::json::array();
          for (const auto& e : *m) edges.push_back({e.u, e.v});
          j["matching"] = edges;
        }
      } else if (ora_task == "kotzig") {
        const auto k = kotzig_check(g);
        j["has_p3_decomposition"] = k.has_p3_decomposition;
        j["has_perfect_matching"] = k.has_perfect_matching;
      } else {
        if (ora_length == 0) throw PreconditionError("--length is required for decompose");
        const auto paths = exact_path_decomposition(g, ora_length);
        j["exists"] = paths.has_value();
        if (paths) j["paths"] = *paths;
      }
      emit(ora_c, j.dump(1) + "\n");
    } else if (*ben) {
      const PipelineConfig base = load(ben_c);
      std::vector<PipelineConfig> grid;
      if (ben_grid.empty()) grid.push_back(base);
      for (const auto& path : ben_grid) grid.push_back(load_config(path));
      BenchOptions opt;
      opt.mode = ben_mode;
      opt.workers = ben_workers;
      const auto seeds = ben_seeds.empty() ? std::vector<std::uint64_t>{base.seed} : parse_seeds(ben_seeds);
      const auto rows = bench(ben_suite, grid, seeds, opt);
      std::ostringstream os;
      if (ben_format == "csv") {
        write_bench_csv(rows, os, !ben_no_runtime);
      } else {
        os << bench_json(rows, !ben_no_runtime).dump(1) << "\n";
      }
      emit(ben_c, os.str());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
