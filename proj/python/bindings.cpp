#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pathdecomp/errors.hpp"
#include "pathdecomp/forests.hpp"
#include "pathdecomp/generators.hpp"
#include "pathdecomp/io.hpp"
#include "pathdecomp/oracle.hpp"
#include "pathdecomp/paths.hpp"
#include "pathdecomp/pipeline.hpp"

namespace py = pybind11;
using namespace pathdecomp;

namespace {

// Values arrive as Python objects and go through the same parser as config files.
PipelineConfig to_config(const py::dict& d) {
  PipelineConfig cfg;
  for (auto [k, v] : d) {
    std::string value = py::str(v);
    if (py::isinstance<py::bool_>(v)) value = v.cast<bool>() ? "true" : "false";
    apply_config_line(cfg, k.cast<std::string>(), value);
  }
  validate_config(cfg);
  return cfg;
}

std::vector<Path> to_paths(const std::vector<std::vector<Vertex>>& raw) {
  std::vector<Path> out;
  for (const auto& r : raw) out.push_back(Path{r});
  return out;
}

std::vector<std::vector<Vertex>> from_paths(const std::vector<Path>& paths) {
  std::vector<std::vector<Vertex>> out;
  for (const auto& p : paths) out.push_back(p.vertices);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Approximate path decompositions of regular graphs";

  // Translators run newest first, so the base class goes first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
             return Graph::from_pairs(n, edges);
           }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def("degree", &Graph::degree)
      .def("is_regular", &Graph::is_regular)
      .def("has_edge", &Graph::has_edge)
      .def("edges", [](const Graph& g) {
        std::vector<std::pair<Vertex, Vertex>> out;
        for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
        return out;
      })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.num_vertices()) +
               " m=" + std::to_string(g.num_edges()) + ">";
      });

  m.def("make_instance", [](const std::string& spec, std::uint64_t seed) {
    auto inst = make_instance(spec, seed);
    return py::make_tuple(std::move(inst.graph), inst.d);
  }, py::arg("spec"), py::arg("seed") = 1);
  m.def("gen_random_regular", [](std::size_t n, std::size_t d, std::uint64_t seed) {
    return gen_random_regular(n, d, seed);
  }, py::arg("n"), py::arg("d"), py::arg("seed") = 1);
  m.def("gen_clique_union", &gen_clique_union, py::arg("copies"), py::arg("size"));
  m.def("gen_complete", &gen_complete);
  m.def("gen_cycle", &gen_cycle);
  m.def("load_graph", [](const std::string& p) { return load_graph(p); });
  m.def("save_graph", [](const Graph& g, const std::string& p) { save_graph(g, p); });

  m.def("_decompose", [](const Graph& g, std::size_t d, const py::dict& cfg) {
    DecompositionReport r;
    {
      PipelineConfig c = to_config(cfg);
      py::gil_scoped_release release;
      r = approx_decompose(g, d, c);
    }
    return report_json(r).dump();
  });
  m.def("_cover", [](const Graph& g, std::size_t d, const py::dict& cfg) {
    return report_json(cover(g, d, to_config(cfg))).dump();
  });
  m.def("_bench", [](const std::vector<std::string>& suite, const std::vector<py::dict>& grid,
                     const std::vector<std::uint64_t>& seeds, const std::string& mode,
                     std::size_t workers) {
    std::vector<PipelineConfig> configs;
    for (const auto& d : grid) configs.push_back(to_config(d));
    return bench_json(bench(suite, configs, seeds, {mode, workers}), false).dump();
  });
  m.def("default_config", [] {
    std::ostringstream os;
    write_config(PipelineConfig{}, os);
    return os.str();
  });

  m.def("verify_paths", [](const Graph& g, const std::vector<std::vector<Vertex>>& paths) {
    const auto rep = verify_edge_disjoint_paths(g, to_paths(paths));
    return py::dict(py::arg("valid") = rep.valid, py::arg("covered_edges") = rep.covered_edges);
  });
  m.def("ks_rotation_paths", [](std::size_t s) { return from_paths(ks_rotation_paths(s)); });
  m.def("exact_min_path_cover", [](const Graph& g) { return exact_min_path_cover(g).count; });
  m.def("kotzig_check", [](const Graph& g) {
    const auto k = kotzig_check(g);
    return py::make_tuple(k.has_p3_decomposition, k.has_perfect_matching);
  });
}
