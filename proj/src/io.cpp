#include "pathdecomp/io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "pathdecomp/errors.hpp"

namespace pathdecomp {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<long long> parse_ints(std::string_view s, std::size_t line) {
  std::vector<long long> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    long long value = 0;
    auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + j, value);
    if (ec != std::errc() || ptr != s.data() + j || value < 0) {
      throw ParseError(line, "expected a non-negative integer, got '" +
                                 std::string(s.substr(i, j - i)) + "'");
    }
    out.push_back(value);
    i = j;
  }
  return out;
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  long long declared_n = -1;
  long long max_id = -1;
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = trim(line.substr(1));
      if (body.starts_with("n=")) {
        auto vals = parse_ints(body.substr(2), line_no);
        if (vals.size() != 1) throw ParseError(line_no, "malformed n= header");
        declared_n = vals[0];
      }
      continue;
    }
    auto vals = parse_ints(line, line_no);
    if (vals.size() != 2) throw ParseError(line_no, "expected exactly two vertex ids");
    if (vals[0] == vals[1]) throw ParseError(line_no, "self-loop");
    if (vals[0] > UINT32_MAX - 1 || vals[1] > UINT32_MAX - 1) {
      throw ParseError(line_no, "vertex id too large");
    }
    if (declared_n >= 0 && (vals[0] >= declared_n || vals[1] >= declared_n)) {
      throw ParseError(line_no, "vertex id exceeds declared n");
    }
    max_id = std::max({max_id, vals[0], vals[1]});
    edges.push_back(Edge::of(static_cast<Vertex>(vals[0]), static_cast<Vertex>(vals[1])));
  }
  std::size_t n = declared_n >= 0 ? static_cast<std::size_t>(declared_n)
                                  : static_cast<std::size_t>(max_id + 1);
  return Graph::from_edges(n, edges);
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return parse_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << "# n=" << g.num_vertices() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void save_graph(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_edge_list(g, out);
}

std::vector<Path> parse_paths(std::istream& in) {
  std::vector<Path> paths;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    Path p;
    for (long long v : parse_ints(line, line_no)) p.vertices.push_back(static_cast<Vertex>(v));
    paths.push_back(std::move(p));
  }
  return paths;
}

void write_paths(std::span<const Path> paths, std::ostream& out) {
  for (const auto& p : paths) {
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
      if (i) out << ' ';
      out << p.vertices[i];
    }
    out << '\n';
  }
}

std::vector<Path> load_paths(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto body = trim(text);
  if (!body.empty() && (body.front() == '{' || body.front() == '[')) {
    auto j = nlohmann::json::parse(body);
    const auto& arr = j.is_object() ? j.at("paths") : j;
    return arr.get<std::vector<Path>>();
  }
  std::istringstream ss(text);
  return parse_paths(ss);
}

}  // namespace pathdecomp
