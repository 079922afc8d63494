#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "pathdecomp/graph.hpp"
#include "pathdecomp/paths.hpp"

namespace pathdecomp {

// Edge list: one "u v" pair per line, '#' comments, optional "# n=<count>"
// header. Duplicates are merged; self-loops and malformed lines throw
// ParseError carrying the line number.
Graph parse_edge_list(std::istream& in);
Graph load_graph(const std::filesystem::path& path);
void write_edge_list(const Graph& g, std::ostream& out);
void save_graph(const Graph& g, const std::filesystem::path& path);

// One path per line as whitespace-separated vertex ids.
std::vector<Path> parse_paths(std::istream& in);
void write_paths(std::span<const Path> paths, std::ostream& out);

// Accepts either a JSON document ({"paths": [...]} or a bare array) or the
// line format, decided by the first non-blank character.
std::vector<Path> load_paths(const std::filesystem::path& path);

}  // namespace pathdecomp
