#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pathdecomp {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

// Undirected edge, normalized so that u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  static Edge of(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  Vertex other(Vertex x) const { return x == u ? v : u; }
  auto operator<=>(const Edge&) const = default;
};

// Immutable simple undirected graph on vertices 0..n-1, stored as CSR.
class Graph {
 public:
  Graph() = default;

  // Duplicate edges are merged; self-loops and out-of-range endpoints throw
  // PreconditionError.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);
  static Graph from_pairs(std::size_t n,
                          std::span<const std::pair<Vertex, Vertex>> pairs);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  // Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident(Vertex v) const {
    return {adj_edges_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(Vertex a, Vertex b) const { return edge_id(a, b).has_value(); }
  std::optional<EdgeId> edge_id(Vertex a, Vertex b) const;

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::size_t min_degree() const;
  std::size_t max_degree() const;
  bool is_regular(std::size_t d) const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adj_;
  std::vector<EdgeId> adj_edges_;
};

// A graph together with the map from its vertex ids to those of a parent.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_parent;

  Vertex parent_of(Vertex v) const { return to_parent[v]; }
};

Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

// Subgraph on `vertices` keeping only the listed parent edges; endpoints of
// those edges are added to the vertex set when missing.
Subgraph edge_subgraph(const Graph& g, std::span<const EdgeId> edges,
                       std::span<const Vertex> vertices = {});

// Graph on the same vertex set with the marked edges removed.
Graph remove_edges(const Graph& g, const std::vector<char>& removed);

std::vector<std::vector<Vertex>> connected_components(const Graph& g);

std::vector<char> vertex_mask(std::size_t n, std::span<const Vertex> vertices);

}  // namespace pathdecomp
