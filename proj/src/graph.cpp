#include "pathdecomp/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "pathdecomp/errors.hpp"

namespace pathdecomp {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g;
  g.n_ = n;
  g.edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u == e.v) {
      throw PreconditionError("self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u >= n || e.v >= n) {
      throw PreconditionError("edge endpoint out of range");
    }
    g.edges_.push_back(Edge::of(e.u, e.v));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

  std::vector<std::size_t> deg(n, 0);
  for (const Edge& e : g.edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.adj_.resize(g.offsets_[n]);
  g.adj_edges_.resize(g.offsets_[n]);
  std::vector<std::size_t> pos(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted, so each adjacency list comes out sorted.
  for (EdgeId id = 0; id < g.edges_.size(); ++id) {
    const Edge& e = g.edges_[id];
    g.adj_[pos[e.u]] = e.v;
    g.adj_edges_[pos[e.u]++] = id;
  }
  for (EdgeId id = 0; id < g.edges_.size(); ++id) {
    const Edge& e = g.edges_[id];
    g.adj_[pos[e.v]] = e.u;
    g.adj_edges_[pos[e.v]++] = id;
  }
  for (std::size_t v = 0; v < n; ++v) {
    const auto b = g.offsets_[v], f = g.offsets_[v + 1];
    std::vector<std::pair<Vertex, EdgeId>> tmp;
    tmp.reserve(f - b);
    for (auto i = b; i < f; ++i) tmp.emplace_back(g.adj_[i], g.adj_edges_[i]);
    std::sort(tmp.begin(), tmp.end());
    for (auto i = b; i < f; ++i) {
      g.adj_[i] = tmp[i - b].first;
      g.adj_edges_[i] = tmp[i - b].second;
    }
  }
  return g;
}

Graph Graph::from_pairs(std::size_t n,
                        std::span<const std::pair<Vertex, Vertex>> pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [a, b] : pairs) edges.push_back(Edge{a, b});
  return from_edges(n, edges);
}

std::optional<EdgeId> Graph::edge_id(Vertex a, Vertex b) const {
  if (a >= n_ || b >= n_) return std::nullopt;
  if (degree(a) > degree(b)) std::swap(a, b);
  auto nb = neighbors(a);
  auto it = std::lower_bound(nb.begin(), nb.end(), b);
  if (it == nb.end() || *it != b) return std::nullopt;
  return incident(a)[static_cast<std::size_t>(it - nb.begin())];
}

std::size_t Graph::min_degree() const {
  std::size_t best = n_ == 0 ? 0 : SIZE_MAX;
  for (Vertex v = 0; v < n_; ++v) best = std::min(best, degree(v));
  return best;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

bool Graph::is_regular(std::size_t d) const {
  for (Vertex v = 0; v < n_; ++v) {
    if (degree(v) != d) return false;
  }
  return true;
}

std::vector<char> vertex_mask(std::size_t n, std::span<const Vertex> vertices) {
  std::vector<char> mask(n, 0);
  for (Vertex v : vertices) mask[v] = 1;
  return mask;
}

Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  Subgraph sub;
  sub.to_parent.assign(vertices.begin(), vertices.end());
  std::sort(sub.to_parent.begin(), sub.to_parent.end());
  sub.to_parent.erase(std::unique(sub.to_parent.begin(), sub.to_parent.end()),
                      sub.to_parent.end());
  std::vector<Vertex> local(g.num_vertices(), UINT32_MAX);
  for (Vertex i = 0; i < sub.to_parent.size(); ++i) local[sub.to_parent[i]] = i;
  std::vector<Edge> edges;
  for (Vertex i = 0; i < sub.to_parent.size(); ++i) {
    for (Vertex w : g.neighbors(sub.to_parent[i])) {
      if (local[w] != UINT32_MAX && local[w] > i) edges.push_back({i, local[w]});
    }
  }
  sub.graph = Graph::from_edges(sub.to_parent.size(), edges);
  return sub;
}

Subgraph edge_subgraph(const Graph& g, std::span<const EdgeId> edges,
                       std::span<const Vertex> vertices) {
  std::vector<Vertex> verts(vertices.begin(), vertices.end());
  for (EdgeId e : edges) {
    verts.push_back(g.edge(e).u);
    verts.push_back(g.edge(e).v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::vector<Vertex> local(g.num_vertices(), UINT32_MAX);
  for (Vertex i = 0; i < verts.size(); ++i) local[verts[i]] = i;
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (EdgeId e : edges) out.push_back({local[g.edge(e).u], local[g.edge(e).v]});
  Subgraph sub;
  sub.graph = Graph::from_edges(verts.size(), out);
  sub.to_parent = std::move(verts);
  return sub;
}

Graph remove_edges(const Graph& g, const std::vector<char>& removed) {
  std::vector<Edge> kept;
  kept.reserve(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!removed[e]) kept.push_back(g.edge(e));
  }
  return Graph::from_edges(g.num_vertices(), kept);
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<std::vector<Vertex>> comps;
  std::vector<char> seen(g.num_vertices(), 0);
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (Vertex w : g.neighbors(comp[i])) {
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

}  // namespace pathdecomp
