#include "pathdecomp/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <set>

#include "pathdecomp/errors.hpp"

namespace pathdecomp {
namespace {

constexpr double kTol = 1e-9;
constexpr std::uint32_t kUnset = UINT32_MAX;

std::vector<Vertex> bfs_order(const Graph& g, Vertex s, std::vector<std::uint32_t>* dist = nullptr) {
  std::vector<std::uint32_t> local;
  auto& d = dist ? *dist : local;
  d.assign(g.num_vertices(), kUnset);
  std::vector<Vertex> order{s};
  d[s] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Vertex w : g.neighbors(order[i])) {
      if (d[w] == kUnset) {
        d[w] = d[order[i]] + 1;
        order.push_back(w);
      }
    }
  }
  return order;
}

CutWitness witness_from_side(const Graph& g, const std::vector<char>& in1) {
  CutWitness w;
  for (Vertex v = 0; v < g.num_vertices(); ++v) (in1[v] ? w.side1 : w.side2).push_back(v);
  for (const Edge& e : g.edges()) {
    if (in1[e.u] != in1[e.v]) w.cut.push_back(e);
  }
  return w;
}

// Unit-capacity augmenting paths between two vertex sets, stopping once the
// flow exceeds `cap`. Returns the flow and the residual-reachable source side.
std::size_t bounded_min_cut(const Graph& g, const std::vector<char>& src, const std::vector<char>& snk,
                            std::size_t cap, std::vector<char>& reach) {
  const std::size_t n = g.num_vertices();
  // flow[e] in {-1, 0, 1}: direction of flow on edge e relative to (u, v).
  std::vector<int> flow(g.num_edges(), 0);
  std::size_t value = 0;
  std::vector<std::pair<Vertex, EdgeId>> parent(n);
  std::vector<Vertex> queue;
  while (true) {
    reach.assign(n, 0);
    queue.clear();
    for (Vertex v = 0; v < n; ++v) {
      if (src[v]) {
        reach[v] = 1;
        queue.push_back(v);
      }
    }
    Vertex hit = kUnset;
    for (std::size_t i = 0; i < queue.size() && hit == kUnset; ++i) {
      const Vertex x = queue[i];
      auto nb = g.neighbors(x);
      auto ids = g.incident(x);
      for (std::size_t k = 0; k < nb.size(); ++k) {
        const Vertex y = nb[k];
        if (reach[y]) continue;
        const EdgeId e = ids[k];
        const int dir = g.edge(e).u == x ? 1 : -1;
        if (flow[e] == dir) continue;  // saturated in this direction
        reach[y] = 1;
        parent[y] = {x, e};
        queue.push_back(y);
        if (snk[y]) {
          hit = y;
          break;
        }
      }
    }
    if (hit == kUnset) return value;
    for (Vertex y = hit; !src[y];) {
      auto [x, e] = parent[y];
      flow[e] += g.edge(e).u == x ? 1 : -1;
      y = x;
    }
    if (++value > cap) return value;
  }
}

// Greedy edge-disjoint U-V paths of length 1..max_len on unused edges.
std::vector<Path> greedy_paths(const Graph& g, const std::vector<char>& inU, const std::vector<char>& inV,
                               std::size_t max_len, std::size_t limit) {
  const std::size_t n = g.num_vertices();
  std::vector<Path> out;
  for (Vertex v = 0; v < n && out.size() < limit; ++v) {
    if (inU[v] && inV[v]) out.push_back(Path{{v}});
  }
  std::vector<char> used(g.num_edges(), 0);
  std::vector<std::uint32_t> dist(n);
  std::vector<std::pair<Vertex, EdgeId>> parent(n);
  std::vector<Vertex> queue;
  while (out.size() < limit && max_len > 0) {
    std::fill(dist.begin(), dist.end(), kUnset);
    queue.clear();
    for (Vertex v = 0; v < n; ++v) {
      if (inU[v]) {
        dist[v] = 0;
        queue.push_back(v);
      }
    }
    Vertex end = kUnset, from = kUnset;
    EdgeId last = 0;
    for (std::size_t i = 0; i < queue.size() && end == kUnset; ++i) {
      const Vertex x = queue[i];
      if (dist[x] >= max_len) break;
      auto nb = g.neighbors(x);
      auto ids = g.incident(x);
      for (std::size_t k = 0; k < nb.size(); ++k) {
        if (used[ids[k]]) continue;
        const Vertex y = nb[k];
        if (inV[y]) {
          end = y;
          from = x;
          last = ids[k];
          break;
        }
        if (dist[y] == kUnset) {
          dist[y] = dist[x] + 1;
          parent[y] = {x, ids[k]};
          queue.push_back(y);
        }
      }
    }
    if (end == kUnset) break;
    Path p;
    p.vertices.push_back(end);
    used[last] = 1;
    for (Vertex y = from;; ) {
      p.vertices.push_back(y);
      if (dist[y] == 0) break;
      used[parent[y].second] = 1;
      y = parent[y].first;
    }
    std::reverse(p.vertices.begin(), p.vertices.end());
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<char> mask_of(std::size_t n, std::span<const Vertex> s) {
  std::vector<char> m(n, 0);
  for (Vertex v : s) {
    if (v >= n) throw PreconditionError("vertex out of range");
    m[v] = 1;
  }
  return m;
}

}  // namespace

double ConnectivitySpec::min_side(std::size_t n) const {
  return zeta * (size_by_n ? static_cast<double>(n) : d);
}

std::size_t ConnectivitySpec::cut_budget() const {
  return static_cast<std::size_t>(std::floor(lambda * d * d + kTol));
}

bool witness_is_valid(const Graph& g, const ConnectivitySpec& spec, const CutWitness& w) {
  const std::size_t n = g.num_vertices();
  if (w.side1.size() + w.side2.size() != n) return false;
  std::vector<int> side(n, -1);
  for (Vertex v : w.side1) {
    if (v >= n || side[v] != -1) return false;
    side[v] = 0;
  }
  for (Vertex v : w.side2) {
    if (v >= n || side[v] != -1) return false;
    side[v] = 1;
  }
  const double need = spec.min_side(n);
  if (static_cast<double>(w.side1.size()) < need - kTol ||
      static_cast<double>(w.side2.size()) < need - kTol) {
    return false;
  }
  if (w.cut.size() > spec.cut_budget()) return false;
  std::set<Edge> cut(w.cut.begin(), w.cut.end());
  for (const Edge& e : g.edges()) {
    if (side[e.u] != side[e.v] && !cut.count(e)) return false;
  }
  return true;
}

ConnectivityCertificate check_connectivity(const Graph& g, const ConnectivitySpec& spec,
                                           const ConnectivityParams& params) {
  const std::size_t n = g.num_vertices();
  ConnectivityCertificate cert;
  const double need_d = spec.min_side(n);
  if (static_cast<double>(n) < 2 * need_d - kTol) {
    cert.method = "trivial";
    return cert;
  }
  const auto need = static_cast<std::size_t>(std::max(1.0, std::ceil(need_d - kTol)));
  const std::size_t budget = spec.cut_budget();
  auto accept = [&](const std::vector<char>& in1, const char* how) {
    auto w = witness_from_side(g, in1);
    if (w.side1.size() < need || w.side2.size() < need || w.cut.size() > budget) return false;
    cert.connected = false;
    cert.witness = std::move(w);
    cert.method = how;
    return true;
  };

  // Components: a subset of components with total size in [need, n - need].
  auto comps = connected_components(g);
  if (comps.size() > 1) {
    std::vector<std::uint32_t> from(n + 1, kUnset);
    from[0] = static_cast<std::uint32_t>(comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c) {
      for (std::size_t s = n; s-- > 0;) {
        if (from[s] != kUnset && s + comps[c].size() <= n && from[s + comps[c].size()] == kUnset) {
          from[s + comps[c].size()] = static_cast<std::uint32_t>(c);
        }
      }
    }
    for (std::size_t s = need; s + need <= n; ++s) {
      if (from[s] == kUnset) continue;
      std::vector<char> in1(n, 0);
      for (std::size_t t = s; t > 0;) {
        const auto c = from[t];
        for (Vertex v : comps[c]) in1[v] = 1;
        t -= comps[c].size();
      }
      if (accept(in1, "components")) return cert;
      break;
    }
  }

  // Seeds: vertex 0, then repeatedly the vertex farthest from the seeds so far.
  auto pick_seeds = [&](std::size_t count) {
    std::vector<Vertex> seeds;
    std::vector<std::uint32_t> best(n, kUnset), dist;
    Vertex next = 0;
    while (seeds.size() < std::min(count, n)) {
      seeds.push_back(next);
      bfs_order(g, next, &dist);
      for (Vertex v = 0; v < n; ++v) best[v] = std::min(best[v], dist[v]);
      // Unreached vertices (other components) compare as farthest.
      Vertex far = kUnset;
      for (Vertex v = 0; v < n; ++v) {
        if (best[v] != 0 && (far == kUnset || best[v] > best[far])) far = v;
      }
      if (far == kUnset) break;
      next = far;
    }
    return seeds;
  };

  // Thin BFS layers: the prefix cut between consecutive layers.
  for (Vertex s : pick_seeds(params.layer_seeds)) {
    std::vector<std::uint32_t> dist;
    auto order = bfs_order(g, s, &dist);
    std::vector<char> in1(n, 0);
    std::size_t i = 0;
    while (i < order.size()) {
      const auto layer = dist[order[i]];
      while (i < order.size() && dist[order[i]] == layer) in1[order[i++]] = 1;
      if (i < need || n - i < need) continue;
      std::size_t cut = 0;
      for (const Edge& e : g.edges()) cut += in1[e.u] != in1[e.v];
      if (cut <= budget && accept(in1, "layers")) return cert;
    }
  }

  if (n > params.flow_vertex_cap) {
    cert.method = "none";
    return cert;
  }
  // Min cuts between BFS balls of `need` vertices around seed pairs.
  std::vector<Vertex> seeds;
  if (n < params.all_pairs_below) {
    seeds.resize(n);
    std::iota(seeds.begin(), seeds.end(), 0);
  } else {
    seeds = pick_seeds(params.flow_seeds);
  }
  std::vector<std::vector<char>> balls;
  for (Vertex s : seeds) {
    auto order = bfs_order(g, s);
    std::vector<char> ball(n, 0);
    for (std::size_t k = 0; k < std::min(need, order.size()); ++k) ball[order[k]] = 1;
    balls.push_back(std::move(ball));
  }
  std::vector<char> reach;
  for (std::size_t a = 0; a < seeds.size(); ++a) {
    for (std::size_t b = a + 1; b < seeds.size(); ++b) {
      bool overlap = false;
      for (Vertex v = 0; v < n && !overlap; ++v) overlap = balls[a][v] && balls[b][v];
      if (overlap) continue;
      ++cert.flows;
      const std::size_t value = bounded_min_cut(g, balls[a], balls[b], budget, reach);
      if (value <= budget && accept(reach, "flow")) return cert;
    }
  }
  cert.method = "flow";
  return cert;
}

ConnectedPartition partition_connected(const Graph& g, double beta, double d, double K,
                                       double lambda, const ConnectivityParams& params) {
  if (beta > 0.25 + kTol) throw PreconditionError("partition_connected needs beta <= 1/4");
  std::vector<Vertex> all(g.num_vertices());
  std::iota(all.begin(), all.end(), 0);
  if (!check_dense_spot(g, all, {beta, d, K}).ok) {
    throw PreconditionError("partition_connected needs a (beta, d, K)-dense graph");
  }
  const ConnectivitySpec spec{std::pow(lambda, 0.25), lambda, d, false};
  ConnectedPartition out;
  std::vector<char> deleted(g.num_edges(), 0);
  std::vector<std::vector<Vertex>> todo{all};
  while (!todo.empty()) {
    auto piece = std::move(todo.back());
    todo.pop_back();
    Subgraph sub = induced_subgraph(g, piece);
    std::vector<char> drop(sub.graph.num_edges(), 0);
    for (EdgeId e = 0; e < sub.graph.num_edges(); ++e) {
      const Edge& le = sub.graph.edge(e);
      drop[e] = deleted[*g.edge_id(sub.parent_of(le.u), sub.parent_of(le.v))];
    }
    Graph cur = remove_edges(sub.graph, drop);
    auto cert = check_connectivity(cur, spec, params);
    if (cert.connected) {
      std::sort(piece.begin(), piece.end());
      out.pieces.push_back(std::move(piece));
      continue;
    }
    for (const Edge& e : cert.witness->cut) {
      deleted[*g.edge_id(sub.parent_of(e.u), sub.parent_of(e.v))] = 1;
    }
    std::vector<Vertex> p1, p2;
    for (Vertex v : cert.witness->side1) p1.push_back(sub.parent_of(v));
    for (Vertex v : cert.witness->side2) p2.push_back(sub.parent_of(v));
    todo.push_back(std::move(p2));
    todo.push_back(std::move(p1));
  }
  std::sort(out.pieces.begin(), out.pieces.end());

  std::vector<std::size_t> del_deg(g.num_vertices(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!deleted[e]) continue;
    out.deleted.push_back(g.edge(e));
    ++del_deg[g.edge(e).u];
    ++del_deg[g.edge(e).v];
  }
  const double junk_cut = std::pow(lambda, 0.2) * d;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (static_cast<double>(del_deg[v]) > junk_cut + kTol) out.junk.push_back(v);
  }
  out.audit.junk_small = static_cast<double>(out.junk.size()) <= std::sqrt(lambda) * d + kTol;
  out.audit.few_pieces = static_cast<double>(out.pieces.size()) <= 2 * K + kTol;
  const auto junk = vertex_mask(g.num_vertices(), out.junk);
  std::vector<std::uint32_t> piece_of(g.num_vertices(), kUnset);
  for (std::size_t i = 0; i < out.pieces.size(); ++i) {
    for (Vertex v : out.pieces[i]) piece_of[v] = static_cast<std::uint32_t>(i);
    std::vector<Vertex> core;
    for (Vertex v : out.pieces[i]) {
      if (!junk[v]) core.push_back(v);
    }
    if (!core.empty()) {
      Subgraph cs = induced_subgraph(g, core);
      std::vector<char> drop(cs.graph.num_edges(), 0);
      for (EdgeId e = 0; e < cs.graph.num_edges(); ++e) {
        const Edge& le = cs.graph.edge(e);
        drop[e] = deleted[*g.edge_id(cs.parent_of(le.u), cs.parent_of(le.v))];
      }
      Graph cg = remove_edges(cs.graph, drop);
      std::vector<Vertex> local(cg.num_vertices());
      std::iota(local.begin(), local.end(), 0);
      if (!check_dense_spot(cg, local, {2 * beta, d, K}).ok) out.audit.pieces_dense = false;
    }
  }
  std::size_t inside = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (piece_of[ed.u] == kUnset || piece_of[ed.v] == kUnset) out.audit.edges_conserved = false;
    if (!deleted[e] && piece_of[ed.u] != piece_of[ed.v]) out.audit.edges_conserved = false;
    inside += !deleted[e];
  }
  if (inside + out.deleted.size() != g.num_edges()) out.audit.edges_conserved = false;
  return out;
}

Path short_path(const Graph& g, std::span<const Vertex> U, std::span<const Vertex> V,
                const ConnectivitySpec& spec, double K) {
  const std::size_t n = g.num_vertices();
  const double need = spec.min_side(n);
  if (static_cast<double>(U.size()) < need - kTol || static_cast<double>(V.size()) < need - kTol) {
    throw PreconditionError("short_path: U and V must have at least the minimum side size");
  }
  if (static_cast<double>(n) > K * spec.d + kTol) throw PreconditionError("short_path needs |V| <= K d");
  const auto inU = mask_of(n, U), inV = mask_of(n, V);
  for (Vertex v : U) {
    if (inV[v]) return Path{{v}};
  }
  const auto bound = static_cast<std::size_t>(std::floor(8 * K / spec.lambda + kTol));
  auto paths = greedy_paths(g, inU, inV, bound, 1);
  if (paths.empty()) {
    throw Error("short_path: no U-V path within 8K/lambda; the connectivity certificate is inconsistent");
  }
  return paths.front();
}

PathFamily edge_disjoint_short_paths(const Graph& g, std::span<const Vertex> U,
                                     std::span<const Vertex> V, const ConnectivitySpec& spec,
                                     double K, std::size_t limit) {
  const std::size_t n = g.num_vertices();
  PathFamily fam;
  fam.max_length = static_cast<std::size_t>(std::floor(16 * K / spec.lambda + kTol));
  fam.target = spec.lambda * spec.lambda * spec.d * spec.d / (32 * K);
  fam.paths = greedy_paths(g, mask_of(n, U), mask_of(n, V), fam.max_length, limit);
  return fam;
}

ConnectorSet connector_set(const Graph& g, const ConnectivitySpec& spec, double K, double q,
                           double eps, std::uint64_t seed, const ConnectorParams& params) {
  const std::size_t n = g.num_vertices();
  if (q <= 0 || eps <= 0) throw PreconditionError("connector_set needs q, eps > 0");
  if (static_cast<double>(g.max_degree()) > spec.d + kTol) {
    throw PreconditionError("connector_set needs maximum degree at most d");
  }
  if (static_cast<double>(n) > K * spec.d + kTol) throw PreconditionError("connector_set needs |V| <= K d");
  if (n > 0 && static_cast<double>(g.min_degree()) < spec.min_side(n) - kTol) {
    throw PreconditionError("connector_set needs minimum degree at least zeta d");
  }
  ConnectorSet out;
  out.target = params.min_paths ? params.min_paths
                                : std::max<std::size_t>(1, static_cast<std::size_t>(q * spec.d * spec.d));
  const auto max_len = static_cast<std::size_t>(std::floor(1 / q + kTol));

  // Pair sample: all pairs when few, otherwise seeded distinct pairs.
  std::vector<std::pair<Vertex, Vertex>> pairs;
  if (n >= 2 && n * (n - 1) / 2 <= params.sample_pairs) {
    for (Vertex v = 0; v < n; ++v) {
      for (Vertex w = v + 1; w < n; ++w) pairs.push_back({v, w});
    }
  } else if (n >= 2) {
    Rng rng = make_rng(seed, 0xc0);
    std::set<std::pair<Vertex, Vertex>> seen;
    while (pairs.size() < params.sample_pairs) {
      auto v = static_cast<Vertex>(uniform_below(rng, n)), w = static_cast<Vertex>(uniform_below(rng, n));
      if (v == w) continue;
      if (seen.insert({std::min(v, w), std::max(v, w)}).second) pairs.push_back({std::min(v, w), std::max(v, w)});
    }
  }

  using State = std::vector<char>;
  Sampler<State> sampler;
  sampler.draw = [&](Rng& rng) {
    State in(n);
    for (auto& x : in) x = bernoulli(rng, eps);
    return in;
  };
  sampler.resample = [&](State& in, const std::vector<std::size_t>& vars, Rng& rng) {
    for (auto v : vars) in[v] = bernoulli(rng, eps);
  };
  const double size_cap = 2 * eps * static_cast<double>(n), deg_cap = 2 * eps * spec.d;
  EventFamily<State> sizes{"size", [&](const State& in, std::vector<Violation>& out_v) {
    std::size_t c = 0;
    for (auto x : in) c += x;
    if (static_cast<double>(c) > size_cap + kTol) {
      Violation viol{"W_size", {}};
      for (Vertex v = 0; v < n; ++v) {
        if (in[v]) viol.scope.push_back(v);
      }
      out_v.push_back(std::move(viol));
    }
    for (Vertex v = 0; v < n; ++v) {
      std::size_t k = 0;
      for (Vertex w : g.neighbors(v)) k += in[w];
      if (static_cast<double>(k) > deg_cap + kTol) {
        Violation viol{"W_deg" + std::to_string(v), {}};
        for (Vertex w : g.neighbors(v)) {
          if (in[w]) viol.scope.push_back(w);
        }
        out_v.push_back(std::move(viol));
      }
    }
  }};
  std::vector<PairRecord> records;
  auto certify = [&](const State& in, std::vector<Violation>* out_v) {
    std::vector<Vertex> W;
    for (Vertex v = 0; v < n; ++v) {
      if (in[v]) W.push_back(v);
    }
    Subgraph sub = induced_subgraph(g, W);
    std::vector<std::uint32_t> local(n, kUnset);
    for (Vertex i = 0; i < W.size(); ++i) local[W[i]] = i;
    records.clear();
    for (auto [v, w] : pairs) {
      std::vector<char> inU(W.size(), 0), inV(W.size(), 0);
      for (Vertex x : g.neighbors(v)) {
        if (local[x] != kUnset) inU[local[x]] = 1;
      }
      for (Vertex x : g.neighbors(w)) {
        if (local[x] != kUnset) inV[local[x]] = 1;
      }
      const auto found = greedy_paths(sub.graph, inU, inV, max_len, out.target).size();
      records.push_back({v, w, found});
      if (found < out.target && out_v) {
        Violation viol{"pair" + std::to_string(v) + "_" + std::to_string(w), {}};
        for (Vertex x : g.neighbors(v)) viol.scope.push_back(x);
        for (Vertex x : g.neighbors(w)) viol.scope.push_back(x);
        out_v->push_back(std::move(viol));
      }
    }
  };
  EventFamily<State> pair_events{"pairs", [&](const State& in, std::vector<Violation>& out_v) {
    certify(in, &out_v);
  }};
  ResamplePolicy pol = params.policy;
  pol.seed = seed;
  auto res = run_until_good(sampler, {sizes, pair_events}, pol);
  out.engine = res.certificate;
  for (Vertex v = 0; v < n; ++v) {
    if (res.structure[v]) out.W.push_back(v);
  }
  certify(res.structure, nullptr);
  out.sample = records;
  out.certified = res.ok();
  if (!res.ok()) {
    throw BudgetExhausted("connector_set: " + std::to_string(res.certificate.surviving.size()) +
                          " bad events survive after " + std::to_string(res.certificate.rounds) +
                          " rounds");
  }
  return out;
}

void to_json(nlohmann::json& j, const CutWitness& w) {
  auto cut = nlohmann::json::array();
  for (const Edge& e : w.cut) cut.push_back({e.u, e.v});
  j = {{"cut", cut}, {"side1", w.side1}, {"side2", w.side2}};
}

void to_json(nlohmann::json& j, const ConnectivityCertificate& c) {
  j = {{"connected", c.connected}, {"method", c.method}, {"flows", c.flows}};
  if (c.witness) j["witness"] = *c.witness;
}

void to_json(nlohmann::json& j, const ConnectedPartition& p) {
  auto del = nlohmann::json::array();
  for (const Edge& e : p.deleted) del.push_back({e.u, e.v});
  j = {{"pieces", p.pieces},
       {"junk", p.junk},
       {"deleted", del},
       {"audit",
        {{"junk_small", p.audit.junk_small},
         {"pieces_dense", p.audit.pieces_dense},
         {"few_pieces", p.audit.few_pieces},
         {"edges_conserved", p.audit.edges_conserved}}}};
}

void to_json(nlohmann::json& j, const ConnectorSet& c) {
  auto sample = nlohmann::json::array();
  for (const auto& r : c.sample) sample.push_back({{"v", r.v}, {"w", r.w}, {"paths", r.paths}});
  j = {{"W", c.W}, {"target", c.target}, {"certified", c.certified}, {"sample", sample},
       {"engine", c.engine}};
}

}  // namespace pathdecomp
