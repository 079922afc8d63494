#include "pathdecomp/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "pathdecomp/errors.hpp"

namespace pathdecomp {
namespace {

constexpr double kTol = 1e-9;

Subgraph identity_subgraph(const Graph& g) {
  Subgraph s;
  s.graph = g;
  s.to_parent.resize(g.num_vertices());
  std::iota(s.to_parent.begin(), s.to_parent.end(), 0);
  return s;
}

Subgraph compose(const Subgraph& outer, const Subgraph& inner) {
  Subgraph s;
  s.graph = inner.graph;
  s.to_parent.reserve(inner.to_parent.size());
  for (Vertex v : inner.to_parent) s.to_parent.push_back(outer.to_parent[v]);
  return s;
}

// Subgraph of `g` on the kept vertices using the listed edges of `g`.
Subgraph restrict(const Graph& g, const std::vector<char>& keep, const std::vector<Edge>& edges) {
  std::vector<Vertex> verts;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (keep[v]) verts.push_back(v);
  }
  std::vector<Vertex> local(g.num_vertices(), UINT32_MAX);
  for (Vertex i = 0; i < verts.size(); ++i) local[verts[i]] = i;
  std::vector<Edge> out;
  for (const Edge& e : edges) {
    if (keep[e.u] && keep[e.v]) out.push_back({local[e.u], local[e.v]});
  }
  Subgraph s;
  s.graph = Graph::from_edges(verts.size(), out);
  s.to_parent = std::move(verts);
  return s;
}

double safe_log(double x) { return std::log(std::max(x, 2.0)); }

bool band_is_narrow(const DegreeBand& b, double c) {
  return static_cast<double>(b.high - b.low) <= c * safe_log(static_cast<double>(b.low));
}

void check_band(const Graph& g, double lo, double hi, const char* what) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const double deg = static_cast<double>(g.degree(v));
    if (deg < lo - kTol || deg > hi + kTol) {
      throw PreconditionError(std::string(what) + ": vertex " + std::to_string(v) +
                              " has degree " + std::to_string(g.degree(v)) +
                              " outside the required band");
    }
  }
}

// Keeps every degree inside [low, high]: peels low vertices and removes
// edges at over-full vertices, preferring partners with spare degree.
Subgraph band_trim(const Graph& g, std::size_t low, std::size_t high) {
  const std::size_t n = g.num_vertices();
  std::vector<char> alive_v(n, 1), alive_e(g.num_edges(), 1);
  std::vector<std::size_t> deg(n);
  for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
  auto kill_edge = [&](EdgeId e) {
    alive_e[e] = 0;
    --deg[g.edge(e).u];
    --deg[g.edge(e).v];
  };
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Vertex> queue;
    for (Vertex v = 0; v < n; ++v) {
      if (alive_v[v] && deg[v] < low) queue.push_back(v);
    }
    while (!queue.empty()) {
      Vertex v = queue.back();
      queue.pop_back();
      if (!alive_v[v]) continue;
      alive_v[v] = 0;
      changed = true;
      auto nb = g.neighbors(v);
      auto ids = g.incident(v);
      for (std::size_t k = 0; k < nb.size(); ++k) {
        if (!alive_e[ids[k]]) continue;
        kill_edge(ids[k]);
        if (alive_v[nb[k]] && deg[nb[k]] < low) queue.push_back(nb[k]);
      }
    }
    for (Vertex v = 0; v < n; ++v) {
      if (!alive_v[v] || deg[v] <= high) continue;
      auto nb = g.neighbors(v);
      auto ids = g.incident(v);
      std::vector<std::pair<std::size_t, std::size_t>> cand;
      for (std::size_t k = 0; k < nb.size(); ++k) {
        if (alive_e[ids[k]] && deg[nb[k]] > low) cand.push_back({deg[nb[k]], k});
      }
      std::sort(cand.rbegin(), cand.rend());
      for (auto [dw, k] : cand) {
        if (deg[v] <= high) break;
        if (deg[nb[k]] <= low) continue;
        kill_edge(ids[k]);
        changed = true;
      }
      if (deg[v] > high) {
        for (std::size_t k = 0; k < nb.size(); ++k) {
          if (alive_e[ids[k]]) kill_edge(ids[k]);
        }
        alive_v[v] = 0;
        changed = true;
      }
    }
  }
  std::vector<Edge> kept;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (alive_e[e]) kept.push_back(g.edge(e));
  }
  return restrict(g, alive_v, kept);
}

}  // namespace

DegreeBand degree_band(const Graph& g) {
  if (g.num_vertices() == 0) return {};
  return {g.min_degree(), g.max_degree()};
}

std::optional<Subgraph> min_degree_subgraph(const Graph& g, std::size_t t) {
  if (t < 1) throw PreconditionError("min_degree_subgraph needs t >= 1");
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> deg(n);
  std::vector<char> alive(n, 1);
  std::vector<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] < t) queue.push_back(v);
  }
  while (!queue.empty()) {
    Vertex v = queue.back();
    queue.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (Vertex w : g.neighbors(v)) {
      if (alive[w] && --deg[w] < t) queue.push_back(w);
    }
  }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < n; ++v) {
    if (alive[v]) keep.push_back(v);
  }
  if (keep.empty()) return std::nullopt;
  return induced_subgraph(g, keep);
}

Graph trim_high_edges(const Graph& g, std::size_t threshold, Rng& rng) {
  std::vector<EdgeId> order(g.num_edges());
  std::iota(order.begin(), order.end(), 0);
  shuffle_in_place(order, rng);
  std::vector<std::size_t> deg(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) deg[v] = g.degree(v);
  std::vector<char> removed(g.num_edges(), 0);
  for (EdgeId e : order) {
    const Edge& ed = g.edge(e);
    if (deg[ed.u] > threshold && deg[ed.v] > threshold) {
      removed[e] = 1;
      --deg[ed.u];
      --deg[ed.v];
    }
  }
  return remove_edges(g, removed);
}

RegularizeOutcome regularize_step(const Graph& g, double d, double gamma, double eps,
                                  std::uint64_t seed, const RegularizeParams& params) {
  if (gamma + kTol < 10 * eps) throw PreconditionError("regularize_step needs gamma >= 10 eps");
  if (eps > 0.01 + kTol || eps <= 0) {
    throw PreconditionError("regularize_step needs 0 < eps <= 1/100");
  }
  if (eps * d < 1) throw PreconditionError("regularize_step needs eps d >= 1");
  check_band(g, d, (1 + gamma) * d, "regularize_step");
  RegularizeOutcome out;
  if (eps * d < params.gate_constant * safe_log(d)) {
    out.warnings.push_back("eps d below the gate constant times log d");
  }
  Rng rng = make_rng(seed, 0x5e9);
  // Edges between two vertices of degree >= d+1 can go without breaking the
  // minimum degree, so the step assumes there are none.
  const Graph h = trim_high_edges(g, static_cast<std::size_t>(std::floor(d + kTol)), rng);
  const std::size_t n = h.num_vertices();

  std::vector<char> low(n, 0);
  std::vector<Vertex> low_list;
  for (Vertex v = 0; v < n; ++v) {
    if (static_cast<double>(h.degree(v)) <= (1 + gamma / 2) * d + kTol) {
      low[v] = 1;
      low_list.push_back(v);
    }
  }
  std::vector<EdgeId> cross;
  std::vector<std::size_t> cross_index(h.num_edges(), SIZE_MAX);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    if (low[h.edge(e).u] != low[h.edge(e).v]) {
      cross_index[e] = cross.size();
      cross.push_back(e);
    }
  }
  const std::size_t block_size = std::max<std::size_t>(1, static_cast<std::size_t>(d));
  const std::size_t blocks =
      std::max<std::size_t>(1, (low_list.size() + block_size - 1) / block_size);

  // Variables: deleted cross edges, then deleted low vertices (offset).
  struct Draw {
    std::vector<char> edge_del, vertex_del;
  };
  const std::size_t nc = cross.size();
  Sampler<Draw> sampler;
  sampler.draw = [&](Rng& r) {
    Draw dr{std::vector<char>(nc), std::vector<char>(n, 0)};
    for (auto& x : dr.edge_del) x = bernoulli(r, eps);
    for (Vertex v : low_list) dr.vertex_del[v] = bernoulli(r, eps);
    return dr;
  };
  sampler.resample = [&](Draw& dr, const std::vector<std::size_t>& vars, Rng& r) {
    for (auto x : vars) {
      if (x < nc) {
        dr.edge_del[x] = bernoulli(r, eps);
      } else {
        dr.vertex_del[x - nc] = bernoulli(r, eps);
      }
    }
  };
  const double lo = (1 - 5 * eps / 4) * d, hi = (1 - 7 * eps / 4) * (1 + gamma) * d;
  EventFamily<Draw> degree_events{"B_v", [&](const Draw& dr, std::vector<Violation>& outv) {
    for (Vertex v = 0; v < n; ++v) {
      if (dr.vertex_del[v]) continue;
      std::size_t deg = 0;
      auto nb = h.neighbors(v);
      auto ids = h.incident(v);
      for (std::size_t k = 0; k < nb.size(); ++k) {
        const std::size_t ci = cross_index[ids[k]];
        if (dr.vertex_del[nb[k]] || (ci != SIZE_MAX && dr.edge_del[ci])) continue;
        ++deg;
      }
      const double x = static_cast<double>(deg);
      if (x < lo - kTol || x > hi + kTol) {
        Violation viol{"B_v" + std::to_string(v), {}};
        for (std::size_t k = 0; k < nb.size(); ++k) {
          const std::size_t ci = cross_index[ids[k]];
          if (ci != SIZE_MAX) viol.scope.push_back(ci);
          if (low[nb[k]]) viol.scope.push_back(nc + nb[k]);
        }
        outv.push_back(std::move(viol));
      }
    }
  }};
  EventFamily<Draw> block_events{"B_i", [&](const Draw& dr, std::vector<Violation>& outv) {
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t from = b * low_list.size() / blocks;
      const std::size_t to = (b + 1) * low_list.size() / blocks;
      std::size_t kept = 0;
      for (std::size_t i = from; i < to; ++i) kept += !dr.vertex_del[low_list[i]];
      if (static_cast<double>(kept) < (1 - 2 * eps) * static_cast<double>(to - from) - kTol) {
        Violation viol{"B_block" + std::to_string(b), {}};
        for (std::size_t i = from; i < to; ++i) viol.scope.push_back(nc + low_list[i]);
        outv.push_back(std::move(viol));
      }
    }
  }};
  ResamplePolicy policy = params.policy;
  policy.seed = mix_seed(seed, 0x5e7);
  Certificate cert;
  Draw dr = require_good(sampler, {degree_events, block_events}, policy, "regularize_step", &cert);
  out.certificates.push_back(cert);

  std::vector<char> keep(n, 1);
  for (Vertex v = 0; v < n; ++v) keep[v] = !dr.vertex_del[v];
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const std::size_t ci = cross_index[e];
    if (ci != SIZE_MAX && dr.edge_del[ci]) continue;
    edges.push_back(h.edge(e));
  }
  out.graph = restrict(g, keep, edges);
  out.d_prime = static_cast<std::size_t>(std::ceil(lo - kTol));
  out.band = degree_band(out.graph.graph);
  out.steps = 1;
  return out;
}

RegularizeOutcome spanning_near_regular(const Graph& g, double d, double gamma,
                                        std::uint64_t seed, const RegularizeParams& params) {
  if (gamma > 0.01 + kTol || gamma < 0) {
    throw PreconditionError("spanning_near_regular needs 0 <= gamma <= 1/100");
  }
  check_band(g, d, (1 + gamma) * d, "spanning_near_regular");
  RegularizeOutcome out;
  out.graph = identity_subgraph(g);
  std::size_t rounds = 0;
  while (gamma * d / std::pow(2.0, static_cast<double>(rounds)) >
         params.band_log_constant * safe_log(d)) {
    ++rounds;
  }
  for (std::size_t r = 0; r < rounds; ++r) {
    const double eps = gamma / std::pow(2.0, static_cast<double>(r)) / 10;
    for (std::size_t s = 0; s < params.corollary_steps; ++s) {
      const DegreeBand b = degree_band(out.graph.graph);
      if (b.low == 0) break;
      const double dl = static_cast<double>(b.low);
      const double gc = static_cast<double>(b.high) / dl - 1;
      if (gc < 10 * eps || eps * dl < 1) break;
      auto step = regularize_step(out.graph.graph, dl, gc, eps,
                                  mix_seed(seed, r * 1000 + s), params);
      out.graph = compose(out.graph, step.graph);
      out.warnings.insert(out.warnings.end(), step.warnings.begin(), step.warnings.end());
      out.certificates.insert(out.certificates.end(), step.certificates.begin(),
                              step.certificates.end());
      ++out.steps;
    }
  }
  out.band = degree_band(out.graph.graph);
  out.d_prime = out.band.low;
  return out;
}

RegularizeOutcome near_regular_subgraph(const Graph& g, double d, double C, std::uint64_t seed,
                                        const RegularizeParams& params) {
  if (C < 1) throw PreconditionError("near_regular_subgraph needs C >= 1");
  check_band(g, d, C * d, "near_regular_subgraph");
  RegularizeOutcome out;
  out.graph = identity_subgraph(g);
  const std::size_t steps =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(params.steps_per_log * std::log(C))));
  Rng rng = make_rng(seed, 0x4e6);
  for (std::size_t s = 0; s < steps; ++s) {
    DegreeBand b = degree_band(out.graph.graph);
    if (b.low == 0 || band_is_narrow(b, params.band_log_constant)) break;
    Graph trimmed = trim_high_edges(out.graph.graph, b.low, rng);
    out.graph.graph = std::move(trimmed);
    b = degree_band(out.graph.graph);
    if (band_is_narrow(b, params.band_log_constant)) break;
    const double dl = static_cast<double>(b.low);
    const double gc = static_cast<double>(b.high) / dl - 1;
    const double eps = std::min({params.step_epsilon, 0.01, gc / 10});
    if (eps * dl < 1) {
      out.warnings.push_back("randomized step skipped: eps d below 1");
      break;
    }
    auto step = regularize_step(out.graph.graph, dl, gc, eps, mix_seed(seed, s), params);
    out.graph = compose(out.graph, step.graph);
    out.warnings.insert(out.warnings.end(), step.warnings.begin(), step.warnings.end());
    out.certificates.insert(out.certificates.end(), step.certificates.begin(),
                            step.certificates.end());
    ++out.steps;
  }
  DegreeBand b = degree_band(out.graph.graph);
  if (b.low > 0 && static_cast<double>(b.high) <= 1.01 * static_cast<double>(b.low)) {
    const double gc = static_cast<double>(b.high) / static_cast<double>(b.low) - 1;
    auto fin = spanning_near_regular(out.graph.graph, static_cast<double>(b.low), gc,
                                     mix_seed(seed, 0xf1), params);
    out.graph = compose(out.graph, fin.graph);
    out.steps += fin.steps;
  }
  out.band = degree_band(out.graph.graph);
  out.d_prime = out.band.low;
  if (!band_is_narrow(out.band, params.band_log_constant)) {
    out.warnings.push_back("degree band wider than the C' log d' target");
  }
  return out;
}

SliceResult regular_slices(const Graph& g, double d, double mu, double eps, std::uint64_t seed,
                           const SliceParams& params) {
  if (static_cast<double>(g.max_degree()) > d + kTol) {
    throw PreconditionError("regular_slices needs maximum degree at most d");
  }
  if (mu <= 0 || eps <= 0) throw PreconditionError("regular_slices needs mu, eps > 0");
  SliceResult res;
  const std::size_t n = g.num_vertices();
  const double beta = params.min_fraction > 0 ? params.min_fraction : eps / 3;
  const double stop_edges = eps * static_cast<double>(n) * d / 6;

  // Maximal family of edge-disjoint near-regular pieces.
  struct Piece {
    std::vector<EdgeId> edges;
    std::vector<Vertex> vertices;
    double beta_i = 0;
  };
  std::vector<Piece> pieces;
  std::vector<char> used(g.num_edges(), 0);
  for (std::size_t iter = 0; iter < params.max_pieces; ++iter) {
    std::size_t residual = 0;
    for (char u : used) residual += !u;
    if (static_cast<double>(residual) <= stop_edges) break;
    Graph rest = remove_edges(g, used);
    const std::size_t t = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(beta * d)));
    auto core = min_degree_subgraph(rest, t);
    if (!core) break;
    const DegreeBand cb = degree_band(core->graph);
    const double C = std::max(1.0, static_cast<double>(cb.high) / static_cast<double>(cb.low));
    RegularizeOutcome nr;
    try {
      nr = near_regular_subgraph(core->graph, static_cast<double>(cb.low), C,
                                 mix_seed(seed, 0x100 + iter), params.regularize);
    } catch (const BudgetExhausted& e) {
      res.warnings.push_back(std::string("piece search stopped: ") + e.what());
      break;
    }
    Subgraph piece = compose(*core, nr.graph);
    res.warnings.insert(res.warnings.end(), nr.warnings.begin(), nr.warnings.end());
    // The log-width band is loose at small degree; trim the piece to a
    // window around its median so that every allocation group has a common
    // target degree.
    std::size_t piece_low = nr.band.low;
    if (piece_low > 0) {
      std::vector<std::size_t> degs;
      for (Vertex v = 0; v < piece.graph.num_vertices(); ++v) {
        if (piece.graph.degree(v) > 0) degs.push_back(piece.graph.degree(v));
      }
      const auto mid = degs.begin() + static_cast<std::ptrdiff_t>(degs.size() / 2);
      std::nth_element(degs.begin(), mid, degs.end());
      const double med = static_cast<double>(*mid);
      const auto lo = static_cast<std::size_t>(std::ceil(med * (1 - params.tolerance / 5) - kTol));
      const auto hi = static_cast<std::size_t>(std::floor(med * (1 + params.tolerance / 5) + kTol));
      Subgraph trimmed = band_trim(piece.graph, lo, hi);
      // Peeling inside the bulk of a random piece cascades; fall back to
      // trimming high degrees only.
      if (2 * trimmed.graph.num_edges() < piece.graph.num_edges()) {
        trimmed = band_trim(piece.graph, std::min(lo, nr.band.low), hi);
      }
      piece = compose(piece, trimmed);
      piece_low = piece.graph.num_edges() ? degree_band(piece.graph).low : 0;
    }
    if (piece.graph.num_edges() == 0 || static_cast<double>(piece_low) < beta * d) {
      if (pieces.empty()) res.warnings.push_back("no near-regular piece above beta d");
      break;
    }
    Piece pc;
    pc.vertices = piece.to_parent;
    for (const Edge& e : piece.graph.edges()) {
      EdgeId id = *g.edge_id(piece.parent_of(e.u), piece.parent_of(e.v));
      pc.edges.push_back(id);
      used[id] = 1;
    }
    pc.beta_i = static_cast<double>(piece_low) / d;
    pieces.push_back(std::move(pc));
  }
  res.pieces = pieces.size();

  std::vector<std::vector<EdgeId>> groups;
  if (!pieces.empty()) {
    double beta_min = 1;
    for (const auto& pc : pieces) beta_min = std::min(beta_min, pc.beta_i);
    std::size_t k = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(1 / (2 * mu))));
    k = std::max<std::size_t>(k, static_cast<std::size_t>(std::ceil(1 / beta_min - kTol)));
    std::vector<std::size_t> r(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      r[i] = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(pieces[i].beta_i * k + kTol)));
    }
    res.allocation_sets = k;
    groups.assign(k, {});
    Rng rng = make_rng(seed, 0xa11);

    // Structured allocation: one interval of sets per piece, disjoint for
    // pieces sharing a vertex.
    std::vector<std::size_t> offset(pieces.size(), 0);
    bool structured = params.structured_allocation;
    if (structured) {
      std::vector<std::vector<std::size_t>> at(n);
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        for (Vertex v : pieces[i].vertices) at[v].push_back(i);
      }
      for (std::size_t i = 0; i < pieces.size() && structured; ++i) {
        std::set<std::size_t> blocked;
        for (Vertex v : pieces[i].vertices) {
          for (std::size_t j : at[v]) {
            if (j < i) {
              for (std::size_t t = 0; t < r[j]; ++t) blocked.insert(offset[j] + t);
            }
          }
        }
        bool placed = false;
        for (std::size_t o = 0; o + r[i] <= k && !placed; ++o) {
          bool free = true;
          for (std::size_t t = 0; t < r[i] && free; ++t) free = !blocked.count(o + t);
          if (free) {
            offset[i] = o;
            placed = true;
          }
        }
        structured = placed;
      }
    }
    res.structured = structured;
    if (structured) {
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        for (EdgeId e : pieces[i].edges) {
          groups[offset[i] + uniform_below(rng, r[i])].push_back(e);
        }
      }
    } else {
      // Random allocation: vertex v takes r_i of the k sets for each piece
      // containing it, disjoint across pieces.
      std::vector<std::vector<std::pair<std::size_t, std::vector<std::size_t>>>> sets(n);
      std::vector<std::vector<std::size_t>> at(n);
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        for (Vertex v : pieces[i].vertices) at[v].push_back(i);
      }
      for (Vertex v = 0; v < n; ++v) {
        std::vector<std::size_t> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        shuffle_in_place(perm, rng);
        std::size_t pos = 0;
        for (std::size_t i : at[v]) {
          std::vector<std::size_t> mine(perm.begin() + pos, perm.begin() + std::min(k, pos + r[i]));
          std::sort(mine.begin(), mine.end());
          pos = std::min(k, pos + r[i]);
          sets[v].push_back({i, std::move(mine)});
        }
      }
      auto find = [&](Vertex v, std::size_t i) -> const std::vector<std::size_t>& {
        for (const auto& [pi, s] : sets[v]) {
          if (pi == i) return s;
        }
        throw Error("allocation lookup failed");
      };
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        const double target = pieces[i].beta_i * pieces[i].beta_i * static_cast<double>(k);
        for (EdgeId e : pieces[i].edges) {
          const auto& a = find(g.edge(e).u, i);
          const auto& b = find(g.edge(e).v, i);
          std::vector<std::size_t> common;
          std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
          if (common.empty()) continue;
          if (std::abs(static_cast<double>(common.size()) - target) > params.keep_band * target + 1) {
            continue;
          }
          groups[common[uniform_below(rng, common.size())]].push_back(e);
        }
      }
    }
  }

  // Trim each group to an even target degree band.
  for (const auto& grp : groups) {
    if (grp.empty()) continue;
    Subgraph sg = edge_subgraph(g, grp);
    std::vector<std::size_t> degs;
    for (Vertex v = 0; v < sg.graph.num_vertices(); ++v) degs.push_back(sg.graph.degree(v));
    std::nth_element(degs.begin(), degs.begin() + degs.size() / 2, degs.end());
    const std::size_t median = degs[degs.size() / 2];
    const std::size_t dj = (median / 2) * 2;
    if (dj == 0) continue;
    const double eta = params.tolerance;
    DegreeBand band{static_cast<std::size_t>(std::ceil((1 - eta) * static_cast<double>(dj) - kTol)),
                    static_cast<std::size_t>(std::floor((1 + eta) * static_cast<double>(dj) + kTol))};
    band.low = std::max<std::size_t>(band.low, 1);
    Subgraph trimmed = compose(sg, band_trim(sg.graph, band.low, band.high));
    if (trimmed.graph.num_edges() == 0) continue;
    res.slices.push_back({std::move(trimmed), dj, eta, band});
  }
  std::sort(res.slices.begin(), res.slices.end(), [](const RegularSlice& a, const RegularSlice& b) {
    return a.subgraph.graph.num_edges() > b.subgraph.graph.num_edges();
  });
  std::vector<RegularSlice> kept;
  double sum = 0;
  for (auto& s : res.slices) {
    if (sum + static_cast<double>(s.d) <= (1 + eps) * d + kTol) {
      sum += static_cast<double>(s.d);
      kept.push_back(std::move(s));
    } else {
      res.warnings.push_back("slice dropped to respect the degree sum bound");
    }
  }
  res.slices = std::move(kept);
  std::size_t covered = 0;
  for (const auto& s : res.slices) covered += s.subgraph.graph.num_edges();
  res.uncovered_edges = g.num_edges() - covered;
  return res;
}

void to_json(nlohmann::json& j, const DegreeBand& b) { j = {{"low", b.low}, {"high", b.high}}; }

nlohmann::json slice_manifest(const SliceResult& r) {
  auto arr = nlohmann::json::array();
  for (const auto& s : r.slices) {
    arr.push_back({{"d", s.d},
                   {"eta", s.eta},
                   {"band", s.band},
                   {"vertices", s.subgraph.graph.num_vertices()},
                   {"edges", s.subgraph.graph.num_edges()}});
  }
  return {{"slices", arr},
          {"uncovered_edges", r.uncovered_edges},
          {"pieces", r.pieces},
          {"allocation_sets", r.allocation_sets},
          {"structured_allocation", r.structured},
          {"warnings", r.warnings}};
}

}  // namespace pathdecomp
