#include "pathdecomp/forests.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "pathdecomp/errors.hpp"

namespace pathdecomp {
namespace {

constexpr double kTol = 1e-9;
constexpr Vertex kNone = UINT32_MAX;

// Linear forest under construction: at most two neighbours per vertex.
struct ForestBuilder {
  std::vector<Vertex> a, b;
  std::vector<char> member;

  explicit ForestBuilder(std::size_t n) : a(n, kNone), b(n, kNone), member(n, 0) {}

  std::size_t degree(Vertex v) const { return (a[v] != kNone) + (b[v] != kNone); }

  void link(Vertex u, Vertex v) {
    member[u] = member[v] = 1;
    (a[u] == kNone ? a[u] : b[u]) = v;
    (a[v] == kNone ? a[v] : b[v]) = u;
  }

  void add_path(const Path& p) {
    for (Vertex v : p.vertices) member[v] = 1;
    for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) link(p.vertices[i], p.vertices[i + 1]);
  }

  // Walks from an end; paths start at their smaller end.
  PathForest paths() const {
    std::vector<char> seen(a.size(), 0);
    std::vector<Path> out;
    for (Vertex v = 0; v < a.size(); ++v) {
      if (!member[v] || seen[v] || degree(v) > 1) continue;
      Path p;
      Vertex prev = kNone, cur = v;
      while (cur != kNone) {
        seen[cur] = 1;
        p.vertices.push_back(cur);
        Vertex next = a[cur] != prev ? a[cur] : b[cur];
        if (next == prev) next = kNone;
        prev = cur;
        cur = next;
      }
      out.push_back(std::move(p));
    }
    return PathForest(std::move(out));
  }
};

Subgraph induced_without(const Graph& g, std::span<const Vertex> removed) {
  auto mask = vertex_mask(g.num_vertices(), removed);
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!mask[v]) keep.push_back(v);
  }
  return induced_subgraph(g, keep);
}

Subgraph compose(const Subgraph& outer, const Subgraph& inner) {
  Subgraph s;
  s.graph = inner.graph;
  for (Vertex v : inner.to_parent) s.to_parent.push_back(outer.to_parent[v]);
  return s;
}

PathForest lift_forest(const Subgraph& s, const PathForest& f) {
  std::vector<Path> out;
  for (const auto& p : f.paths()) out.push_back(lift_path(s, p));
  return PathForest(std::move(out));
}

}  // namespace

std::vector<char> bipartition(const Graph& h) {
  const std::size_t n = h.num_vertices();
  std::vector<char> side(n, -1);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    queue.assign(1, s);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Vertex v = queue[i];
      for (Vertex w : h.neighbors(v)) {
        if (side[w] == -1) {
          side[w] = static_cast<char>(1 - side[v]);
          queue.push_back(w);
        } else if (side[w] == side[v]) {
          throw PreconditionError("graph is not bipartite");
        }
      }
    }
  }
  return side;
}

std::vector<std::size_t> bipartite_edge_coloring(const Graph& h) {
  bipartition(h);
  const std::size_t n = h.num_vertices(), D = h.max_degree();
  constexpr std::uint32_t kFree = UINT32_MAX;
  std::vector<std::uint32_t> at(n * D, kFree);
  std::vector<std::size_t> color(h.num_edges(), 0);
  auto slot = [&](Vertex v, std::size_t c) -> std::uint32_t& { return at[v * D + c]; };
  std::vector<EdgeId> chain;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const Vertex u = h.edge(e).u, v = h.edge(e).v;
    std::size_t common = D, fu = D, fv = D;
    for (std::size_t c = 0; c < D; ++c) {
      const bool freeu = slot(u, c) == kFree, freev = slot(v, c) == kFree;
      if (freeu && freev) {
        common = c;
        break;
      }
      if (freeu && fu == D) fu = c;
      if (freev && fv == D) fv = c;
    }
    std::size_t c = common;
    if (c == D) {
      // Swap colours fu/fv on the alternating chain from v; it cannot reach u.
      chain.clear();
      Vertex x = v;
      std::size_t cc = fu;
      while (slot(x, cc) != kFree) {
        const EdgeId f = slot(x, cc);
        chain.push_back(f);
        x = h.edge(f).other(x);
        cc = cc == fu ? fv : fu;
      }
      for (EdgeId f : chain) {
        slot(h.edge(f).u, color[f]) = kFree;
        slot(h.edge(f).v, color[f]) = kFree;
      }
      for (EdgeId f : chain) {
        color[f] = color[f] == fu ? fv : fu;
        slot(h.edge(f).u, color[f]) = f;
        slot(h.edge(f).v, color[f]) = f;
      }
      c = fu;
    }
    color[e] = c;
    slot(u, c) = e;
    slot(v, c) = e;
  }
  return color;
}

MatchingFamily bipartite_matchings(const Graph& h, double d, double n, double gamma) {
  if (gamma * d < 1 - kTol) throw PreconditionError("bipartite_matchings needs gamma d >= 1");
  const auto side = bipartition(h);
  const auto left = static_cast<double>(std::count(side.begin(), side.end(), 0));
  const auto right = static_cast<double>(side.size()) - left;
  for (double sz : {left, right}) {
    if (sz < (1 - gamma) * n - kTol || sz > (1 + gamma) * n + kTol) {
      throw PreconditionError("bipartite_matchings: class size outside (1 +- gamma) n");
    }
  }
  for (Vertex v = 0; v < h.num_vertices(); ++v) {
    const auto deg = static_cast<double>(h.degree(v));
    if (deg < (1 - gamma) * d - kTol || deg > (1 + gamma) * d + kTol) {
      throw PreconditionError("bipartite_matchings: degree outside (1 +- gamma) d");
    }
  }
  const auto color = bipartite_edge_coloring(h);
  MatchingFamily fam;
  fam.colors = h.max_degree();
  fam.matchings.assign(fam.colors, {});
  for (EdgeId e = 0; e < h.num_edges(); ++e) fam.matchings[color[e]].push_back(e);
  std::stable_sort(fam.matchings.begin(), fam.matchings.end(),
                   [](const auto& x, const auto& y) { return x.size() > y.size(); });
  while (!fam.matchings.empty() && fam.matchings.back().empty()) fam.matchings.pop_back();
  return fam;
}

std::vector<Path> ks_rotation_paths(std::size_t s) {
  if (s < 2 || s % 2 != 0) throw PreconditionError("ks_rotation_paths needs an even s >= 2");
  std::vector<Vertex> zig(s);
  for (std::size_t i = 1; i < s; ++i) {
    zig[i] = static_cast<Vertex>(i % 2 == 1 ? (i + 1) / 2 : s - i / 2);
  }
  std::vector<Path> out;
  for (std::size_t r = 0; r < s / 2; ++r) {
    Path p;
    for (Vertex z : zig) p.vertices.push_back(static_cast<Vertex>((z + r) % s));
    out.push_back(std::move(p));
  }
  return out;
}

std::size_t partition_class_count(double d, const ForestParams& params) {
  std::size_t s = params.partition_classes;
  if (s == 0) {
    s = 2 * static_cast<std::size_t>(std::ceil(std::pow(std::max(d, 1.0), params.partition_exponent) - kTol));
  }
  return std::max<std::size_t>(2, s + s % 2);
}

PartitionPlan balanced_partition(const Graph& g, double d, std::size_t s, double eta,
                                 std::uint64_t seed, const ResamplePolicy& policy) {
  const std::size_t n = g.num_vertices();
  if (s == 0 || n < s) throw PreconditionError("graph too small for a partition into s classes");
  using State = std::vector<std::uint32_t>;
  Sampler<State> sampler;
  sampler.draw = [&](Rng& rng) {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    shuffle_in_place(perm, rng);
    State cls(n);
    for (std::size_t i = 0; i < n; ++i) cls[perm[i]] = static_cast<std::uint32_t>(i % s);
    return cls;
  };
  // Swapping keeps the classes balanced.
  sampler.resample = [&](State& cls, const std::vector<std::size_t>& vars, Rng& rng) {
    for (auto v : vars) std::swap(cls[v], cls[uniform_below(rng, n)]);
  };
  const double lo = (1 - eta) * d / static_cast<double>(s);
  const double hi = (1 + eta) * d / static_cast<double>(s);
  EventFamily<State> fam{"class_degree", [&](const State& cls, std::vector<Violation>& out) {
    std::vector<std::size_t> cnt(s);
    for (Vertex v = 0; v < n; ++v) {
      std::fill(cnt.begin(), cnt.end(), 0);
      for (Vertex w : g.neighbors(v)) ++cnt[cls[w]];
      for (std::size_t c = 0; c < s; ++c) {
        const auto x = static_cast<double>(cnt[c]);
        const bool few = x < lo - kTol;
        if (!few && x <= hi + kTol) continue;
        // Move neighbours out of the crowded class: c itself, or the fullest
        // class when c is short. Only about the excess is swapped.
        const std::size_t from =
            few ? static_cast<std::size_t>(std::max_element(cnt.begin(), cnt.end()) - cnt.begin()) : c;
        const auto want = static_cast<std::size_t>(
            std::ceil(few ? (lo - x) * static_cast<double>(s) : x - hi));
        std::vector<std::pair<std::uint64_t, Vertex>> pick;
        for (Vertex w : g.neighbors(v)) {
          if (cls[w] == from) pick.push_back({mix_seed(v, w + cls[v]), w});
        }
        std::sort(pick.begin(), pick.end());
        Violation viol{"deg" + std::to_string(v), {}};
        for (std::size_t k = 0; k < pick.size() && k < want; ++k) viol.scope.push_back(pick[k].second);
        out.push_back(std::move(viol));
        break;
      }
    }
  }};
  ResamplePolicy p = policy;
  p.seed = seed;
  PartitionPlan plan;
  plan.s = s;
  plan.eta = eta;
  plan.class_of = require_good(sampler, {fam}, p, "balanced_partition", &plan.certificate);
  plan.classes.assign(s, {});
  for (Vertex v = 0; v < n; ++v) plan.classes[plan.class_of[v]].push_back(v);
  return plan;
}

BoundednessSpec power_bounds(double n, double d, double paths_exp, double endpoint_exp) {
  const double dd = std::max(d, 1.0);
  return {n / std::pow(dd, paths_exp), std::pow(dd, endpoint_exp), std::pow(dd, endpoint_exp)};
}

std::vector<PathForest> initial_forests(const Graph& g, double d, double eps, std::uint64_t seed,
                                        const ForestParams& params) {
  (void)eps;  // coverage is audited by callers
  if (d < 2) throw PreconditionError("initial_forests needs d >= 2");
  const double gamma = params.gamma_scale * std::pow(d, -params.gamma_exponent);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const auto deg = static_cast<double>(g.degree(v));
    if (deg < (1 - gamma) * d - kTol || deg > (1 + gamma) * d + kTol) {
      throw PreconditionError("initial_forests: degree of vertex " + std::to_string(v) +
                              " outside (1 +- gamma) d");
    }
  }
  const std::size_t s = partition_class_count(d, params);
  const auto plan = balanced_partition(g, d, s, params.partition_eta, mix_seed(seed, 1), params.policy);
  const std::size_t total = static_cast<std::size_t>(std::floor(d / 2 + kTol));
  const std::size_t per_path = total / (s / 2);

  // Matchings between every class pair, largest first.
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<EdgeId>> pair_edges;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto a = plan.class_of[g.edge(e).u], b = plan.class_of[g.edge(e).v];
    if (a == b) continue;
    pair_edges[{std::min(a, b), std::max(a, b)}].push_back(e);
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::vector<EdgeId>>> matchings;
  for (const auto& [key, edges] : pair_edges) {
    Subgraph h = edge_subgraph(g, edges);
    const auto color = bipartite_edge_coloring(h.graph);
    std::vector<std::vector<EdgeId>> classes(h.graph.max_degree());
    for (EdgeId e = 0; e < h.graph.num_edges(); ++e) {
      const Edge& le = h.graph.edge(e);
      classes[color[e]].push_back(*g.edge_id(h.parent_of(le.u), h.parent_of(le.v)));
    }
    std::stable_sort(classes.begin(), classes.end(),
                     [](const auto& x, const auto& y) { return x.size() > y.size(); });
    if (classes.size() > per_path) classes.resize(per_path);
    matchings[key] = std::move(classes);
  }

  const auto rotation = ks_rotation_paths(s);
  std::vector<PathForest> out;
  for (const auto& q : rotation) {
    for (std::size_t k = 0; k < per_path; ++k) {
      ForestBuilder fb(g.num_vertices());
      for (std::size_t t = 0; t + 1 < q.vertices.size(); ++t) {
        auto a = q.vertices[t], b = q.vertices[t + 1];
        auto it = matchings.find({std::min(a, b), std::max(a, b)});
        if (it == matchings.end() || k >= it->second.size()) continue;
        for (EdgeId e : it->second[k]) fb.link(g.edge(e).u, g.edge(e).v);
      }
      std::vector<Path> full;
      const PathForest built = fb.paths();
      for (const auto& p : built.paths()) {
        if (p.vertices.size() == s) full.push_back(p);
      }
      out.emplace_back(std::move(full));
    }
  }
  out.resize(std::max(out.size(), total));
  return out;
}

std::vector<Vertex> reserve_set(const Graph& g, double d, double p, double gamma,
                                std::uint64_t seed, const ResamplePolicy& policy) {
  const std::size_t n = g.num_vertices();
  if (p <= 0) return {};
  using State = std::vector<char>;
  Sampler<State> sampler;
  sampler.draw = [&](Rng& rng) {
    State in(n);
    for (auto& x : in) x = bernoulli(rng, p);
    return in;
  };
  sampler.resample = [&](State& in, const std::vector<std::size_t>& vars, Rng& rng) {
    for (auto v : vars) in[v] = bernoulli(rng, p);
  };
  // Vertices of degree below d/2 are exempt.
  EventFamily<State> fam{"reserve_degree", [&](const State& in, std::vector<Violation>& out) {
    for (Vertex v = 0; v < n; ++v) {
      if (2 * static_cast<double>(g.degree(v)) < d) continue;
      std::size_t c = 0;
      for (Vertex w : g.neighbors(v)) c += in[w];
      const auto x = static_cast<double>(c);
      const bool few = x < (1 - gamma) * p * d - kTol;
      if (few || x > (1 + gamma) * p * d + kTol) {
        // Redraw only about enough wrong-side neighbours to close the gap; a
        // full neighbourhood scope cascades at desk-scale degrees.
        const double gap = few ? ((1 - gamma) * p * d - x) / p
                               : (x - (1 + gamma) * p * d) / (1 - p);
        const auto want = static_cast<std::size_t>(std::ceil(gap));
        std::vector<std::pair<std::uint64_t, Vertex>> side;
        for (Vertex w : g.neighbors(v)) {
          if (static_cast<bool>(in[w]) != few) side.push_back({mix_seed(v, w + c), w});
        }
        std::sort(side.begin(), side.end());
        Violation viol{"reserve" + std::to_string(v), {}};
        for (std::size_t k = 0; k < side.size() && k < want; ++k) viol.scope.push_back(side[k].second);
        out.push_back(std::move(viol));
      }
    }
  }};
  ResamplePolicy pol = policy;
  pol.seed = seed;
  auto in = require_good(sampler, {fam}, pol, "reserve_set");
  std::vector<Vertex> Y;
  for (Vertex v = 0; v < n; ++v) {
    if (in[v]) Y.push_back(v);
  }
  return Y;
}

std::vector<PathForest> improve_forests(const Graph& g, std::span<const Vertex> Y,
                                        std::vector<PathForest> forests, double d, double p,
                                        double eps, std::uint64_t seed,
                                        const ForestParams& params, ImproveStats* stats) {
  (void)eps;
  const std::size_t n = g.num_vertices();
  if (Y.empty()) throw PreconditionError("improve_forests needs a nonempty reserve");
  const double gamma = params.reserve_gamma;
  if (static_cast<double>(Y.size()) > (1 + gamma) * p * static_cast<double>(n) + kTol) {
    throw PreconditionError("improve_forests: reserve larger than (1 + gamma) p n");
  }
  const auto in_y = vertex_mask(n, Y);
  for (Vertex v = 0; v < n; ++v) {
    if (2 * static_cast<double>(g.degree(v)) < d) continue;
    std::size_t c = 0;
    for (Vertex w : g.neighbors(v)) c += in_y[w];
    const auto x = static_cast<double>(c);
    if (x < (1 - gamma) * p * d - kTol || x > (1 + gamma) * p * d + kTol) {
      throw PreconditionError("improve_forests: vertex " + std::to_string(v) +
                              " has a reserve degree outside (1 +- gamma) p d");
    }
  }
  auto pre = check_bounded(g, forests,
                           power_bounds(static_cast<double>(n), d, params.improve_paths_exp,
                                        params.improve_endpoint_exp));
  ImproveStats st;
  st.input_bounds = pre;
  if (!pre.ok) st.warnings.push_back("input forests exceed the expected boundedness");

  std::vector<char> used(g.num_edges(), 0);
  std::vector<std::size_t> load(n, 0);
  for (const auto& f : forests) {
    for (const auto& path : f.paths()) {
      for (Vertex v : path.vertices) {
        if (in_y[v]) throw PreconditionError("improve_forests: forests must avoid the reserve");
      }
      for (EdgeId e : path_edge_ids(g, path)) {
        if (used[e]) throw PreconditionError("improve_forests: forests share an edge");
        used[e] = 1;
      }
    }
    for (auto [v, c] : f.endpoint_counts()) load[v] += c;
  }

  Rng rng = make_rng(seed, 0x1f);
  const std::size_t parts = std::max<std::size_t>(params.y_splits, 2);
  std::vector<Vertex> ys(Y.begin(), Y.end());
  shuffle_in_place(ys, rng);
  std::vector<std::uint32_t> part(n, UINT32_MAX);
  for (std::size_t i = 0; i < ys.size(); ++i) part[ys[i]] = static_cast<std::uint32_t>(i % parts);
  const auto last = static_cast<std::uint32_t>(parts - 1);

  for (const auto& f : forests) st.paths_before += f.size();

  std::vector<ForestBuilder> builders;
  std::vector<std::vector<Vertex>> other(forests.size());
  for (std::size_t i = 0; i < forests.size(); ++i) {
    builders.emplace_back(n);
    other[i].assign(n, kNone);
    for (const auto& path : forests[i].paths()) {
      builders[i].add_path(path);
      other[i][path.front()] = path.back();
      other[i][path.back()] = path.front();
    }
  }

  // Connectors u - y - w joining two different paths of one forest.
  for (std::uint32_t j = 0; j < last; ++j) {
    for (std::size_t i = 0; i < forests.size(); ++i) {
      auto& fb = builders[i];
      auto& oe = other[i];
      std::vector<Vertex> ends;
      for (Vertex v = 0; v < n; ++v) {
        if (fb.member[v] && fb.degree(v) <= 1) ends.push_back(v);
      }
      shuffle_in_place(ends, rng);
      for (Vertex u : ends) {
        if (fb.degree(u) > 1) continue;
        bool joined = false;
        auto nb = g.neighbors(u);
        auto ids = g.incident(u);
        for (std::size_t a = 0; a < nb.size() && !joined; ++a) {
          const Vertex y = nb[a];
          if (part[y] != j || fb.member[y] || used[ids[a]]) continue;
          auto nb2 = g.neighbors(y);
          auto ids2 = g.incident(y);
          for (std::size_t b = 0; b < nb2.size(); ++b) {
            const Vertex w = nb2[b];
            if (w == u || w == oe[u] || !fb.member[w] || fb.degree(w) > 1 || used[ids2[b]]) continue;
            const Vertex eu = oe[u], ew = oe[w];
            // A single-vertex path stays an end after one link.
            if (fb.degree(u) == 1) --load[u];
            if (fb.degree(w) == 1) --load[w];
            fb.link(u, y);
            fb.link(y, w);
            used[ids[a]] = used[ids2[b]] = 1;
            oe[eu] = ew;
            oe[ew] = eu;
            ++st.connectors;
            joined = true;
            break;
          }
        }
      }
    }
  }

  // Pendant edges from over-used ends into the last reserve part.
  const double z_threshold = std::pow(std::max(d, 1.0), params.final_exp) / 2;
  struct Var {
    std::size_t forest;
    Vertex u;
    std::vector<std::pair<Vertex, EdgeId>> cand;
  };
  std::vector<Var> vars;
  for (std::size_t i = 0; i < forests.size(); ++i) {
    for (Vertex u = 0; u < n; ++u) {
      if (!builders[i].member[u] || builders[i].degree(u) != 1) continue;
      if (static_cast<double>(load[u]) <= z_threshold) continue;
      Var var{i, u, {}};
      auto nb = g.neighbors(u);
      auto ids = g.incident(u);
      for (std::size_t a = 0; a < nb.size(); ++a) {
        if (part[nb[a]] == last && !builders[i].member[nb[a]] && !used[ids[a]]) {
          var.cand.push_back({nb[a], ids[a]});
        }
      }
      if (!var.cand.empty()) vars.push_back(std::move(var));
    }
  }
  if (!vars.empty()) {
    using State = std::vector<std::size_t>;
    std::map<Vertex, std::size_t> demand;
    for (const auto& v : vars) {
      for (auto [y, e] : v.cand) ++demand[y];
    }
    Sampler<State> sampler;
    sampler.draw = [&](Rng& r) {
      State s(vars.size());
      for (std::size_t k = 0; k < vars.size(); ++k) s[k] = uniform_below(r, vars[k].cand.size());
      return s;
    };
    sampler.resample = [&](State& s, const std::vector<std::size_t>& ks, Rng& r) {
      for (auto k : ks) s[k] = uniform_below(r, vars[k].cand.size());
    };
    const double cap = std::max(1.0, z_threshold);
    auto conflicts = [&](const State& s, std::vector<Violation>& out) {
      std::map<std::pair<std::size_t, Vertex>, std::vector<std::size_t>> by_forest;
      std::map<EdgeId, std::vector<std::size_t>> by_edge;
      std::map<Vertex, std::vector<std::size_t>> by_target;
      for (std::size_t k = 0; k < vars.size(); ++k) {
        auto [y, e] = vars[k].cand[s[k]];
        by_forest[{vars[k].forest, y}].push_back(k);
        by_edge[e].push_back(k);
        by_target[y].push_back(k);
      }
      for (auto& [key, ks] : by_forest) {
        if (ks.size() > 1) out.push_back({"forest_target", ks});
      }
      for (auto& [e, ks] : by_edge) {
        if (ks.size() > 1) out.push_back({"edge" + std::to_string(e), ks});
      }
      for (auto& [y, ks] : by_target) {
        if (static_cast<double>(load[y] + ks.size()) > cap + kTol) {
          out.push_back({"load" + std::to_string(y), ks});
        }
      }
    };
    ResamplePolicy pol = params.policy;
    pol.seed = mix_seed(seed, 0x9e);
    auto res = run_until_good(sampler, {EventFamily<State>{"pendant", conflicts}}, pol);
    st.pendant_certificate = res.certificate;
    // Whatever still conflicts after the budget is dropped in order.
    std::map<std::pair<std::size_t, Vertex>, char> taken;
    std::vector<char> edge_taken(g.num_edges(), 0);
    std::vector<std::size_t> extra(n, 0);
    for (std::size_t k = 0; k < vars.size(); ++k) {
      auto [y, e] = vars[k].cand[res.structure[k]];
      if (taken.count({vars[k].forest, y}) || edge_taken[e] ||
          static_cast<double>(load[y] + extra[y] + 1) > cap + kTol) {
        continue;
      }
      taken[{vars[k].forest, y}] = 1;
      edge_taken[e] = 1;
      ++extra[y];
      builders[vars[k].forest].link(vars[k].u, y);
      used[e] = 1;
      --load[vars[k].u];
      ++st.pendant_edges;
    }
    for (Vertex y = 0; y < n; ++y) load[y] += extra[y];
  }

  std::vector<PathForest> out;
  for (const auto& fb : builders) out.push_back(fb.paths());
  for (const auto& f : out) st.paths_after += f.size();
  if (stats) *stats = std::move(st);
  return out;
}

ForestDecomposition decompose_into_forests(const Graph& g, double d, double eps,
                                           std::uint64_t seed, const ForestParams& params) {
  if (static_cast<double>(g.max_degree()) > d + kTol) {
    throw PreconditionError("decompose_into_forests needs maximum degree at most d");
  }
  const std::size_t n = g.num_vertices();
  const std::size_t total = static_cast<std::size_t>(std::floor(d / 2 + kTol));
  ForestDecomposition out;
  out.forests.resize(total);
  if (g.num_edges() == 0 || total == 0) return out;
  const double gamma = params.gamma_scale * std::pow(d, -params.gamma_exponent);
  std::size_t low = 0;
  for (Vertex v = 0; v < n; ++v) low += static_cast<double>(g.degree(v)) < (1 - gamma) * d - kTol;
  if (static_cast<double>(low) > gamma * static_cast<double>(n)) {
    out.warnings.push_back("more than gamma n vertices of low degree");
  }

  const double p = params.reserve_p;
  out.reserve = reserve_set(g, d, p, params.reserve_gamma, mix_seed(seed, 1), params.policy);
  const Subgraph rest = induced_without(g, out.reserve);
  auto slices = regular_slices(rest.graph, d, params.slices.mu, eps, mix_seed(seed, 2), params.slices);
  out.warnings.insert(out.warnings.end(), slices.warnings.begin(), slices.warnings.end());
  out.slices = slices.slices.size();

  std::vector<PathForest> all;
  for (std::size_t j = 0; j < slices.slices.size(); ++j) {
    const auto& sl = slices.slices[j];
    const Subgraph lifted = compose(rest, sl.subgraph);
    try {
      auto fs = initial_forests(sl.subgraph.graph, static_cast<double>(sl.d), eps,
                                mix_seed(seed, 100 + j), params);
      for (const auto& f : fs) all.push_back(lift_forest(lifted, f));
    } catch (const Error& e) {
      out.warnings.push_back("slice " + std::to_string(j) + " skipped: " + e.what());
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const PathForest& a, const PathForest& b) {
    return a.num_edges() > b.num_edges();
  });
  if (all.size() > total) {
    out.warnings.push_back(std::to_string(all.size() - total) + " surplus forests dropped");
    all.resize(total);
  }
  all.resize(total);
  try {
    ImproveStats st;
    all = improve_forests(g, out.reserve, all, d, p, eps, mix_seed(seed, 3), params, &st);
    out.warnings.insert(out.warnings.end(), st.warnings.begin(), st.warnings.end());
  } catch (const PreconditionError& e) {
    out.warnings.push_back(std::string("improvement skipped: ") + e.what());
  }
  out.forests = std::move(all);
  for (const auto& f : out.forests) out.covered_edges += f.num_edges();
  out.bounded = check_bounded(
      g, out.forests,
      {(1 + eps) * static_cast<double>(n) / d, std::pow(d, params.final_exp), std::pow(d, params.final_exp)});
  return out;
}

CoverResult vertex_path_cover(const Graph& g, std::size_t d, double eps, std::uint64_t seed,
                              const ForestParams& params) {
  if (d == 0 || !g.is_regular(d)) throw PreconditionError("vertex_path_cover needs a d-regular graph");
  const std::size_t n = g.num_vertices();
  CoverResult out;
  out.limit = n / (d + 1);
  const double dd = static_cast<double>(d);

  std::vector<PathForest> forests;
  try {
    const double p = params.reserve_p;
    auto Y = reserve_set(g, dd, p, params.reserve_gamma, mix_seed(seed, 1), params.policy);
    const Subgraph rest = induced_without(g, Y);
    auto fs = initial_forests(rest.graph, (1 - p) * dd, eps, mix_seed(seed, 2), params);
    for (const auto& f : fs) forests.push_back(lift_forest(rest, f));
    try {
      forests = improve_forests(g, Y, forests, dd, p, eps, mix_seed(seed, 3), params);
    } catch (const PreconditionError& e) {
      out.warnings.push_back(std::string("improvement skipped: ") + e.what());
    }
  } catch (const Error& e) {
    out.warnings.push_back(std::string("forest stage skipped: ") + e.what());
  }

  const PathForest* best = nullptr;
  for (const auto& f : forests) {
    if (!best || f.num_edges() > best->num_edges()) best = &f;
  }
  std::vector<Path> paths;
  if (best) {
    paths = best->paths();
    std::stable_sort(paths.begin(), paths.end(),
                     [](const Path& a, const Path& b) { return a.length() > b.length(); });
    if (paths.size() > out.limit) paths.resize(out.limit);
  }
  std::vector<char> covered(n, 0);
  for (const auto& p : paths) {
    for (Vertex v : p.vertices) covered[v] = 1;
  }
  for (const auto& p : paths) out.covered_before += p.vertices.size();

  // Greedy extension, preferring the neighbour with fewest free neighbours.
  std::vector<std::size_t> free_deg(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : g.neighbors(v)) free_deg[v] += !covered[w];
  }
  auto take = [&](Vertex v) {
    covered[v] = 1;
    for (Vertex w : g.neighbors(v)) --free_deg[w];
  };
  auto next_free = [&](Vertex v) {
    Vertex best_w = kNone;
    for (Vertex w : g.neighbors(v)) {
      if (!covered[w] && (best_w == kNone || free_deg[w] < free_deg[best_w])) best_w = w;
    }
    return best_w;
  };
  auto extend = [&](Path& p) {
    for (int side = 0; side < 2; ++side) {
      for (Vertex w = next_free(p.back()); w != kNone; w = next_free(p.back())) {
        take(w);
        p.vertices.push_back(w);
      }
      std::reverse(p.vertices.begin(), p.vertices.end());
    }
  };
  for (auto& p : paths) extend(p);

  auto merge_adjacent = [&] {
    bool merged = true;
    while (merged) {
      merged = false;
      std::map<Vertex, std::size_t> end_of;
      for (std::size_t i = 0; i < paths.size(); ++i) {
        end_of[paths[i].front()] = i;
        end_of[paths[i].back()] = i;
      }
      for (std::size_t i = 0; i < paths.size() && !merged; ++i) {
        for (int side = 0; side < 2 && !merged; ++side) {
          const Vertex u = side == 0 ? paths[i].back() : paths[i].front();
          for (Vertex w : g.neighbors(u)) {
            auto it = end_of.find(w);
            if (it == end_of.end() || it->second == i) continue;
            Path a = paths[i], b = paths[it->second];
            if (side == 1) std::reverse(a.vertices.begin(), a.vertices.end());
            if (b.front() != w) std::reverse(b.vertices.begin(), b.vertices.end());
            a.vertices.insert(a.vertices.end(), b.vertices.begin(), b.vertices.end());
            const std::size_t j = it->second;
            paths[std::min(i, j)] = std::move(a);
            paths.erase(paths.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
            merged = true;
            break;
          }
        }
      }
    }
  };
  merge_adjacent();
  while (paths.size() < out.limit) {
    Vertex start = kNone;
    for (Vertex v = 0; v < n; ++v) {
      if (!covered[v] && (start == kNone || free_deg[v] < free_deg[start])) start = v;
    }
    if (start == kNone) break;
    take(start);
    Path p{{start}};
    extend(p);
    paths.push_back(std::move(p));
    merge_adjacent();
  }
  for (const auto& p : paths) out.covered_after += p.vertices.size();
  out.paths = std::move(paths);
  return out;
}

Path lift_path(const Subgraph& s, const Path& p) {
  Path out;
  out.vertices.reserve(p.vertices.size());
  for (Vertex v : p.vertices) out.vertices.push_back(s.parent_of(v));
  return out;
}

nlohmann::json forests_to_json(std::span<const PathForest> forests) {
  auto arr = nlohmann::json::array();
  for (const auto& f : forests) {
    auto fa = nlohmann::json::array();
    for (const auto& p : f.paths()) fa.push_back(p.vertices);
    arr.push_back(std::move(fa));
  }
  return {{"forests", arr}};
}

std::vector<PathForest> forests_from_json(const nlohmann::json& j) {
  const auto& arr = j.is_object() ? j.at("forests") : j;
  std::vector<PathForest> out;
  for (const auto& fa : arr) {
    std::vector<Path> paths;
    for (const auto& pa : fa) paths.push_back(Path{pa.get<std::vector<Vertex>>()});
    out.emplace_back(std::move(paths));
  }
  return out;
}

void write_forests(std::ostream& out, std::span<const PathForest> forests) {
  for (const auto& f : forests) {
    for (const auto& p : f.paths()) {
      for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        out << (i ? " " : "") << p.vertices[i];
      }
      out << '\n';
    }
    out << "--\n";
  }
}

std::vector<PathForest> read_forests(std::istream& in) {
  std::vector<PathForest> out;
  std::vector<Path> cur;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line == "--") {
      out.emplace_back(std::move(cur));
      cur.clear();
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    Path p;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(tok, &pos);
        if (pos != tok.size() || v >= kNone) throw std::invalid_argument(tok);
        p.vertices.push_back(static_cast<Vertex>(v));
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad vertex token '" + tok + "'");
      }
    }
    cur.push_back(std::move(p));
  }
  if (!cur.empty()) out.emplace_back(std::move(cur));
  return out;
}

}  // namespace pathdecomp
