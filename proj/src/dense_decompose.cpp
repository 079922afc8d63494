#include "pathdecomp/dense_decompose.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <queue>

#include "pathdecomp/connectivity.hpp"
#include "pathdecomp/errors.hpp"
#include "pathdecomp/forests.hpp"
#include "pathdecomp/generators.hpp"

namespace pathdecomp {

namespace {

constexpr double kTol = 1e-9;
constexpr std::uint32_t kNone = UINT32_MAX;

// Unused edges of a graph with residual degrees kept in sync.
struct Residual {
  const Graph& g;
  std::vector<char>& used;
  std::vector<std::uint32_t> rdeg;

  Residual(const Graph& graph, std::vector<char>& u) : g(graph), used(u), rdeg(graph.num_vertices(), 0) {
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (used[e]) continue;
      ++rdeg[g.edge(e).u];
      ++rdeg[g.edge(e).v];
    }
  }

  void commit(const std::vector<Vertex>& path) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const EdgeId e = *g.edge_id(path[i], path[i + 1]);
      used[e] = 1;
      --rdeg[path[i]];
      --rdeg[path[i + 1]];
    }
  }
};

// Grows a path on unused edges, repairing dead ends by rotations.
class Walker {
 public:
  Walker(const Residual& r, std::uint64_t seed, std::size_t budget)
      : r_(r), pos_(r.g.num_vertices(), kNone), rng_(make_rng(seed, 0x3a)), budget_(budget) {}

  // Extends `path` (live end at the back) to `target` edges. path[0..fixed)
  // stays put unless `flip` lets the walk continue from the front; blocked
  // vertices are never entered.
  bool grow(std::vector<Vertex>& path, std::size_t fixed, std::size_t target,
            const std::vector<char>* blocked = nullptr, bool flip = false) {
    for (std::size_t i = 0; i < path.size(); ++i) pos_[path[i]] = static_cast<std::uint32_t>(i);
    std::size_t repairs = 0;
    bool ok = true;
    while (path.size() < target + 1) {
      const Vertex next = best_step(path.back(), blocked);
      if (next != kNone) {
        pos_[next] = static_cast<std::uint32_t>(path.size());
        path.push_back(next);
        continue;
      }
      if (flip && path.size() > 1 && best_step(path.front(), blocked) != kNone) {
        std::reverse(path.begin(), path.end());
        reindex(path, 0);
        continue;
      }
      if (++repairs > budget_ || !rotate(path, fixed)) {
        ok = false;
        break;
      }
    }
    for (Vertex v : path) pos_[v] = kNone;
    return ok;
  }

 private:
  Vertex best_step(Vertex x, const std::vector<char>* blocked) {
    auto nb = r_.g.neighbors(x);
    auto ids = r_.g.incident(x);
    Vertex best = kNone;
    std::uint64_t best_key = 0;
    for (std::size_t a = 0; a < nb.size(); ++a) {
      const Vertex y = nb[a];
      if (r_.used[ids[a]] || pos_[y] != kNone || (blocked && (*blocked)[y])) continue;
      const std::uint64_t key = (std::uint64_t{r_.rdeg[y]} << 32) | (mix_seed(salt_, y) >> 32);
      if (best == kNone || key > best_key) {
        best = y;
        best_key = key;
      }
    }
    ++salt_;
    return best;
  }

  bool free_step(Vertex x) const {
    auto nb = r_.g.neighbors(x);
    auto ids = r_.g.incident(x);
    for (std::size_t a = 0; a < nb.size(); ++a) {
      if (!r_.used[ids[a]] && pos_[nb[a]] == kNone) return true;
    }
    return false;
  }

  void reindex(std::vector<Vertex>& path, std::size_t from) {
    for (std::size_t i = from; i < path.size(); ++i) pos_[path[i]] = static_cast<std::uint32_t>(i);
  }

  // Pósa rotation: with an unused edge from the end x to path[i], reverse
  // path[i+1..]; the new end is path[i+1].
  bool rotate(std::vector<Vertex>& path, std::size_t fixed) {
    const Vertex x = path.back();
    const std::size_t last = path.size() - 1;
    std::vector<std::size_t> cand;
    auto nb = r_.g.neighbors(x);
    auto ids = r_.g.incident(x);
    for (std::size_t a = 0; a < nb.size(); ++a) {
      const auto i = pos_[nb[a]];
      if (r_.used[ids[a]] || i == kNone || i + 1 >= last || i + 1 < std::max<std::size_t>(fixed, 1)) {
        continue;
      }
      cand.push_back(i);
    }
    if (cand.empty()) return false;
    shuffle_in_place(cand, rng_);
    std::size_t pick = cand.front();
    for (auto i : cand) {
      if (free_step(path[i + 1])) {
        pick = i;
        break;
      }
    }
    std::reverse(path.begin() + static_cast<std::ptrdiff_t>(pick + 1), path.end());
    reindex(path, pick + 1);
    return true;
  }

  const Residual& r_;
  std::vector<std::uint32_t> pos_;
  Rng rng_;
  std::size_t budget_;
  std::uint64_t salt_ = 0;
};

Path lift(const Subgraph& s, const std::vector<Vertex>& local) {
  Path p;
  p.vertices.reserve(local.size());
  for (Vertex v : local) p.vertices.push_back(s.parent_of(v));
  return p;
}

// Maximum matching between class A and the vertices of class cb (Kuhn).
std::vector<Edge> class_matching(const Graph& g, const std::vector<Vertex>& A,
                                 const std::vector<std::uint32_t>& class_of, std::uint32_t cb) {
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> mate(n, kNone);
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t stamp = 0;
  std::function<bool(Vertex)> augment = [&](Vertex a) {
    for (Vertex b : g.neighbors(a)) {
      if (class_of[b] != cb || seen[b] == stamp) continue;
      seen[b] = stamp;
      if (mate[b] == kNone || augment(mate[b])) {
        mate[b] = a;
        return true;
      }
    }
    return false;
  };
  for (Vertex a : A) {
    ++stamp;
    augment(a);
  }
  std::vector<Edge> out;
  for (Vertex b = 0; b < n; ++b) {
    if (mate[b] != kNone) out.push_back(Edge::of(mate[b], b));
  }
  return out;
}

// Paths of the forest whose edges are given, covering every vertex listed.
std::vector<Path> forest_paths(const std::vector<Vertex>& vertices, const std::vector<Edge>& edges,
                               std::size_t n) {
  std::vector<std::array<Vertex, 2>> nb(n, {kNone, kNone});
  for (const Edge& e : edges) {
    for (auto [x, y] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      auto& slot = nb[x];
      if (slot[0] == kNone) {
        slot[0] = y;
      } else {
        if (slot[1] != kNone) throw Error("forest_paths: vertex of degree three");
        slot[1] = y;
      }
    }
  }
  std::vector<char> done(n, 0);
  std::vector<Path> out;
  for (Vertex s : vertices) {
    if (done[s] || nb[s][1] != kNone) continue;
    Path p{{s}};
    done[s] = 1;
    Vertex prev = kNone, cur = s;
    for (;;) {
      Vertex nxt = nb[cur][0] != prev ? nb[cur][0] : nb[cur][1];
      if (nxt == kNone || done[nxt]) break;
      prev = cur;
      cur = nxt;
      done[cur] = 1;
      p.vertices.push_back(cur);
    }
    out.push_back(std::move(p));
  }
  for (Vertex s : vertices) {
    if (!done[s]) throw Error("forest_paths: matchings closed a cycle");
  }
  return out;
}

void count_ends(const Path& p, std::vector<std::size_t>* load, int sign) {
  if (!load || p.empty()) return;
  (*load)[p.front()] += static_cast<std::size_t>(sign);
  if (p.length() > 0) (*load)[p.back()] += static_cast<std::size_t>(sign);
}

// Removes leaves until the forest has `size` vertices. With `prefer`, only
// ends it accepts are removed; otherwise the shortest path loses its back.
void trim_to(std::vector<Path>& paths, std::size_t size,
             const std::function<bool(Vertex)>& prefer = nullptr,
             std::vector<std::size_t>* load = nullptr) {
  std::size_t total = 0;
  for (const auto& p : paths) total += p.vertices.size();
  auto drop_end = [&](std::size_t i, bool back) {
    auto& v = paths[i].vertices;
    count_ends(paths[i], load, -1);
    if (back) {
      v.pop_back();
    } else {
      v.erase(v.begin());
    }
    count_ends(paths[i], load, 1);
    --total;
    if (v.empty()) paths.erase(paths.begin() + static_cast<std::ptrdiff_t>(i));
  };
  while (total > size) {
    if (prefer) {
      bool done = false;
      for (std::size_t i = 0; i < paths.size() && !done; ++i) {
        if (prefer(paths[i].vertices.back())) {
          drop_end(i, true);
          done = true;
        } else if (prefer(paths[i].vertices.front())) {
          drop_end(i, false);
          done = true;
        }
      }
      if (!done) return;
      continue;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < paths.size(); ++i) {
      if (paths[i].vertices.size() < paths[best].vertices.size()) best = i;
    }
    drop_end(best, true);
  }
}

std::vector<PathForest> build_sized(const Graph& g, const DenseSpotSpec& spec,
                                    const std::vector<std::size_t>& sizes, std::uint64_t seed,
                                    const SizedForestParams& params) {
  const std::size_t n = g.num_vertices();
  const double d = spec.d;
  const std::size_t s0 = std::max<std::size_t>(
      2, 2 * static_cast<std::size_t>(std::ceil(std::pow(std::max(d, 1.0), params.partition_exponent) - kTol)));
  const double path_cap = std::pow(std::max(d, 1.0), params.path_cap_exponent);
  std::string last_error = "no class count fits";
  for (std::size_t growth = 0; growth <= params.max_class_growth; ++growth) {
    const std::size_t s = s0 + 2 * growth;
    if (s > n) break;
    PartitionPlan plan;
    try {
      plan = balanced_partition(g, d, s, params.partition_eta, mix_seed(seed, growth), params.policy);
    } catch (const BudgetExhausted& e) {
      last_error = e.what();
      continue;
    }
    std::size_t smallest = n;
    for (const auto& c : plan.classes) smallest = std::min(smallest, c.size());
    std::vector<std::size_t> lengths;
    for (auto ni : sizes) {
      const std::size_t c = std::min(s, (ni + smallest - 1) / std::max<std::size_t>(smallest, 1));
      lengths.push_back(std::max<std::size_t>(c, 1) - 1);
    }
    std::vector<Path> pack;
    try {
      pack = complete_path_packing(lengths, s, mix_seed(seed, 100 + growth), 0.0, params.packing);
    } catch (const Error& e) {
      last_error = e.what();
      continue;
    }
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Edge>> matchings;
    auto matching = [&](std::uint32_t a, std::uint32_t b) -> const std::vector<Edge>& {
      const auto key = std::minmax(a, b);
      auto it = matchings.find(key);
      if (it == matchings.end()) {
        it = matchings
                 .emplace(key, class_matching(g, plan.classes[key.first], plan.class_of, key.second))
                 .first;
      }
      return it->second;
    };
    std::vector<PathForest> out;
    bool fits = true;
    for (std::size_t i = 0; i < sizes.size() && fits; ++i) {
      const auto& P = pack[i].vertices;
      std::vector<Vertex> verts;
      for (Vertex j : P) verts.insert(verts.end(), plan.classes[j].begin(), plan.classes[j].end());
      std::sort(verts.begin(), verts.end());
      std::vector<Edge> edges;
      for (std::size_t t = 0; t + 1 < P.size(); ++t) {
        const auto& m = matching(P[t], P[t + 1]);
        edges.insert(edges.end(), m.begin(), m.end());
      }
      auto paths = forest_paths(verts, edges, n);
      if (verts.size() < sizes[i]) {
        fits = false;
        last_error = "classes too small for a request";
        break;
      }
      trim_to(paths, sizes[i]);
      if (static_cast<double>(paths.size()) > path_cap + kTol) {
        fits = false;
        last_error = "forest has more than d^" + std::to_string(params.path_cap_exponent) + " paths";
        break;
      }
      out.emplace_back(std::move(paths));
    }
    if (fits) return out;
  }
  throw PackingFailure("sized_forests: " + last_error);
}

void check_request(const Graph& g, const DenseSpotSpec& spec, const SizedForestRequest& request,
                   const SizedForestParams& params) {
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), Vertex{0});
  if (!check_dense_spot(g, all, spec).ok) {
    throw PreconditionError("sized_forests needs a dense host graph");
  }
  double total = 0;
  for (auto ni : request.sizes) {
    if (ni == 0 || ni > n) throw PreconditionError("sized_forests: size outside [1, |V|]");
    total += static_cast<double>(ni);
  }
  if (total > params.budget_fraction * static_cast<double>(n) * spec.d / 2 + kTol) {
    throw PreconditionError("sized_forests: requested sizes exceed the edge budget");
  }
}

}  // namespace

std::vector<Path> complete_path_packing(std::span<const std::size_t> lengths, std::size_t m,
                                        std::uint64_t seed, double slack,
                                        const PackingParams& params) {
  double total = 0;
  for (auto L : lengths) {
    if (m == 0 || L > m - 1) throw PreconditionError("complete_path_packing: length exceeds m - 1");
    total += static_cast<double>(L);
  }
  const double cap = (1 - slack) * static_cast<double>(m) * static_cast<double>(m - (m > 0)) / 2;
  if (total > cap + kTol) throw PreconditionError("complete_path_packing: lengths exceed the slack budget");
  if (lengths.empty()) return {};
  if (m % 2 == 0 && lengths.size() <= m / 2 &&
      std::all_of(lengths.begin(), lengths.end(), [&](std::size_t L) { return L == m - 1; })) {
    auto rot = ks_rotation_paths(m);
    rot.resize(lengths.size());
    return rot;
  }
  const Graph K = gen_complete(m);
  std::vector<char> used(K.num_edges(), 0);
  Residual res(K, used);
  Walker walker(res, seed, params.repair_budget);
  std::vector<std::size_t> order(lengths.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lengths[a] > lengths[b]; });
  std::vector<Path> out(lengths.size());
  std::vector<Vertex> starts(m);
  for (std::size_t idx : order) {
    std::iota(starts.begin(), starts.end(), Vertex{0});
    std::stable_sort(starts.begin(), starts.end(),
                     [&](Vertex a, Vertex b) { return res.rdeg[a] > res.rdeg[b]; });
    bool placed = false;
    for (std::size_t t = 0; t < starts.size() && t < std::max<std::size_t>(params.restarts, 1); ++t) {
      std::vector<Vertex> path{starts[t]};
      if (walker.grow(path, 1, lengths[idx], nullptr, true)) {
        res.commit(path);
        out[idx].vertices = std::move(path);
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw PackingFailure("complete_path_packing: no room for a path of length " +
                           std::to_string(lengths[idx]) + " in K_" + std::to_string(m));
    }
  }
  return out;
}

std::vector<Path> pack_paths(const Graph& g, std::vector<char>& used, std::size_t length,
                             std::uint64_t seed, const PackingParams& params) {
  std::vector<Path> out;
  if (length == 0) return out;
  Residual res(g, used);
  Walker walker(res, seed, params.repair_budget);
  const std::size_t n = g.num_vertices();
  std::priority_queue<std::pair<std::uint32_t, Vertex>> heap;
  for (Vertex v = 0; v < n; ++v) {
    if (res.rdeg[v] > 0) heap.push({res.rdeg[v], v});
  }
  std::vector<char> dead(n, 0);
  while (!heap.empty()) {
    const auto [r, v] = heap.top();
    heap.pop();
    if (dead[v] || r != res.rdeg[v] || r == 0) continue;
    std::vector<Vertex> path{v};
    if (!walker.grow(path, 1, length, nullptr, true)) {
      dead[v] = 1;
      continue;
    }
    res.commit(path);
    for (Vertex x : path) {
      if (res.rdeg[x] > 0) heap.push({res.rdeg[x], x});
    }
    out.push_back(Path{std::move(path)});
  }
  return out;
}

std::vector<PathForest> sized_forests(const Graph& g, const DenseSpotSpec& spec,
                                      const SizedForestRequest& request, std::uint64_t seed,
                                      const SizedForestParams& params) {
  check_request(g, spec, request, params);
  if (request.sizes.empty()) return {};
  return build_sized(g, spec, request.sizes, seed, params);
}

std::vector<PathForest> sized_forests_spread(const Graph& g, const DenseSpotSpec& spec,
                                             const SizedForestRequest& request,
                                             std::uint64_t seed,
                                             const SizedForestParams& params) {
  check_request(g, spec, request, params);
  if (request.sizes.empty()) return {};
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> over;
  for (auto ni : request.sizes) {
    over.push_back(std::min(
        n, static_cast<std::size_t>(std::floor((1 + params.spread_slack) * static_cast<double>(ni) + kTol))));
  }
  auto forests = build_sized(g, spec, over, seed, params);
  std::vector<std::size_t> load(n, 0);
  for (const auto& f : forests) {
    for (auto [v, c] : f.endpoint_counts()) load[v] += c;
  }
  const double cap = std::pow(std::max(spec.d, 1.0), params.spread_cap_exponent);
  auto heavy = [&](Vertex v) { return static_cast<double>(load[v]) > cap + kTol; };
  for (std::size_t i = 0; i < forests.size(); ++i) {
    auto paths = forests[i].paths();
    trim_to(paths, request.sizes[i], heavy, &load);
    forests[i] = PathForest(std::move(paths));
  }
  return forests;
}

std::vector<Path> chop_path(const Path& p, std::size_t length, std::vector<Edge>* rest) {
  std::vector<Path> out;
  if (length == 0) throw PreconditionError("chop_path needs a positive length");
  const std::size_t L = p.length();
  const std::size_t pieces = L / length;
  for (std::size_t i = 0; i < pieces; ++i) {
    Path q;
    q.vertices.assign(p.vertices.begin() + static_cast<std::ptrdiff_t>(i * length),
                      p.vertices.begin() + static_cast<std::ptrdiff_t>((i + 1) * length + 1));
    out.push_back(std::move(q));
  }
  if (rest) {
    for (std::size_t i = pieces * length; i < L; ++i) {
      rest->push_back(Edge::of(p.vertices[i], p.vertices[i + 1]));
    }
  }
  return out;
}

SpotDecomposition decompose_spot_with_attached(const Graph& g, const AttachedSpot& a,
                                               std::size_t l_target, std::uint64_t seed,
                                               const DenseParams& params) {
  const std::size_t n = g.num_vertices();
  if (l_target == 0) throw PreconditionError("decompose_spot_with_attached needs l_target >= 1");
  if (l_target >= a.spot.size()) {
    throw PreconditionError("decompose_spot_with_attached: l_target does not fit in the spot");
  }
  const auto in_spot = vertex_mask(n, a.spot);
  const auto in_junk = vertex_mask(n, a.junk);
  SpotDecomposition out;

  // Attachment audit.
  std::vector<char> seen_edge(g.num_edges(), 0);
  std::vector<std::size_t> load(n, 0);
  for (const auto& p : a.attached) {
    if (p.vertices.empty()) continue;
    if (!in_spot[p.front()] && !in_spot[p.back()]) {
      throw PreconditionError("attached path does not end in the spot");
    }
    for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i) {
      if (in_spot[p.vertices[i]]) throw PreconditionError("attached path runs through the spot");
    }
    for (EdgeId e : path_edge_ids(g, p)) {
      if (seen_edge[e]) throw PreconditionError("attached paths share an edge");
      seen_edge[e] = 1;
    }
    for (Vertex e : {p.front(), p.back()}) {
      if (!in_spot[e]) continue;
      ++load[e];
      out.max_attached_load = std::max(out.max_attached_load, load[e]);
      if (!in_junk[e]) ++out.attached_outside_junk;
      if (p.length() == 0) break;
    }
  }

  const Subgraph local = induced_subgraph(g, a.spot);
  std::vector<Vertex> to_local(n, kNone);
  for (Vertex v = 0; v < local.to_parent.size(); ++v) to_local[local.to_parent[v]] = v;

  if (params.partition_cap >= a.spot.size() && a.spot.size() > 1) {
    const double dl = static_cast<double>(local.graph.max_degree());
    const double K = static_cast<double>(a.spot.size()) / std::max(dl, 1.0);
    try {
      out.pieces = partition_connected(local.graph, 0.25, dl, K, params.lambda).pieces.size();
    } catch (const Error& e) {
      out.warnings.push_back(std::string("partition_connected skipped: ") + e.what());
    }
  }

  std::vector<char> used(local.graph.num_edges(), 0);
  Residual res(local.graph, used);
  Walker walker(res, seed, params.packing.repair_budget);
  std::vector<char> blocked(local.graph.num_vertices(), 0);
  for (const auto& p : a.attached) {
    if (p.length() == 0) continue;
    const std::size_t r = (l_target - p.length() % l_target) % l_target;
    Path full = p;
    if (r > 0) {
      bool done = false;
      for (const bool at_back : {true, false}) {
        const Vertex e = at_back ? p.back() : p.front();
        if (!in_spot[e]) continue;
        for (Vertex v : p.vertices) {
          if (in_spot[v]) blocked[to_local[v]] = 1;
        }
        std::vector<Vertex> ext{to_local[e]};
        blocked[ext[0]] = 0;
        const bool ok = walker.grow(ext, 1, r, &blocked);
        for (Vertex v : p.vertices) {
          if (in_spot[v]) blocked[to_local[v]] = 0;
        }
        if (!ok) continue;
        res.commit(ext);
        if (!at_back) std::reverse(full.vertices.begin(), full.vertices.end());
        for (std::size_t i = 1; i < ext.size(); ++i) full.vertices.push_back(local.parent_of(ext[i]));
        done = true;
        break;
      }
      if (done) ++out.extended;
    } else {
      ++out.extended;
    }
    auto pieces = chop_path(full, l_target, &out.leftover);
    out.paths.insert(out.paths.end(), pieces.begin(), pieces.end());
  }

  for (const auto& q : pack_paths(local.graph, used, l_target, mix_seed(seed, 7), params.packing)) {
    out.paths.push_back(lift(local, q.vertices));
  }
  for (EdgeId e = 0; e < local.graph.num_edges(); ++e) {
    if (used[e]) continue;
    const Edge& le = local.graph.edge(e);
    out.leftover.push_back(Edge::of(local.parent_of(le.u), local.parent_of(le.v)));
  }

  // Edge conservation.
  std::vector<Edge> input, output = out.leftover;
  for (const Edge& le : local.graph.edges()) {
    input.push_back(Edge::of(local.parent_of(le.u), local.parent_of(le.v)));
  }
  for (const auto& p : a.attached) {
    for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
      input.push_back(Edge::of(p.vertices[i], p.vertices[i + 1]));
    }
  }
  for (const auto& p : out.paths) {
    for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
      output.push_back(Edge::of(p.vertices[i], p.vertices[i + 1]));
    }
  }
  std::sort(input.begin(), input.end());
  std::sort(output.begin(), output.end());
  if (input != output) throw Error("decompose_spot_with_attached lost or created an edge");
  return out;
}

SpotDecomposition decompose_dense_family(const Graph& g, const DenseFamily& family,
                                         std::span<const Path> attached, std::size_t l_target,
                                         std::uint64_t seed, const DenseParams& params) {
  const std::size_t n = g.num_vertices();
  const auto owner = family.owner(n);
  std::vector<std::vector<Path>> per_spot(family.spots.size());
  SpotDecomposition out;
  out.pieces = 0;
  for (const auto& p : attached) {
    if (p.empty()) continue;
    std::uint32_t s = owner[p.front()];
    if (s == kNone) s = owner[p.back()];
    if (s == kNone) {
      auto pieces = chop_path(p, l_target, &out.leftover);
      out.paths.insert(out.paths.end(), pieces.begin(), pieces.end());
      out.warnings.push_back("attached path ends outside every spot");
      continue;
    }
    per_spot[s].push_back(p);
  }
  std::vector<std::size_t> order(family.spots.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return family.spots[x].size() > family.spots[y].size();
  });
  for (std::size_t i : order) {
    AttachedSpot a;
    a.spot = family.spots[i];
    a.attached = std::move(per_spot[i]);
    auto r = decompose_spot_with_attached(g, a, l_target, mix_seed(seed, i), params);
    out.paths.insert(out.paths.end(), r.paths.begin(), r.paths.end());
    out.leftover.insert(out.leftover.end(), r.leftover.begin(), r.leftover.end());
    out.extended += r.extended;
    out.attached_outside_junk += r.attached_outside_junk;
    out.max_attached_load = std::max(out.max_attached_load, r.max_attached_load);
    out.pieces += r.pieces;
    for (auto& w : r.warnings) out.warnings.push_back("spot " + std::to_string(i) + ": " + w);
  }
  return out;
}

void to_json(nlohmann::json& j, const SpotDecomposition& s) {
  j = {{"paths", s.paths},
       {"leftover", s.leftover.size()},
       {"extended", s.extended},
       {"attached_outside_junk", s.attached_outside_junk},
       {"max_attached_load", s.max_attached_load},
       {"pieces", s.pieces},
       {"warnings", s.warnings}};
}

}  // namespace pathdecomp
