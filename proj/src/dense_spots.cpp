#include "pathdecomp/dense_spots.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

#include "pathdecomp/errors.hpp"

namespace pathdecomp {

namespace {

constexpr double kTol = 1e-9;
constexpr std::uint32_t kNone = UINT32_MAX;

// Peels `members` (a mask, modified in place) to inner degree >= t.
void peel(const Graph& g, std::vector<char>& members, std::span<const Vertex> scope,
          std::size_t t, std::vector<std::uint32_t>& deg) {
  std::vector<Vertex> queue;
  for (Vertex v : scope) {
    if (!members[v]) continue;
    std::uint32_t c = 0;
    for (Vertex w : g.neighbors(v)) c += members[w] ? 1 : 0;
    deg[v] = c;
    if (c < t) queue.push_back(v);
  }
  while (!queue.empty()) {
    const Vertex v = queue.back();
    queue.pop_back();
    if (!members[v]) continue;
    members[v] = 0;
    for (Vertex w : g.neighbors(v)) {
      if (members[w] && deg[w]-- == t) queue.push_back(w);
    }
  }
}

std::vector<Vertex> collect(const std::vector<char>& mask, std::span<const Vertex> scope) {
  std::vector<Vertex> out;
  for (Vertex v : scope) {
    if (mask[v]) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Vertex>> components_in(const Graph& g, const std::vector<char>& mask,
                                               std::span<const Vertex> scope) {
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s : scope) {
    if (!mask[s] || seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (Vertex w : g.neighbors(comp[i])) {
        if (mask[w] && !seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

// Lowest-degree removal with re-peeling until at most `cap` vertices remain.
std::vector<Vertex> shrink(const Graph& g, std::vector<Vertex> comp, std::size_t t,
                           std::size_t cap) {
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex v : comp) in[v] = 1;
  std::vector<std::uint32_t> deg(g.num_vertices(), 0);
  std::set<std::pair<std::uint32_t, Vertex>> order;
  for (Vertex v : comp) {
    for (Vertex w : g.neighbors(v)) deg[v] += in[w];
    order.insert({deg[v], v});
  }
  std::size_t alive = comp.size();
  auto remove = [&](Vertex v) {
    order.erase({deg[v], v});
    in[v] = 0;
    --alive;
    for (Vertex w : g.neighbors(v)) {
      if (!in[w]) continue;
      order.erase({deg[w], w});
      --deg[w];
      order.insert({deg[w], w});
    }
  };
  while (alive > 0) {
    while (!order.empty() && order.begin()->first < t) remove(order.begin()->second);
    if (alive <= cap) break;
    remove(order.begin()->second);
  }
  return collect(in, comp);
}

std::size_t degree_floor(double eta, double d) {
  return static_cast<std::size_t>(std::max(0.0, std::ceil((1 - eta) * d - kTol)));
}

}  // namespace

std::vector<Vertex> DenseFamily::vertices() const {
  std::vector<Vertex> out;
  for (const auto& s : spots) out.insert(out.end(), s.begin(), s.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> DenseFamily::owner(std::size_t n) const {
  std::vector<std::uint32_t> out(n, kNone);
  for (std::size_t i = 0; i < spots.size(); ++i) {
    for (Vertex v : spots[i]) out[v] = static_cast<std::uint32_t>(i);
  }
  return out;
}

DenseFamily find_maximal_dense_family(const Graph& g, const DenseSpotSpec& spec) {
  const std::size_t n = g.num_vertices();
  DenseFamily fam;
  fam.spec = spec;
  const std::size_t t = degree_floor(spec.eta, spec.d);
  const auto cap = static_cast<std::size_t>(std::floor(spec.K * spec.d + kTol));
  if (cap == 0 || n == 0) {
    fam.maximal = true;
    return fam;
  }
  std::vector<char> taken(n, 0);
  std::vector<std::uint32_t> deg(n, 0);
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), Vertex{0});
  auto accept = [&](std::vector<Vertex> spot) {
    for (Vertex v : spot) taken[v] = 1;
    fam.spots.push_back(std::move(spot));
  };

  for (std::size_t round = 1;; ++round) {
    ScanRecord rec;
    rec.round = round;
    std::vector<char> alive(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      alive[v] = !taken[v];
      rec.residual += alive[v];
    }
    peel(g, alive, all, t, deg);

    // Closed neighbourhoods that keep a dense core after peeling.
    std::vector<char> local(n, 0);
    std::vector<Vertex> ball;
    for (Vertex v = 0; v < n; ++v) {
      if (!alive[v] || taken[v]) continue;
      ball.assign(1, v);
      for (Vertex w : g.neighbors(v)) {
        if (alive[w] && !taken[w]) ball.push_back(w);
      }
      for (Vertex w : ball) local[w] = 1;
      peel(g, local, ball, t, deg);
      auto core = collect(local, ball);
      for (Vertex w : ball) local[w] = 0;
      if (!core.empty() && core.size() <= cap) {
        accept(std::move(core));
        ++rec.found;
      }
    }

    for (Vertex v = 0; v < n; ++v) alive[v] = alive[v] && !taken[v];
    peel(g, alive, all, t, deg);
    for (auto& comp : components_in(g, alive, all)) {
      auto spot = comp.size() <= cap ? std::move(comp) : shrink(g, std::move(comp), t, cap);
      if (!spot.empty()) {
        accept(std::move(spot));
        ++rec.found;
      }
    }
    fam.scan.push_back(rec);
    if (rec.found == 0) break;
  }
  for (const auto& s : fam.spots) {
    if (!check_dense_spot(g, s, spec).ok) throw Error("dense family search produced a sparse spot");
  }
  fam.maximal = true;
  return fam;
}

ApproxWitness is_approximable(const Graph& g, std::span<const Vertex> X, std::span<const Vertex> H,
                              std::size_t k, double eta, double pd, std::size_t starts) {
  const std::size_t n = g.num_vertices();
  const auto xin = vertex_mask(n, X);
  const auto hin = vertex_mask(n, H);
  std::size_t hsize = 0;
  for (Vertex v = 0; v < n; ++v) hsize += hin[v];
  for (Vertex h : H) {
    if (!xin[h]) throw PreconditionError("is_approximable needs H inside X");
  }
  ApproxWitness best;
  best.difference = hsize;

  // Candidates ordered by how many H vertices they see.
  std::vector<std::uint32_t> hits(n, 0);
  std::vector<Vertex> touched;
  for (Vertex h : H) {
    for (Vertex w : g.neighbors(h)) {
      if (hits[w]++ == 0) touched.push_back(w);
    }
  }
  std::sort(touched.begin(), touched.end(), [&](Vertex a, Vertex b) {
    return hits[a] != hits[b] ? hits[a] > hits[b] : a < b;
  });
  if (touched.size() > starts) touched.resize(starts);

  auto ball = [&](Vertex s) {
    std::vector<std::uint32_t> dist(n, kNone);
    std::deque<Vertex> q{s};
    dist[s] = 0;
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop_front();
      if (dist[v] >= k) continue;
      for (Vertex w : g.neighbors(v)) {
        if (dist[w] == kNone) {
          dist[w] = dist[v] + 1;
          q.push_back(w);
        }
      }
    }
    return dist;
  };

  std::vector<std::uint32_t> cover(n, 0);
  for (Vertex s : touched) {
    if (k == 0) break;
    std::vector<Vertex> W;
    std::vector<std::vector<std::uint32_t>> balls;
    std::fill(cover.begin(), cover.end(), 0);
    long long diff = static_cast<long long>(hsize);
    auto gain = [&](Vertex v) {
      long long g0 = 0;
      for (Vertex w : g.neighbors(v)) {
        if (xin[w] && cover[w] == 0) g0 += hin[w] ? 1 : -1;
      }
      return g0;
    };
    auto add = [&](Vertex v) {
      diff -= gain(v);
      for (Vertex w : g.neighbors(v)) {
        if (xin[w]) ++cover[w];
      }
      W.push_back(v);
      balls.push_back(ball(v));
    };
    add(s);
    while (W.size() < k) {
      Vertex pick = kNone;
      long long pick_gain = 0;
      for (Vertex h : H) {
        if (cover[h]) continue;
        for (Vertex c : g.neighbors(h)) {
          if (std::find(W.begin(), W.end(), c) != W.end()) continue;
          bool close = true;
          for (const auto& b : balls) close = close && b[c] != kNone;
          if (!close) continue;
          const long long gc = gain(c);
          if (gc > pick_gain || (gc == pick_gain && gc > 0 && c < pick)) {
            pick = c;
            pick_gain = gc;
          }
        }
      }
      if (pick == kNone) break;
      add(pick);
    }
    const auto d0 = static_cast<std::size_t>(diff);
    if (d0 < best.difference) {
      best.difference = d0;
      best.witness = W;
      std::sort(best.witness.begin(), best.witness.end());
    }
  }
  best.ok = static_cast<double>(best.difference) <= eta * pd + kTol;
  return best;
}

namespace {

using SampleState = std::vector<char>;

// Up to about gap/rate vertices of `cand` on the wrong side, picked by a hash
// that changes with the current count so repeated failures pick new ones.
void targeted_scope(Violation& viol, std::span<const Vertex> cand, const SampleState& in,
                    bool need_more, double gap, double p, std::uint64_t salt) {
  const double rate = need_more ? p : 1 - p;
  std::size_t want = cand.size();
  if (rate > kTol) want = static_cast<std::size_t>(std::ceil(std::max(gap, 1.0) / rate));
  std::vector<std::pair<std::uint64_t, Vertex>> side;
  for (Vertex w : cand) {
    if (static_cast<bool>(in[w]) != need_more) side.push_back({mix_seed(salt, w), w});
  }
  std::sort(side.begin(), side.end());
  for (std::size_t i = 0; i < side.size() && i < want; ++i) viol.scope.push_back(side[i].second);
}

struct UnionSet {
  std::vector<Vertex> U, Y, Z;
  std::vector<Vertex> rel;                 // vertices whose B1 bound can fail
  std::vector<std::size_t> rel_off{0};     // rel[i]'s Y-neighbours in rel_nb
  std::vector<Vertex> rel_nb;
  std::vector<std::pair<std::uint32_t, std::vector<Vertex>>> by_spot;  // Y cap V
};

std::vector<UnionSet> sample_unions(const Graph& g, const DenseFamily& fam, std::size_t k_eff,
                                    std::size_t k, std::size_t count, double p, double eta,
                                    double d, std::uint64_t seed) {
  const std::size_t n = g.num_vertices();
  std::vector<UnionSet> out;
  if (n == 0 || k_eff == 0) return out;
  const auto fam_vertices = fam.vertices();
  const auto owner = fam.owner(n);
  const std::size_t radius = k / 2;
  std::vector<std::uint32_t> cnt(n, 0);
  Rng rng = make_rng(seed, 0x55);
  for (std::size_t i = 0; i < count; ++i) {
    UnionSet s;
    const bool in_spot = !fam_vertices.empty() && i % 2 == 0;
    const Vertex u = in_spot ? fam_vertices[uniform_below(rng, fam_vertices.size())]
                             : static_cast<Vertex>(uniform_below(rng, n));
    s.U.push_back(u);
    const std::size_t size = 1 + i % k_eff;
    for (std::size_t j = 1; j < size && radius > 0; ++j) {
      Vertex w = u;
      const std::size_t steps = 1 + uniform_below(rng, radius);
      for (std::size_t st = 0; st < steps && g.degree(w) > 0; ++st) {
        auto nb = g.neighbors(w);
        w = nb[uniform_below(rng, nb.size())];
      }
      if (std::find(s.U.begin(), s.U.end(), w) == s.U.end()) s.U.push_back(w);
    }
    std::sort(s.U.begin(), s.U.end());
    for (Vertex x : s.U) {
      for (Vertex y : g.neighbors(x)) s.Y.push_back(y);
    }
    std::sort(s.Y.begin(), s.Y.end());
    s.Y.erase(std::unique(s.Y.begin(), s.Y.end()), s.Y.end());

    std::vector<Vertex> touched;
    for (Vertex y : s.Y) {
      for (Vertex v : g.neighbors(y)) {
        if (cnt[v]++ == 0) touched.push_back(v);
      }
    }
    for (Vertex y : s.Y) {
      if (static_cast<double>(cnt[y]) >= (1 - 3 * eta) * d - kTol) s.Z.push_back(y);
    }
    std::sort(touched.begin(), touched.end());
    const auto ymask_free = [&](Vertex w) {
      return std::binary_search(s.Y.begin(), s.Y.end(), w);
    };
    for (Vertex v : touched) {
      // Counts at most p c + eta p d can never fail when c (1-p) <= eta p d.
      if (static_cast<double>(cnt[v]) * (1 - p) > eta * p * d + kTol) {
        s.rel.push_back(v);
        for (Vertex w : g.neighbors(v)) {
          if (ymask_free(w)) s.rel_nb.push_back(w);
        }
        s.rel_off.push_back(s.rel_nb.size());
      }
    }
    for (Vertex v : touched) cnt[v] = 0;
    for (Vertex y : s.Y) {
      if (owner[y] == kNone) continue;
      auto it = std::find_if(s.by_spot.begin(), s.by_spot.end(),
                             [&](const auto& e) { return e.first == owner[y]; });
      if (it == s.by_spot.end()) {
        s.by_spot.push_back({owner[y], {}});
        it = s.by_spot.end() - 1;
      }
      it->second.push_back(y);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::size_t count_in(std::span<const Vertex> vs, const SampleState& in) {
  std::size_t c = 0;
  for (Vertex v : vs) c += in[v];
  return c;
}

// One engine run at fixed (gamma, eta).
EngineResult<SampleState> sample_once(const Graph& g, const DenseFamily& fam, double p,
                                      double gamma, double eta, double d,
                                      const std::vector<UnionSet>& unions,
                                      const ResamplePolicy& policy) {
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), Vertex{0});
  const std::size_t blocks = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(
                                                          static_cast<double>(n) / std::max(d, 1.0))));
  std::vector<std::vector<Vertex>> block_sets(blocks);
  for (Vertex v = 0; v < n; ++v) block_sets[v * blocks / std::max<std::size_t>(n, 1)].push_back(v);

  Sampler<SampleState> sampler;
  sampler.draw = [&](Rng& rng) {
    SampleState in(n);
    for (auto& x : in) x = bernoulli(rng, p);
    return in;
  };
  sampler.resample = [&](SampleState& in, const std::vector<std::size_t>& vars, Rng& rng) {
    for (auto v : vars) in[v] = bernoulli(rng, p);
  };
  const double pd = p * d;

  // A two-sided band check on a vertex set.
  auto band = [&](const SampleState& in, std::span<const Vertex> set, double lo, double hi,
                  const std::string& id, std::uint64_t salt, std::vector<Violation>& out) {
    const std::size_t c = count_in(set, in);
    const auto x = static_cast<double>(c);
    if (x < lo - kTol || x > hi + kTol) {
      Violation viol{id, {}};
      const bool few = x < lo - kTol;
      targeted_scope(viol, set, in, few, few ? lo - x : x - hi, p, mix_seed(salt, c));
      out.push_back(std::move(viol));
    }
  };

  std::vector<EventFamily<SampleState>> events;
  events.push_back({"size", [&](const SampleState& in, std::vector<Violation>& out) {
                      const double e = p * static_cast<double>(n);
                      band(in, all, (1 - gamma) * e, (1 + gamma) * e, "size", 1, out);
                    }});
  events.push_back({"blocks", [&](const SampleState& in, std::vector<Violation>& out) {
                      for (std::size_t i = 0; i < blocks; ++i) {
                        const double e = p * static_cast<double>(block_sets[i].size());
                        band(in, block_sets[i], (1 - gamma) * e, (1 + gamma) * e,
                             "block" + std::to_string(i), 2 + i, out);
                      }
                    }});
  events.push_back({"degree", [&](const SampleState& in, std::vector<Violation>& out) {
                      for (Vertex v = 0; v < n; ++v) {
                        band(in, g.neighbors(v), (1 - gamma) * pd, (1 + gamma) * pd,
                             "deg" + std::to_string(v), mix_seed(3, v), out);
                      }
                    }});
  events.push_back({"spots", [&](const SampleState& in, std::vector<Violation>& out) {
                      std::vector<std::uint32_t> dv(n, 0);
                      std::vector<Vertex> nb;
                      for (std::size_t i = 0; i < fam.spots.size(); ++i) {
                        const auto& V = fam.spots[i];
                        const double e = p * static_cast<double>(V.size());
                        band(in, V, (1 - gamma) * e, (1 + gamma) * e, "spot" + std::to_string(i),
                             mix_seed(4, i), out);
                        std::vector<Vertex> touched;
                        for (Vertex w : V) {
                          for (Vertex v : g.neighbors(w)) {
                            if (dv[v]++ == 0) touched.push_back(v);
                          }
                        }
                        std::sort(touched.begin(), touched.end());
                        for (Vertex v : touched) {
                          nb.clear();
                          for (Vertex w : g.neighbors(v)) {
                            if (std::binary_search(V.begin(), V.end(), w)) nb.push_back(w);
                          }
                          const double e2 = p * static_cast<double>(dv[v]);
                          band(in, nb, e2 - gamma * pd, e2 + gamma * pd,
                               "spotdeg" + std::to_string(i) + ":" + std::to_string(v),
                               mix_seed(5 + i, v), out);
                        }
                        for (Vertex v : touched) dv[v] = 0;
                      }
                    }});
  events.push_back({"unions", [&](const SampleState& in, std::vector<Violation>& out) {
                      for (std::size_t i = 0; i < unions.size(); ++i) {
                        const auto& s = unions[i];
                        const std::string tag = "union" + std::to_string(i);
                        for (std::size_t r = 0; r < s.rel.size(); ++r) {
                          std::span<const Vertex> nb(s.rel_nb.data() + s.rel_off[r],
                                                     s.rel_off[r + 1] - s.rel_off[r]);
                          const double hi = p * static_cast<double>(nb.size()) + eta * pd;
                          band(in, nb, -1, hi, tag + ":b1:" + std::to_string(s.rel[r]),
                               mix_seed(6 + i, s.rel[r]), out);
                        }
                        band(in, s.Z, -1, p * static_cast<double>(s.Z.size()) + eta * pd,
                             tag + ":b2", mix_seed(7, i), out);
                        const double ey = p * static_cast<double>(s.Y.size());
                        band(in, s.Y, ey - eta * pd, ey + eta * pd, tag + ":b3", mix_seed(8, i), out);
                        for (const auto& [spot, part] : s.by_spot) {
                          const double e = p * static_cast<double>(part.size());
                          band(in, part, e - eta * pd, static_cast<double>(part.size()) + 1,
                               tag + ":b4:" + std::to_string(spot), mix_seed(9 + i, spot), out);
                        }
                      }
                    }});
  return run_until_good(sampler, events, policy);
}

std::vector<Vertex> peel_in_sample(const Graph& g, const std::vector<char>& xin,
                                   std::vector<Vertex> H, double t) {
  std::vector<char> mask(g.num_vertices(), 0);
  for (Vertex v : H) mask[v] = xin[v];
  std::vector<std::uint32_t> deg(g.num_vertices(), 0);
  peel(g, mask, H, static_cast<std::size_t>(std::max(0.0, std::ceil(t - kTol))), deg);
  return collect(mask, H);
}

}  // namespace

SampleAudit audit_sample(const Graph& g, const DenseFamily& family, std::span<const Vertex> X,
                         double p, double gamma) {
  const std::size_t n = g.num_vertices();
  const auto xin = vertex_mask(n, X);
  const double d = static_cast<double>(g.max_degree());
  const double pd = p * d;
  SampleAudit a;
  std::size_t xs = 0;
  for (Vertex v = 0; v < n; ++v) xs += xin[v];
  const double e = p * static_cast<double>(n);
  a.size_ok = static_cast<double>(xs) >= (1 - gamma) * e - kTol &&
              static_cast<double>(xs) <= (1 + gamma) * e + kTol;
  for (Vertex v = 0; v < n; ++v) {
    const auto c = static_cast<double>(count_in(g.neighbors(v), xin));
    if (c < (1 - gamma) * pd - kTol || c > (1 + gamma) * pd + kTol) a.degrees_ok = false;
  }
  for (const auto& V : family.spots) {
    const auto c = static_cast<double>(count_in(V, xin));
    const double ev = p * static_cast<double>(V.size());
    if (c < (1 - gamma) * ev - kTol || c > (1 + gamma) * ev + kTol) a.spot_sizes_ok = false;
    const auto vm = vertex_mask(n, V);
    for (Vertex v = 0; v < n; ++v) {
      std::size_t all = 0, in = 0;
      for (Vertex w : g.neighbors(v)) {
        all += vm[w];
        in += vm[w] && xin[w];
      }
      if (all == 0) continue;
      if (std::abs(static_cast<double>(in) - p * static_cast<double>(all)) > gamma * pd + kTol) {
        a.spot_degrees_ok = false;
      }
    }
  }
  return a;
}

SampleSet good_sample(const Graph& g, const DenseFamily& family, double p, double gamma,
                      std::size_t k, double eta, std::uint64_t seed, const SampleParams& params) {
  const std::size_t n = g.num_vertices();
  if (p <= 0 || p > 1) throw PreconditionError("good_sample needs 0 < p <= 1");
  const std::size_t dd = g.max_degree();
  if (!g.is_regular(dd)) throw PreconditionError("good_sample needs a regular graph");
  const double d = static_cast<double>(dd);
  for (const auto& V : family.spots) {
    const auto sz = static_cast<double>(V.size());
    if (sz < d / 2 - kTol || sz > 2 * family.spec.K * d + kTol) {
      throw PreconditionError("good_sample: spot sizes must lie in [d/2, 2Kd]");
    }
  }
  SampleSet out;
  out.p = p;
  out.K = family.spec.K;
  out.k = k;
  out.k_eff = std::min(k, params.k_cap);
  const std::size_t attempts = std::max<std::size_t>(params.widen_attempts, 1);
  for (std::size_t a = 0; a < attempts; ++a) {
    const auto unions = sample_unions(g, family, out.k_eff, k, params.union_sets, p, eta, d,
                                      mix_seed(seed, 100 + a));
    ResamplePolicy pol = params.policy;
    pol.seed = mix_seed(seed, a);
    auto res = sample_once(g, family, p, gamma, eta, d, unions, pol);
    if (res.ok()) {
      out.certificate = std::move(res.certificate);
      out.union_sets = unions.size();
      for (Vertex v = 0; v < n; ++v) {
        if (res.structure[v]) out.X.push_back(v);
      }
      break;
    }
    if (a + 1 == attempts) {
      throw BudgetExhausted("good_sample: " + std::to_string(res.certificate.surviving.size()) +
                            " bad events survive at gamma " + std::to_string(gamma) + ", eta " +
                            std::to_string(eta));
    }
    out.warnings.push_back("good_sample widened gamma and eta after " +
                           std::to_string(res.certificate.surviving.size()) +
                           " surviving events");
    gamma *= params.widen_factor;
    eta *= params.widen_factor;
  }
  out.gamma = gamma;
  out.eta = eta;
  out.audit = audit_sample(g, family, out.X, p, gamma);

  // Sampled inheritance check: dense pieces of G[X] near spots and single
  // neighbourhoods, traced to the set Z_U of their witness.
  const auto xin = vertex_mask(n, out.X);
  const double pd = p * d;
  std::vector<std::vector<Vertex>> cands;
  for (const auto& V : family.spots) {
    if (cands.size() >= params.audit_candidates / 2) break;
    cands.push_back(V);
  }
  Rng rng = make_rng(seed, 0xa3);
  while (cands.size() < params.audit_candidates && n > 0) {
    const auto v = static_cast<Vertex>(uniform_below(rng, n));
    auto nb = g.neighbors(v);
    cands.emplace_back(nb.begin(), nb.end());
    if (cands.size() > 4 * params.audit_candidates) break;
  }
  const DenseSpotSpec small{eta, pd, family.spec.K};
  const DenseSpotSpec big{6 * eta, d, 2 * family.spec.K};
  for (auto& c : cands) {
    auto H = peel_in_sample(g, xin, std::move(c), (1 - eta) * pd);
    if (H.empty() || !check_dense_spot(g, H, small).ok) continue;
    const auto wit = is_approximable(g, out.X, H, out.k_eff, eta, pd);
    if (!wit.ok) continue;
    ++out.audit.inheritance_checked;
    std::vector<Vertex> Y;
    for (Vertex u : wit.witness) {
      for (Vertex y : g.neighbors(u)) Y.push_back(y);
    }
    std::sort(Y.begin(), Y.end());
    Y.erase(std::unique(Y.begin(), Y.end()), Y.end());
    const auto ym = vertex_mask(n, Y);
    std::vector<Vertex> Z;
    for (Vertex y : Y) {
      if (static_cast<double>(count_in(g.neighbors(y), ym)) >= (1 - 3 * eta) * d - kTol) {
        Z.push_back(y);
      }
    }
    bool good = check_dense_spot(g, Z, big).ok;
    const auto hm = vertex_mask(n, H);
    for (const auto& V : family.spots) {
      const auto zv = count_in(V, vertex_mask(n, Z));
      if (static_cast<double>(zv) >= d / 2 - kTol && count_in(V, hm) == 0) good = false;
    }
    if (!good) ++out.audit.inheritance_failed;
  }
  if (!out.audit.ok()) out.warnings.push_back("good_sample audit reports a failed condition");
  return out;
}

namespace {

struct ForestState {
  std::vector<Path> paths;
  std::vector<char> alive;
  std::vector<std::uint32_t> end_of;  // path index per end vertex
  std::vector<char> on;               // vertices used by this forest

  void set_ends(std::uint32_t i) {
    end_of[paths[i].front()] = i;
    end_of[paths[i].back()] = i;
  }
  void clear_ends(std::uint32_t i) {
    end_of[paths[i].front()] = kNone;
    end_of[paths[i].back()] = kNone;
  }
};

struct Search {
  const Graph& g;
  std::vector<char>& used;
  std::vector<std::uint32_t> dist;
  std::vector<std::pair<Vertex, EdgeId>> parent;
  std::vector<Vertex> touched;

  Search(const Graph& graph, std::vector<char>& u)
      : g(graph), used(u), dist(graph.num_vertices(), kNone),
        parent(graph.num_vertices(), {kNone, kNone}) {}

  // Shortest connector from x over unused edges: interior vertices pass
  // `inner`, the last vertex passes `target`, and the length is at most max_len.
  template <class Inner, class Target>
  std::optional<Path> find(Vertex x, std::size_t max_len, Inner inner, Target target) {
    for (Vertex v : touched) dist[v] = kNone;
    touched.assign(1, x);
    dist[x] = 0;
    std::deque<Vertex> q{x};
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop_front();
      if (dist[v] >= max_len) continue;
      auto nb = g.neighbors(v);
      auto ids = g.incident(v);
      for (std::size_t a = 0; a < nb.size(); ++a) {
        const Vertex w = nb[a];
        if (used[ids[a]] || dist[w] != kNone) continue;
        if (target(w)) {
          Path p;
          p.vertices.push_back(w);
          for (Vertex c = v; c != x; c = parent[c].first) p.vertices.push_back(c);
          p.vertices.push_back(x);
          std::reverse(p.vertices.begin(), p.vertices.end());
          return p;
        }
        if (!inner(w)) continue;
        dist[w] = dist[v] + 1;
        parent[w] = {v, ids[a]};
        touched.push_back(w);
        q.push_back(w);
      }
    }
    return std::nullopt;
  }

  void mark(const Path& p, char value) {
    for (EdgeId e : path_edge_ids(g, p)) used[e] = value;
  }
};

Path oriented_to_end(const Path& p, Vertex end) {
  Path out = p;
  if (out.back() != end) std::reverse(out.vertices.begin(), out.vertices.end());
  return out;
}

}  // namespace

ConnectionResult connect_forests_to_spots(const Graph& g, const DenseFamily& family,
                                          const SampleSet& sample,
                                          std::span<const PathForest> forests, std::size_t k,
                                          std::uint64_t seed, const ConnectParams& params) {
  const std::size_t n = g.num_vertices();
  const std::size_t m = forests.size();
  const double d = params.d > 0 ? params.d : static_cast<double>(g.max_degree());
  const double quota = params.quota > 0 ? params.quota : std::sqrt(d);
  const auto owner = family.owner(n);
  const auto xin = vertex_mask(n, sample.X);
  ConnectionResult out;
  out.joins.resize(m);
  out.attaches.resize(m);
  out.leftover_target = d > 0 ? 16.0 * static_cast<double>(n) / (family.spec.K * d) : 0;
  if (m == 0) return out;

  std::vector<char> used(g.num_edges(), 0);
  for (const auto& f : forests) {
    for (const auto& p : f.paths()) {
      for (Vertex v : p.vertices) {
        if (xin[v] || owner[v] != kNone) {
          throw PreconditionError("connect_forests_to_spots: forests must avoid X and V(F)");
        }
      }
      for (EdgeId e : path_edge_ids(g, p)) {
        if (used[e]) throw PreconditionError("connect_forests_to_spots: forests share an edge");
        used[e] = 1;
      }
    }
  }
  out.input_bounds = check_bounded(
      g, forests, {2.0 * static_cast<double>(n) / std::max(d, 1.0), std::pow(d, 0.25), std::pow(d, 0.25)});
  if (!out.input_bounds.ok) out.warnings.push_back("input forests exceed (2n/d, d^1/4, d^1/4)");

  std::vector<ForestState> st(m);
  std::vector<std::deque<Vertex>> queue(m);
  Rng rng = make_rng(seed, 0x42);
  for (std::size_t i = 0; i < m; ++i) {
    auto& s = st[i];
    s.end_of.assign(n, kNone);
    s.on.assign(n, 0);
    std::vector<Vertex> ends;
    for (const auto& p : forests[i].paths()) {
      const auto idx = static_cast<std::uint32_t>(s.paths.size());
      s.paths.push_back(p);
      s.alive.push_back(1);
      for (Vertex v : p.vertices) s.on[v] = 1;
      if (p.length() == 0) continue;
      s.set_ends(idx);
      ends.push_back(p.front());
      ends.push_back(p.back());
    }
    shuffle_in_place(ends, rng);
    queue[i].assign(ends.begin(), ends.end());
  }

  Search search(g, used);
  const std::size_t q_len = 2 * k;
  auto q_inner = [&](const ForestState& s) {
    return [&](Vertex w) { return xin[w] && owner[w] == kNone && !s.on[w]; };
  };
  auto find_join = [&](ForestState& s, Vertex x) {
    const std::uint32_t a = s.end_of[x];
    return search.find(x, q_len, q_inner(s), [&](Vertex w) {
      return s.end_of[w] != kNone && s.end_of[w] != a;
    });
  };

  // Joins, one end per forest per turn.
  for (bool busy = true; busy;) {
    busy = false;
    for (std::size_t i = 0; i < m; ++i) {
      auto& s = st[i];
      while (!queue[i].empty()) {
        const Vertex x = queue[i].front();
        queue[i].pop_front();
        if (s.end_of[x] == kNone) continue;
        busy = true;
        auto c = find_join(s, x);
        if (c) {
          const Vertex y = c->back();
          const auto a = s.end_of[x], b = s.end_of[y];
          Path joined = oriented_to_end(s.paths[a], x);
          joined.vertices.insert(joined.vertices.end(), c->vertices.begin() + 1,
                                 c->vertices.end() - 1);
          const Path tail = oriented_to_end(s.paths[b], y);
          joined.vertices.insert(joined.vertices.end(), tail.vertices.rbegin(),
                                 tail.vertices.rend());
          s.clear_ends(a);
          s.clear_ends(b);
          s.alive[b] = 0;
          s.paths[a] = std::move(joined);
          s.set_ends(a);
          for (Vertex v : c->vertices) s.on[v] = 1;
          search.mark(*c, 1);
          out.joins[i].push_back(std::move(*c));
        }
        break;
      }
    }
  }

  // Attachments: both ends or neither.
  std::vector<std::size_t> end_load(n, 0);
  std::vector<std::vector<std::size_t>> spot_load(m, std::vector<std::size_t>(family.spots.size(), 0));
  auto r_inner = [&](const ForestState& s) {
    return [&](Vertex w) { return xin[w] && owner[w] == kNone && !s.on[w]; };
  };
  auto try_attach = [&](std::size_t i, std::uint32_t idx, bool commit) -> std::optional<Path> {
    auto& s = st[i];
    const Path& p = s.paths[idx];
    auto target = [&](Vertex w) {
      return xin[w] && owner[w] != kNone && !s.on[w] &&
             static_cast<double>(end_load[w] + 1) <= quota + kTol &&
             static_cast<double>(spot_load[i][owner[w]] + 1) <= quota + kTol;
    };
    auto first = search.find(p.front(), k, r_inner(s), target);
    if (!first) return std::nullopt;
    auto hold = [&](const Path& c, int sign) {
      search.mark(c, sign > 0 ? 1 : 0);
      for (std::size_t j = 1; j < c.vertices.size(); ++j) s.on[c.vertices[j]] = sign > 0;
      const Vertex z = c.back();
      end_load[z] += sign;
      spot_load[i][owner[z]] += sign;
    };
    hold(*first, 1);
    auto second = search.find(p.back(), k, r_inner(s), target);
    if (!second || !commit) {
      hold(*first, -1);
      if (second) return Path{};
      return std::nullopt;
    }
    hold(*second, 1);
    Path full;
    full.vertices.assign(first->vertices.rbegin(), first->vertices.rend());
    full.vertices.insert(full.vertices.end(), p.vertices.begin() + 1, p.vertices.end());
    full.vertices.insert(full.vertices.end(), second->vertices.begin() + 1, second->vertices.end());
    out.attaches[i].push_back(std::move(*first));
    out.attaches[i].push_back(std::move(*second));
    return full;
  };

  std::vector<std::vector<std::uint32_t>> order(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::uint32_t j = 0; j < st[i].paths.size(); ++j) {
      if (st[i].alive[j] && st[i].paths[j].length() > 0) order[i].push_back(j);
    }
    shuffle_in_place(order[i], rng);
  }
  std::vector<std::vector<Path>> connected(m), left(m);
  std::vector<std::vector<std::uint32_t>> left_idx(m);
  for (std::size_t turn = 0;; ++turn) {
    bool any = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (turn >= order[i].size()) continue;
      any = true;
      const auto idx = order[i][turn];
      if (auto full = try_attach(i, idx, true)) {
        connected[i].push_back(std::move(*full));
      } else {
        left[i].push_back(st[i].paths[idx]);
        left_idx[i].push_back(idx);
      }
    }
    if (!any) break;
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::uint32_t j = 0; j < st[i].paths.size(); ++j) {
      if (st[i].alive[j] && st[i].paths[j].length() == 0) left[i].push_back(st[i].paths[j]);
    }
  }

  // Rescan: no leftover path admits a join or a two-sided attachment.
  for (std::size_t i = 0; i < m && out.rescan_clean; ++i) {
    auto& s = st[i];
    std::fill(s.end_of.begin(), s.end_of.end(), kNone);
    for (auto idx : left_idx[i]) s.set_ends(idx);
    for (auto idx : left_idx[i]) {
      if (find_join(s, s.paths[idx].front()) || find_join(s, s.paths[idx].back()) ||
          try_attach(i, idx, false)) {
        out.rescan_clean = false;
        break;
      }
    }
  }
  if (!out.rescan_clean) out.warnings.push_back("rescan found an addable connector");

  for (std::size_t i = 0; i < m; ++i) {
    out.connected.emplace_back(std::move(connected[i]));
    out.leftover_paths += left[i].size();
    out.leftover.emplace_back(std::move(left[i]));
  }
  return out;
}

void to_json(nlohmann::json& j, const DenseFamily& f) {
  nlohmann::json scan = nlohmann::json::array();
  for (const auto& r : f.scan) {
    scan.push_back({{"round", r.round}, {"residual", r.residual}, {"found", r.found}});
  }
  j = {{"spots", f.spots},
       {"spec", {{"eta", f.spec.eta}, {"d", f.spec.d}, {"K", f.spec.K}}},
       {"scan", scan},
       {"maximal", f.maximal}};
}

void to_json(nlohmann::json& j, const SampleSet& s) {
  j = {{"X", s.X},
       {"p", s.p},
       {"gamma", s.gamma},
       {"eta", s.eta},
       {"K", s.K},
       {"k", s.k},
       {"k_eff", s.k_eff},
       {"union_sets", s.union_sets},
       {"certificate", s.certificate},
       {"audit",
        {{"size_ok", s.audit.size_ok},
         {"degrees_ok", s.audit.degrees_ok},
         {"spot_sizes_ok", s.audit.spot_sizes_ok},
         {"spot_degrees_ok", s.audit.spot_degrees_ok},
         {"inheritance_checked", s.audit.inheritance_checked},
         {"inheritance_failed", s.audit.inheritance_failed}}},
       {"warnings", s.warnings}};
}

void to_json(nlohmann::json& j, const ConnectionResult& r) {
  j = {{"connected", r.connected},
       {"leftover", r.leftover},
       {"joins", r.joins},
       {"attaches", r.attaches},
       {"leftover_paths", r.leftover_paths},
       {"leftover_target", r.leftover_target},
       {"rescan_clean", r.rescan_clean},
       {"input_bounds", r.input_bounds},
       {"warnings", r.warnings}};
}

}  // namespace pathdecomp
