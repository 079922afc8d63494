#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "pathdecomp/errors.hpp"
#include "pathdecomp/random.hpp"

namespace pathdecomp {

struct Violation {
  std::string id;
  // Random variables the failed event depends on; consumed by scoped
  // resampling.
  std::vector<std::size_t> scope;
};

template <class S>
struct BadEvent {
  std::string id;
  std::function<bool(const S&)> occurs;
  std::vector<std::size_t> scope;
};

// A batch of bad events evaluated together, appending the ones that occur.
template <class S>
struct EventFamily {
  std::string name;
  std::function<void(const S&, std::vector<Violation>&)> check;
};

template <class S>
EventFamily<S> single_event(BadEvent<S> ev) {
  return {ev.id, [ev](const S& s, std::vector<Violation>& out) {
            if (ev.occurs(s)) out.push_back({ev.id, ev.scope});
          }};
}

enum class ResampleMode { FullRestart, ScopedResample };

struct ResamplePolicy {
  ResampleMode mode = ResampleMode::FullRestart;
  std::size_t max_rounds = 1000;
  std::uint64_t seed = 0;
};

struct RoundRecord {
  std::size_t round = 0;
  std::size_t failed_count = 0;
  std::vector<std::string> failed;  // first few ids only
};

struct Certificate {
  bool success = false;
  std::size_t rounds = 0;
  std::uint64_t seed = 0;
  std::string mode;
  std::vector<RoundRecord> history;
  std::vector<std::string> surviving;
};

void to_json(nlohmann::json& j, const Certificate& c);

template <class S>
struct Sampler {
  std::function<S(Rng&)> draw;
  // Redraws the listed variables in place. Required for scoped resampling.
  std::function<void(S&, const std::vector<std::size_t>&, Rng&)> resample;
};

template <class S>
struct EngineResult {
  S structure;
  Certificate certificate;
  bool ok() const { return certificate.success; }
};

namespace detail {

inline constexpr std::size_t kRecordedIds = 16;

template <class S>
std::vector<Violation> evaluate(const S& s, const std::vector<EventFamily<S>>& events) {
  std::vector<Violation> out;
  for (const auto& fam : events) fam.check(s, out);
  return out;
}

}  // namespace detail

// Samples until no bad event occurs or the round budget runs out. Each round
// draws from its own stream derived from (seed, round), so results depend
// only on the policy. On exhaustion the attempt with the fewest violations is
// returned together with its surviving events.
template <class S>
EngineResult<S> run_until_good(const Sampler<S>& sampler,
                               const std::vector<EventFamily<S>>& events,
                               const ResamplePolicy& policy) {
  if (policy.mode == ResampleMode::ScopedResample && !sampler.resample) {
    throw PreconditionError("scoped resampling needs a resample function");
  }
  Certificate cert;
  cert.seed = policy.seed;
  cert.mode = policy.mode == ResampleMode::FullRestart ? "full-restart" : "scoped-resample";
  const std::size_t rounds = std::max<std::size_t>(policy.max_rounds, 1);

  Rng rng0 = make_rng(policy.seed, 0);
  S current = sampler.draw(rng0);
  std::optional<S> best;
  std::vector<Violation> best_viol;
  for (std::size_t r = 1; r <= rounds; ++r) {
    auto viol = detail::evaluate(current, events);
    RoundRecord rec;
    rec.round = r;
    rec.failed_count = viol.size();
    for (std::size_t i = 0; i < viol.size() && i < detail::kRecordedIds; ++i) {
      rec.failed.push_back(viol[i].id);
    }
    cert.history.push_back(std::move(rec));
    cert.rounds = r;
    if (viol.empty()) {
      if (!detail::evaluate(current, events).empty()) {
        throw Error("bad events changed between evaluations");
      }
      cert.success = true;
      return {std::move(current), std::move(cert)};
    }
    if (!best || viol.size() < best_viol.size()) {
      best = current;
      best_viol = viol;
    }
    if (r == rounds) break;
    Rng rng = make_rng(policy.seed, r);
    if (policy.mode == ResampleMode::FullRestart) {
      current = sampler.draw(rng);
    } else {
      std::vector<std::size_t> scope;
      for (const auto& v : viol) scope.insert(scope.end(), v.scope.begin(), v.scope.end());
      std::sort(scope.begin(), scope.end());
      scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
      sampler.resample(current, scope, rng);
    }
  }
  for (const auto& v : best_viol) cert.surviving.push_back(v.id);
  return {std::move(*best), std::move(cert)};
}

template <class S>
S require_good(const Sampler<S>& sampler, const std::vector<EventFamily<S>>& events,
               const ResamplePolicy& policy, const std::string& what,
               Certificate* cert_out = nullptr) {
  auto res = run_until_good(sampler, events, policy);
  if (cert_out) *cert_out = res.certificate;
  if (!res.ok()) {
    throw BudgetExhausted(what + ": " + std::to_string(res.certificate.surviving.size()) +
                          " bad events survive after " +
                          std::to_string(res.certificate.rounds) + " rounds");
  }
  return std::move(res.structure);
}

// Runs one engine per seed on `threads` workers. The winner is the lowest
// seed index that succeeds, so the answer does not depend on scheduling.
template <class S>
EngineResult<S> race_until_good(const Sampler<S>& sampler,
                                const std::vector<EventFamily<S>>& events,
                                ResamplePolicy policy, const std::vector<std::uint64_t>& seeds,
                                std::size_t threads) {
  if (seeds.empty()) throw PreconditionError("racing needs at least one seed");
  threads = std::max<std::size_t>(1, std::min(threads, seeds.size()));
  std::vector<std::optional<EngineResult<S>>> results(seeds.size());
  for (std::size_t base = 0; base < seeds.size(); base += threads) {
    std::vector<std::thread> pool;
    for (std::size_t i = base; i < std::min(seeds.size(), base + threads); ++i) {
      pool.emplace_back([&, i] {
        ResamplePolicy p = policy;
        p.seed = seeds[i];
        results[i] = run_until_good(sampler, events, p);
      });
    }
    for (auto& t : pool) t.join();
    for (std::size_t i = base; i < std::min(seeds.size(), base + threads); ++i) {
      if (results[i]->ok()) return std::move(*results[i]);
    }
  }
  return std::move(*results.front());
}

}  // namespace pathdecomp
