#include "pathdecomp/engine.hpp"

namespace pathdecomp {

void to_json(nlohmann::json& j, const Certificate& c) {
  auto hist = nlohmann::json::array();
  for (const auto& r : c.history) {
    hist.push_back({{"round", r.round}, {"failed_count", r.failed_count}, {"failed", r.failed}});
  }
  j = {{"success", c.success}, {"rounds", c.rounds},   {"seed", c.seed},
       {"mode", c.mode},       {"history", hist}, {"surviving", c.surviving}};
}

}  // namespace pathdecomp
