// Copyright 2026 The xcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xcorr/set_intersection.h"

#include <cmath>
#include <string>
#include <vector>

#include "xcorr/errors.h"

namespace xcorr {

void SetIntersectionConfig::Validate() const {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ConfigError("set intersection threshold must be in (0, 1]");
  }
  if (min_active_accounts < 1) {
    throw ConfigError("min_active_accounts must be >= 1");
  }
  if (max_combination_size && *max_combination_size < 1) {
    throw ConfigError("max_combination_size must be >= 1");
  }
  if (inactive_max_fraction &&
      !(*inactive_max_fraction >= 0.0 && *inactive_max_fraction <= 1.0)) {
    throw ConfigError("inactive_max_fraction must be in [0, 1]");
  }
}

Prediction PredictSetIntersection(OutputId output_id, BitSpan active,
                                  const PlacementMatrix& placement,
                                  const SetIntersectionConfig& cfg) {
  cfg.Validate();
  const std::size_t m = placement.n_accounts();
  if (active.size() != m) {
    throw MismatchedUniverse("active set has " + std::to_string(active.size()) +
                             " accounts, placement has " + std::to_string(m));
  }
  const std::size_t n_active = active.count();
  if (n_active < cfg.min_active_accounts) {
    Prediction p = Prediction::Unknown(output_id);
    p.scores["setint"] = 1.0;
    return p;
  }
  const double denom = static_cast<double>(n_active);
  const std::size_t n_inactive = m - n_active;

  std::vector<InputId> kept;
  BitSet holders(m);
  bool first = true;
  for (std::size_t i = 0; i < placement.n_inputs(); ++i) {
    const BitSpan col = placement.input_accounts(static_cast<InputId>(i));
    const std::size_t hits = IntersectCount(col, active);
    if (!(static_cast<double>(hits) / denom > cfg.threshold)) continue;
    if (cfg.inactive_max_fraction && n_inactive > 0) {
      const std::size_t inactive_hits = col.count() - hits;
      if (static_cast<double>(inactive_hits) /
              static_cast<double>(n_inactive) >
          *cfg.inactive_max_fraction) {
        continue;
      }
    }
    kept.push_back(static_cast<InputId>(i));
    if (first) {
      holders |= col;
      first = false;
    } else {
      holders &= col;
    }
  }

  auto untargeted = [&] {
    Prediction p = Prediction::Untargeted(output_id);
    p.scores["setint"] = 1.0;
    return p;
  };
  if (kept.empty()) return untargeted();
  if (cfg.max_combination_size && kept.size() > *cfg.max_combination_size) {
    return untargeted();
  }
  const double covered =
      static_cast<double>(IntersectCount(holders, active)) / denom;
  if (covered < cfg.threshold) return untargeted();

  Prediction p =
      Prediction::Targeted(output_id, Family{Combination(std::move(kept))});
  p.scores["setint"] = 1.0;
  return p;
}

}  // namespace xcorr
