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

#ifndef XCORR_SET_INTERSECTION_H_
#define XCORR_SET_INTERSECTION_H_

#include <cstddef>
#include <optional>

#include "xcorr/bitset.h"
#include "xcorr/placement.h"
#include "xcorr/prediction.h"

namespace xcorr {

struct SetIntersectionConfig {
  std::size_t min_active_accounts = 3;
  double threshold = 0.9;  // in (0, 1]
  // Rejects targeted sets larger than this when set.
  std::optional<std::size_t> max_combination_size;
  // Drops inputs whose frequency among inactive accounts exceeds this bound.
  std::optional<double> inactive_max_fraction;

  // Throws ConfigError.
  void Validate() const;
};

// Step 1: fewer than min_active_accounts active accounts gives UNKNOWN.
// Step 2: keep inputs present in more than `threshold` of the active accounts.
// Step 3: UNTARGETED unless at least `threshold` of the active accounts hold
// the whole kept set.
Prediction PredictSetIntersection(OutputId output_id, BitSpan active,
                                  const PlacementMatrix& placement,
                                  const SetIntersectionConfig& cfg);

}  // namespace xcorr

#endif  // XCORR_SET_INTERSECTION_H_
