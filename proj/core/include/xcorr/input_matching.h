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

#ifndef XCORR_INPUT_MATCHING_H_
#define XCORR_INPUT_MATCHING_H_

#include <cstdint>
#include <map>
#include <vector>

#include "xcorr/core_model.h"
#include "xcorr/simulator.h"

namespace xcorr {

// Per-input display counts, one coordinate per output.
struct ContextualSignature {
  InputId input_id = 0;
  std::map<OutputId, double> coords;

  bool is_zero() const;
};

std::vector<ContextualSignature> BuildSignatures(
    const ContextualCounts& counts);

enum class DistanceMode { kNormalized, kRaw };

// Euclidean distance over the union of dimensions. kNormalized scales each
// signature to unit L2 norm first; an all-zero signature stays zero.
double SignatureDistance(const ContextualSignature& a,
                         const ContextualSignature& b,
                         DistanceMode mode = DistanceMode::kNormalized);

inline constexpr double kDefaultMatchThreshold = 0.5;

// Single-linkage clustering: clusters merge while some cross pair is closer
// than `threshold`. All-zero signatures stay singletons. Groups are sorted
// inputs, ordered by their smallest member.
std::vector<std::vector<InputId>> ClusterInputs(
    const std::vector<ContextualSignature>& signatures, double threshold,
    DistanceMode mode = DistanceMode::kNormalized);

}  // namespace xcorr

#endif  // XCORR_INPUT_MATCHING_H_
