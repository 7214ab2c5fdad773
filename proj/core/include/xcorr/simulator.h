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

#ifndef XCORR_SIMULATOR_H_
#define XCORR_SIMULATOR_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xcorr/bitset.h"
#include "xcorr/core_model.h"
#include "xcorr/placement.h"

namespace xcorr {

using OutputId = std::uint32_t;

enum class TargetingMode { kTargeted, kUntargeted };

// Ground truth for one output (ad). A targeted spec doubles as the black-box
// targeting function: in-target accounts see it with p_in, others with p_out.
struct TargetingSpec {
  OutputId output_id = 0;
  TargetingMode mode = TargetingMode::kUntargeted;
  Family core;         // kTargeted only; non-empty antichain
  double p_in = 0.0;   // kTargeted only
  double p_out = 0.0;  // kTargeted only, p_out < p_in (bounded noise)
  double p_empty = 0.0;  // kUntargeted only
  std::optional<std::string> group_tag;

  static TargetingSpec Targeted(OutputId id, Family core, double p_in,
                                double p_out);
  static TargetingSpec Untargeted(OutputId id, double p_empty);

  bool targeted() const { return mode == TargetingMode::kTargeted; }

  // Throws SpecError on invariant violations. `n_inputs` bounds input ids
  // when non-zero.
  void Validate(std::size_t n_inputs = 0) const;
};

// Behavioral observations: for every output, A_k, the accounts that saw it at
// least once during `rounds` collection rounds.
struct ObservationSet {
  std::size_t n_accounts = 0;
  int rounds = 1;
  std::vector<OutputId> outputs;
  std::vector<BitSet> active;  // parallel to `outputs`, bits over accounts

  std::size_t index_of(OutputId id) const;
};

// Per output, the ground-truth split of A_k into in-target and out-of-target
// accounts. Withheld from detection; only the scorer reads it.
struct OutputTrace {
  OutputId output_id = 0;
  bool targeted = false;
  Family core;
  BitSet in_target;      // accounts of A_k where f = 1
  BitSet out_of_target;  // accounts of A_k where f = 0
};

struct SimulationTrace {
  std::vector<OutputTrace> outputs;
};

// Contextual observations on the user account: counts[k][i] is how many times
// output k was displayed next to input i.
struct ContextualCounts {
  std::size_t n_inputs = 0;
  int displays_per_input = 0;
  std::vector<OutputId> outputs;
  std::vector<std::vector<std::uint32_t>> counts;  // parallel to `outputs`

  std::size_t index_of(OutputId id) const;
};

// Seen-at-least-once over `rounds` collapses to one Bernoulli draw with
// probability 1 - (1 - p)^rounds per (output, account). Each output draws from
// its own sub-seed, so outputs are independent of one another.
std::pair<ObservationSet, SimulationTrace> SimulateBehavioral(
    const PlacementMatrix& placement, const std::vector<TargetingSpec>& specs,
    int rounds, std::uint64_t seed);

// Every display slot next to a user input is a Bernoulli draw: p_in when the
// output's core holds that single input, p_out otherwise, p_empty when
// untargeted. Contextual targeting is order-1, so targeted specs must have
// order-1 cores.
ContextualCounts SimulateContextual(const Combination& user_inputs,
                                    std::size_t n_inputs,
                                    const std::vector<TargetingSpec>& specs,
                                    int displays_per_input, std::uint64_t seed);

}  // namespace xcorr

#endif  // XCORR_SIMULATOR_H_
