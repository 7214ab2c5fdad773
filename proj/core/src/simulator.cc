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

#include "xcorr/simulator.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "xcorr/errors.h"
#include "xcorr/rng.h"

namespace xcorr {
namespace {

double AtLeastOnce(double p, int rounds) {
  if (rounds == 1) return p;
  return -std::expm1(static_cast<double>(rounds) * std::log1p(-p));
}

std::string SpecLabel(const TargetingSpec& spec) {
  return "output " + std::to_string(spec.output_id);
}

}  // namespace

TargetingSpec TargetingSpec::Targeted(OutputId id, Family core, double p_in,
                                      double p_out) {
  TargetingSpec s;
  s.output_id = id;
  s.mode = TargetingMode::kTargeted;
  s.core = std::move(core);
  s.p_in = p_in;
  s.p_out = p_out;
  return s;
}

TargetingSpec TargetingSpec::Untargeted(OutputId id, double p_empty) {
  TargetingSpec s;
  s.output_id = id;
  s.mode = TargetingMode::kUntargeted;
  s.p_empty = p_empty;
  return s;
}

void TargetingSpec::Validate(std::size_t n_inputs) const {
  if (mode == TargetingMode::kTargeted) {
    if (core.empty()) throw SpecError(SpecLabel(*this) + ": empty core family");
    if (!core.is_antichain()) {
      throw SpecError(SpecLabel(*this) + ": core family is not an antichain");
    }
    for (const auto& c : core) {
      if (c.empty()) {
        throw SpecError(SpecLabel(*this) + ": empty combination in core");
      }
      if (n_inputs > 0 && c.inputs().back() >= n_inputs) {
        throw SpecError(SpecLabel(*this) + ": core input out of range");
      }
    }
    if (!(p_out >= 0.0 && p_out < p_in && p_in <= 1.0)) {
      throw SpecError(SpecLabel(*this) +
                      ": need 0 <= p_out < p_in <= 1 (bounded noise)");
    }
  } else if (!(p_empty > 0.0 && p_empty <= 1.0)) {
    throw SpecError(SpecLabel(*this) + ": need 0 < p_empty <= 1");
  }
}

std::size_t ObservationSet::index_of(OutputId id) const {
  auto it = std::find(outputs.begin(), outputs.end(), id);
  if (it == outputs.end()) {
    throw MismatchedUniverse("unknown output " + std::to_string(id));
  }
  return static_cast<std::size_t>(it - outputs.begin());
}

std::size_t ContextualCounts::index_of(OutputId id) const {
  auto it = std::find(outputs.begin(), outputs.end(), id);
  if (it == outputs.end()) {
    throw MismatchedUniverse("unknown output " + std::to_string(id));
  }
  return static_cast<std::size_t>(it - outputs.begin());
}

std::pair<ObservationSet, SimulationTrace> SimulateBehavioral(
    const PlacementMatrix& placement, const std::vector<TargetingSpec>& specs,
    int rounds, std::uint64_t seed) {
  if (rounds < 1) throw SpecError("rounds must be >= 1");
  const std::size_t m = placement.n_accounts();
  const std::size_t n = placement.n_inputs();

  ObservationSet obs;
  obs.n_accounts = m;
  obs.rounds = rounds;
  SimulationTrace trace;

  for (const auto& spec : specs) {
    spec.Validate(n);
    Rng rng(DeriveSeed(seed, "behavioral", spec.output_id));
    BitSet active(m);
    OutputTrace t;
    t.output_id = spec.output_id;
    t.targeted = spec.targeted();
    t.core = spec.core;
    t.in_target = BitSet(m);
    t.out_of_target = BitSet(m);

    if (spec.targeted()) {
      std::vector<BitSet> core_bits;
      for (const auto& c : spec.core) core_bits.push_back(c.to_bits(n));
      const double hit_in = AtLeastOnce(spec.p_in, rounds);
      const double hit_out = AtLeastOnce(spec.p_out, rounds);
      for (std::size_t j = 0; j < m; ++j) {
        const bool in_target = EvalTargeting(
            core_bits, placement.account_bits(static_cast<AccountId>(j)));
        if (!rng.Bernoulli(in_target ? hit_in : hit_out)) continue;
        active.set(j);
        (in_target ? t.in_target : t.out_of_target).set(j);
      }
    } else {
      const double hit = AtLeastOnce(spec.p_empty, rounds);
      for (std::size_t j = 0; j < m; ++j) {
        if (rng.Bernoulli(hit)) {
          active.set(j);
          t.out_of_target.set(j);
        }
      }
    }
    obs.outputs.push_back(spec.output_id);
    obs.active.push_back(std::move(active));
    trace.outputs.push_back(std::move(t));
  }
  return {std::move(obs), std::move(trace)};
}

ContextualCounts SimulateContextual(const Combination& user_inputs,
                                    std::size_t n_inputs,
                                    const std::vector<TargetingSpec>& specs,
                                    int displays_per_input,
                                    std::uint64_t seed) {
  if (displays_per_input < 1) {
    throw SpecError("displays_per_input must be >= 1");
  }
  if (!user_inputs.empty() && user_inputs.inputs().back() >= n_inputs) {
    throw SpecError("user input out of range");
  }
  ContextualCounts out;
  out.n_inputs = n_inputs;
  out.displays_per_input = displays_per_input;
  for (const auto& spec : specs) {
    spec.Validate(n_inputs);
    if (spec.targeted() && spec.core.order() != 1) {
      throw SpecError(SpecLabel(spec) +
                      ": contextual targeting is limited to single inputs");
    }
    Rng rng(DeriveSeed(seed, "contextual", spec.output_id));
    std::vector<std::uint32_t> counts(n_inputs, 0);
    for (InputId i : user_inputs) {
      double p = spec.p_empty;
      if (spec.targeted()) {
        p = spec.core.contains(Combination{i}) ? spec.p_in : spec.p_out;
      }
      for (int d = 0; d < displays_per_input; ++d) {
        if (rng.Bernoulli(p)) ++counts[i];
      }
    }
    out.outputs.push_back(spec.output_id);
    out.counts.push_back(std::move(counts));
  }
  return out;
}

}  // namespace xcorr
