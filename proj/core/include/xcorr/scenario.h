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

#ifndef XCORR_SCENARIO_H_
#define XCORR_SCENARIO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xcorr/bayes.h"
#include "xcorr/metrics.h"
#include "xcorr/set_intersection.h"

namespace xcorr {

enum class WorkloadKind { kNonOverlapping, kOverlapping };

struct WorkloadConfig {
  WorkloadKind kind = WorkloadKind::kNonOverlapping;
  // Absolute counts; the per-input variants, when non-zero, scale with N and
  // take precedence.
  std::size_t targeted_ads = 0;
  std::size_t untargeted_ads = 0;
  double targeted_per_input = 0.0;
  double untargeted_per_input = 0.0;
  // Shape of each targeted core on non-overlapping workloads: l
  // combinations of r inputs each.
  std::size_t core_l = 1;
  std::size_t core_r = 1;
  // Overlapping workloads: inputs form `groups` blocks of `group_size`; each
  // group gets `ads_per_group` ads targeting any of its members.
  std::size_t groups = 0;
  std::size_t group_size = 0;
  std::size_t ads_per_group = 1;
};

struct ServiceConfig {
  double p_in = 0.7;
  double p_out = 0.01;
  double p_empty = 0.1;
  bool contextual = false;
  double ctx_p_in = 0.5;
  double ctx_p_out = 0.01;
  double ctx_p_empty = 0.02;
  int displays_per_input = 10;
};

struct PlacementSettings {
  std::optional<double> alpha;  // nullopt selects the recommended alpha
  std::optional<std::size_t> accounts;
  double c = 4.0;  // used when `accounts` is unset
  bool matching = false;
  double match_threshold = 0.5;
  bool raw_distance = false;
};

struct BayesSettings {
  double score_floor = kDefaultScoreFloor;
  bool learn = true;
  ModelParams init;
  LearnOptions options;
};

struct CoreFamilySettings {
  std::optional<double> x;      // nullopt selects the recommended x
  std::optional<double> ratio;  // nullopt uses p_out / p_in
  std::size_t l_max = 1;
  std::optional<std::size_t> r_max;
  std::optional<std::uint64_t> test_budget;
  std::size_t min_active = 1;
  // nullopt derives the size from x, alpha, l_max and n_inputs.
  std::optional<std::size_t> min_conditional;
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::string preset;
  std::size_t n_inputs = 20;
  std::size_t trials = 10;
  int rounds = 1;
  std::uint64_t seed = 1;
  std::size_t threads = 0;  // 0 selects the hardware concurrency
  WorkloadConfig workload;
  ServiceConfig service;
  PlacementSettings placement;
  std::vector<std::string> algorithms{"bayes"};
  SetIntersectionConfig setint;
  BayesSettings bayes;
  CoreFamilySettings corefamily;
  MatchMode match_mode = MatchMode::kExact;

  // Throws ConfigError.
  void Validate() const;

  std::size_t targeted_ads() const;
  std::size_t untargeted_ads() const;
  std::size_t accounts() const;
  double alpha() const;
  double detection_x() const;
  double detection_ratio() const;
  std::size_t min_conditional() const;
  bool uses(std::string_view algorithm) const;
};

// Known algorithm names.
const std::vector<std::string>& AlgorithmNames();

// Low-coverage service with a weak contextual channel.
ScenarioConfig GmailLikePreset();
// High-coverage service.
ScenarioConfig AmazonLikePreset();
// Throws ConfigError on an unknown preset.
ScenarioConfig PresetByName(std::string_view name);

// Parses a scenario. A "preset" key seeds the defaults that the remaining
// keys override. Throws ConfigError with a line number on malformed input,
// unknown keys or invalid values.
ScenarioConfig ParseScenario(std::string_view json_text);
ScenarioConfig LoadScenario(const std::filesystem::path& path);

// Canonical JSON (sorted keys, two-space indent) of the full configuration.
std::string ScenarioToJson(const ScenarioConfig& cfg);

// FNV-1a hash of the canonical JSON, as 16 hex digits.
std::string ScenarioHash(const ScenarioConfig& cfg);

}  // namespace xcorr

#endif  // XCORR_SCENARIO_H_
