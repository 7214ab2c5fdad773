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

#include "xcorr/placement.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "xcorr/errors.h"
#include "xcorr/rng.h"

namespace xcorr {
namespace {

// Placement units in draw order: units are sorted by their smallest member,
// so with no explicit groups the draw sequence matches BernoulliPlacement.
std::vector<std::vector<InputId>> BuildUnits(
    const std::vector<std::vector<InputId>>& groups, std::size_t n_inputs) {
  std::vector<int> owner(n_inputs, -1);
  std::vector<std::vector<InputId>> units;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::vector<InputId> members = groups[g];
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty()) continue;
    for (InputId i : members) {
      if (i >= n_inputs) {
        throw ConfigError("group member " + std::to_string(i) +
                          " out of range");
      }
      if (owner[i] >= 0) {
        throw OverlapError("input " + std::to_string(i) +
                           " appears in more than one group");
      }
      owner[i] = static_cast<int>(g);
    }
    units.push_back(std::move(members));
  }
  for (std::size_t i = 0; i < n_inputs; ++i) {
    if (owner[i] < 0) units.push_back({static_cast<InputId>(i)});
  }
  std::sort(units.begin(), units.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return units;
}

}  // namespace

void PlacementConfig::Validate() const {
  if (n_inputs < 1) throw ConfigError("placement needs at least one input");
  if (n_accounts < 1) throw ConfigError("placement needs at least one account");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
}

PlacementMatrix::PlacementMatrix(const PlacementConfig& cfg,
                                 BitMatrix membership)
    : rows_(std::move(membership)),
      cols_(rows_.transposed()),
      alpha_(cfg.alpha),
      seed_(cfg.seed) {}

std::size_t SizedAccountCount(std::size_t n_inputs, double c) {
  if (n_inputs < 2) {
    throw DomainError("account sizing needs N >= 2, got " +
                      std::to_string(n_inputs));
  }
  if (!(c > 0.0)) throw DomainError("account constant must be positive");
  const double m = std::ceil(c * std::log(static_cast<double>(n_inputs)));
  return std::max<std::size_t>(2, static_cast<std::size_t>(m));
}

PlacementMatrix BernoulliPlacement(const PlacementConfig& cfg) {
  return GroupedPlacement({}, cfg);
}

PlacementMatrix GroupedPlacement(const std::vector<std::vector<InputId>>& groups,
                                 const PlacementConfig& cfg) {
  cfg.Validate();
  const auto units = BuildUnits(groups, cfg.n_inputs);
  BitMatrix membership(cfg.n_accounts, cfg.n_inputs);
  Rng rng(cfg.seed);
  for (std::size_t j = 0; j < cfg.n_accounts; ++j) {
    for (const auto& unit : units) {
      if (!rng.Bernoulli(cfg.alpha)) continue;
      for (InputId i : unit) membership.set(j, i);
    }
  }
  return PlacementMatrix(cfg, std::move(membership));
}

}  // namespace xcorr
