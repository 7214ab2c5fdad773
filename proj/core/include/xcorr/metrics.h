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

#ifndef XCORR_METRICS_H_
#define XCORR_METRICS_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "xcorr/prediction.h"
#include "xcorr/simulator.h"

namespace xcorr {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

inline constexpr double kZ95 = 1.959963984540054;

// Wilson score interval; [0, 1] when trials == 0.
Interval WilsonInterval(std::uint64_t successes, std::uint64_t trials,
                        double z = kZ95);

// kExact: a targeted prediction is correct iff its family equals the true
// core. kSubset: iff it is a non-empty subset of the true core, which credits
// group-level predictions on overlapping workloads.
enum class MatchMode { kExact, kSubset };

std::string_view ToString(MatchMode mode);
// Throws ConfigError on an unknown name.
MatchMode MatchModeFromString(std::string_view name);

struct Confusion {
  std::uint64_t outputs = 0;
  std::uint64_t truly_targeted = 0;
  std::uint64_t emitted = 0;          // TARGETED predictions
  std::uint64_t correct = 0;          // correct TARGETED predictions
  std::uint64_t false_positive = 0;   // TARGETED on an untargeted output
  std::uint64_t unknown = 0;

  Confusion& operator+=(const Confusion& other);
  friend bool operator==(const Confusion&, const Confusion&) = default;
};

struct Metrics {
  Confusion counts;
  double precision = 1.0;
  double recall = 0.0;
  bool empty_emission = false;
  Interval precision_ci;
  Interval recall_ci;
};

bool IsCorrect(const Prediction& prediction, const OutputTrace& truth,
               MatchMode mode);

// Predictions and trace outputs are matched by output id. Throws
// MismatchedUniverse when the id sets differ.
Confusion Score(const std::vector<Prediction>& predictions,
                const SimulationTrace& trace, MatchMode mode);

Metrics Summarize(const Confusion& counts);

Metrics PrecisionRecall(const std::vector<Prediction>& predictions,
                        const SimulationTrace& trace,
                        MatchMode mode = MatchMode::kExact);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Least squares y = slope * x + intercept; nullopt with fewer than two
// distinct x values.
std::optional<LinearFit> FitLine(const std::vector<double>& x,
                                 const std::vector<double>& y);

}  // namespace xcorr

#endif  // XCORR_METRICS_H_
