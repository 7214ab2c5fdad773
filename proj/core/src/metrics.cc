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

#include "xcorr/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "xcorr/errors.h"

namespace xcorr {

Interval WilsonInterval(std::uint64_t successes, std::uint64_t trials,
                        double z) {
  if (trials == 0) return {};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::string_view ToString(MatchMode mode) {
  return mode == MatchMode::kExact ? "exact" : "subset";
}

MatchMode MatchModeFromString(std::string_view name) {
  if (name == "exact") return MatchMode::kExact;
  if (name == "subset") return MatchMode::kSubset;
  throw ConfigError("unknown match mode '" + std::string(name) + "'");
}

Confusion& Confusion::operator+=(const Confusion& other) {
  outputs += other.outputs;
  truly_targeted += other.truly_targeted;
  emitted += other.emitted;
  correct += other.correct;
  false_positive += other.false_positive;
  unknown += other.unknown;
  return *this;
}

bool IsCorrect(const Prediction& prediction, const OutputTrace& truth,
               MatchMode mode) {
  if (!truth.targeted) return prediction.verdict == Verdict::kUntargeted;
  if (!prediction.targeted()) return false;
  if (mode == MatchMode::kExact) return prediction.family == truth.core;
  if (prediction.family.empty()) return false;
  return std::all_of(
      prediction.family.begin(), prediction.family.end(),
      [&](const Combination& c) { return truth.core.contains(c); });
}

Confusion Score(const std::vector<Prediction>& predictions,
                const SimulationTrace& trace, MatchMode mode) {
  if (predictions.size() != trace.outputs.size()) {
    throw MismatchedUniverse("prediction and trace counts differ");
  }
  std::map<OutputId, const OutputTrace*> truth;
  for (const auto& t : trace.outputs) truth[t.output_id] = &t;
  Confusion c;
  for (const auto& p : predictions) {
    auto it = truth.find(p.output_id);
    if (it == truth.end()) {
      throw MismatchedUniverse("prediction for unknown output " +
                               std::to_string(p.output_id));
    }
    const OutputTrace& t = *it->second;
    ++c.outputs;
    if (t.targeted) ++c.truly_targeted;
    if (p.verdict == Verdict::kUnknown) ++c.unknown;
    if (!p.targeted()) continue;
    ++c.emitted;
    if (!t.targeted) {
      ++c.false_positive;
    } else if (IsCorrect(p, t, mode)) {
      ++c.correct;
    }
  }
  return c;
}

Metrics Summarize(const Confusion& counts) {
  Metrics m;
  m.counts = counts;
  if (counts.emitted == 0) {
    m.precision = 1.0;
    m.empty_emission = true;
  } else {
    m.precision = static_cast<double>(counts.correct) /
                  static_cast<double>(counts.emitted);
  }
  m.recall = counts.truly_targeted == 0
                 ? 0.0
                 : static_cast<double>(counts.correct) /
                       static_cast<double>(counts.truly_targeted);
  m.precision_ci = WilsonInterval(counts.correct, counts.emitted);
  m.recall_ci = WilsonInterval(counts.correct, counts.truly_targeted);
  return m;
}

Metrics PrecisionRecall(const std::vector<Prediction>& predictions,
                        const SimulationTrace& trace, MatchMode mode) {
  return Summarize(Score(predictions, trace, mode));
}

std::optional<LinearFit> FitLine(const std::vector<double>& x,
                                 const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) return std::nullopt;
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

}  // namespace xcorr
