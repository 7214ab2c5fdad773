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

#ifndef XCORR_EXPERIMENT_H_
#define XCORR_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xcorr/bayes.h"
#include "xcorr/metrics.h"
#include "xcorr/placement.h"
#include "xcorr/prediction.h"
#include "xcorr/scenario.h"
#include "xcorr/simulator.h"

namespace xcorr {

// Targeting specs for one trial. Targeted outputs come first.
std::vector<TargetingSpec> GenerateWorkload(const ScenarioConfig& cfg,
                                            std::uint64_t seed);

// Ground-truth input groups: workload groups plus singletons for the rest.
std::vector<std::vector<InputId>> TrueGroups(const ScenarioConfig& cfg);

// Fraction of inputs whose cluster lies inside their true group and is the
// largest such cluster of that group.
double GroupingPurity(const std::vector<std::vector<InputId>>& clusters,
                      const std::vector<std::vector<InputId>>& truth,
                      std::size_t n_inputs);

struct TrialData {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::vector<TargetingSpec> specs;
  std::optional<ContextualCounts> contextual;
  // Clusters used for placement when matching is on, else empty.
  std::vector<std::vector<InputId>> clusters;
  PlacementMatrix placement;
  ObservationSet observations;
  SimulationTrace trace;
};

// Contextual collection, matching, placement and behavioral simulation for
// one trial, all seeded from (cfg.seed, trial).
TrialData GenerateTrial(const ScenarioConfig& cfg, std::size_t trial);

struct DetectionStats {
  std::uint64_t targeted = 0;
  std::uint64_t targeted_detected = 0;
  std::uint64_t untargeted = 0;
  std::uint64_t untargeted_detected = 0;

  DetectionStats& operator+=(const DetectionStats& other);
  double true_positive_rate() const;
  double false_positive_rate() const;
};

struct SearchStats {
  std::uint64_t searches = 0;
  std::uint64_t tests_total = 0;
  std::uint64_t tests_max = 0;
  std::uint64_t unknowns = 0;
  std::uint64_t budget_exceeded = 0;
  // Removal searches whose test count exceeded l * r^l * N.
  std::uint64_t bound_violations = 0;

  SearchStats& operator+=(const SearchStats& other);
};

struct LearnedRecord {
  ModelParams params;
  int iterations = 0;
  bool converged = false;
};

struct TrialResult {
  std::map<std::string, std::vector<Prediction>> predictions;
  std::map<std::string, Confusion> confusion;
  std::optional<LearnedRecord> behavioral;
  std::optional<LearnedRecord> contextual;
  std::optional<DetectionStats> detection;
  std::map<std::string, SearchStats> search;
  std::optional<double> purity;
};

TrialResult RunTrial(const ScenarioConfig& cfg, const TrialData& data);

// Scores each algorithm's predictions against the trace.
std::map<std::string, Confusion> ScorePredictions(
    const ScenarioConfig& cfg,
    const std::map<std::string, std::vector<Prediction>>& predictions,
    const SimulationTrace& trace);

struct AlgorithmReport {
  Metrics metrics;
  std::vector<Confusion> per_trial;
};

struct Report {
  ScenarioConfig config;
  std::size_t accounts = 0;
  double alpha = 0.0;
  std::optional<double> detection_x;
  std::map<std::string, AlgorithmReport> algorithms;
  std::vector<LearnedRecord> learned_behavioral;
  std::vector<LearnedRecord> learned_contextual;
  std::optional<DetectionStats> detection;
  std::map<std::string, SearchStats> search;
  std::optional<double> mean_purity;
  // Wall-clock time; kept out of the canonical JSON.
  double runtime_seconds = 0.0;
};

struct RunOptions {
  // Writes config, observations, traces and predictions under
  // <store_root>/<scenario hash>/ when set.
  std::optional<std::filesystem::path> store_root;
};

Report RunScenario(const ScenarioConfig& cfg, const RunOptions& options = {});

// Runs fn(0..n-1) on up to `threads` workers (0 = hardware concurrency).
void ParallelFor(std::size_t n, std::size_t threads,
                 const std::function<void(std::size_t)>& fn);

struct CurvePoint {
  std::size_t accounts = 0;
  Metrics metrics;
};

struct KneeResult {
  std::size_t knee = 0;
  double plateau_recall = 0.0;
  bool plateau_found = false;
  std::vector<CurvePoint> curve;  // every evaluated account count, ascending
};

inline constexpr double kKneeFraction = 0.95;

// Metrics of `algorithm` at each account count.
std::vector<CurvePoint> RecallCurve(const ScenarioConfig& base,
                                    const std::string& algorithm,
                                    const std::vector<std::size_t>& accounts);

// Plateau = recall at 4 * m_max. The knee is the smallest account count in
// [2, 4 * m_max] whose recall reaches `fraction` of the plateau, found by
// binary search. The plateau counts as found when recall at 2 * m_max is
// within 0.05 of it and positive.
KneeResult FindKnee(const ScenarioConfig& base, const std::string& algorithm,
                    std::size_t m_max, double fraction = kKneeFraction);

struct ScalingRow {
  std::size_t n_inputs = 0;
  KneeResult knee;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  // knee ~ slope * ln N + intercept; unset for fewer than two rows.
  std::optional<LinearFit> fit;
};

// Throws ConfigError unless `n_values` is strictly ascending.
ScalingResult ScalingSweep(const ScenarioConfig& base,
                           const std::vector<std::size_t>& n_values,
                           const std::string& algorithm, std::size_t m_max);

struct AccountFit {
  double c = 0.0;
  std::size_t accounts = 0;
  int evaluations = 0;
};

// Smallest c in [c_lo, c_hi] (to relative precision rel_tol) for which
// `acceptable(SizedAccountCount(n_inputs, c))` holds, assuming acceptance is
// monotone in the account count. Throws ConvergenceError if c_hi fails.
AccountFit FitAccountConstant(
    std::size_t n_inputs, const std::function<bool(std::size_t)>& acceptable,
    double c_lo, double c_hi, double rel_tol = 0.02);

}  // namespace xcorr

#endif  // XCORR_EXPERIMENT_H_
