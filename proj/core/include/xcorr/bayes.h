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

#ifndef XCORR_BAYES_H_
#define XCORR_BAYES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xcorr/bitset.h"
#include "xcorr/placement.h"
#include "xcorr/prediction.h"
#include "xcorr/simulator.h"

namespace xcorr {

struct ModelParams {
  double p_in = 0.7;
  double p_out = 0.01;
  double p_empty = 0.1;
  // One prior per input followed by the untargeted prior. Empty means
  // uniform 1/(N+1).
  std::vector<double> priors;

  // Throws ConfigError. `n_inputs` checks the prior vector length when set.
  void Validate(std::size_t n_inputs = 0) const;
  double log_prior(std::size_t hypothesis, std::size_t n_inputs) const;
};

// Defaults for the contextual channel, read as display-location shares:
// p_in + (N - 1) p_out = 1 and p_empty = 1/N.
ModelParams DefaultContextualParams(std::size_t n_inputs);

// Hypotheses D_0..D_{N-1} then D_empty (index N).
struct Posterior {
  std::vector<double> probs;
  double log_normalizer = 0.0;  // log P(observations)
  std::size_t argmax = 0;       // lowest input id wins ties, D_empty last

  std::size_t n_inputs() const { return probs.empty() ? 0 : probs.size() - 1; }
  bool argmax_is_input() const { return argmax < n_inputs(); }
  double max() const { return probs.empty() ? 0.0 : probs[argmax]; }
};

// Log-likelihood of the active set under D_i (`input_accounts` = A_i) or,
// with nullopt, under D_empty.
double BehavioralLogLikelihood(BitSpan active,
                               std::optional<BitSpan> input_accounts,
                               const ModelParams& params);

// Same quantity from the four cell counts: a = |A_i & A_k|, b = |A_i & ~A_k|,
// c = |~A_i & A_k|, d = |~A_i & ~A_k|.
double BehavioralLogLikelihood(std::size_t a, std::size_t b, std::size_t c,
                               std::size_t d, const ModelParams& params);

// Log-likelihood of per-input display counts under D_i or, with nullopt,
// under D_empty.
double ContextualLogLikelihood(std::span<const std::uint32_t> counts,
                               std::optional<InputId> input,
                               const ModelParams& params);

// Normalizes log-scores (one per hypothesis) with log-sum-exp.
Posterior PosteriorFromLogScores(std::vector<double> log_scores);

Posterior BehavioralPosterior(BitSpan active, const PlacementMatrix& placement,
                              const ModelParams& params);

Posterior ContextualPosterior(std::span<const std::uint32_t> counts,
                              const ModelParams& params);

inline constexpr double kDefaultScoreFloor = 0.5;

// TARGETED({argmax}) when the argmax is an input with posterior >= floor,
// UNTARGETED otherwise. `score_key` names the entry in the score map.
Prediction PredictFromPosterior(OutputId output_id, const Posterior& posterior,
                                double score_floor,
                                const std::string& score_key);

Prediction BayesPredict(OutputId output_id, BitSpan active,
                        const PlacementMatrix& placement,
                        const ModelParams& params,
                        double score_floor = kDefaultScoreFloor);

// Mean of the present scores; nullopt when both are absent.
std::optional<double> CompositeScore(std::optional<double> behavioral,
                                     std::optional<double> contextual);

// Averages the present posteriors hypothesis by hypothesis and predicts from
// the averaged vector. UNKNOWN when both are absent.
Prediction CompositePredict(OutputId output_id, const Posterior* behavioral,
                            const Posterior* contextual,
                            double score_floor = kDefaultScoreFloor);

struct LearnOptions {
  double tol = 1e-3;
  int max_iter = 50;
  double score_floor = kDefaultScoreFloor;
};

struct LearnResult {
  ModelParams params;
  int iterations = 0;
  bool converged = false;
  std::vector<ModelParams> trace;  // parameters after each iteration
};

// Alternates predictions and moment re-estimation. Targeted predictions
// {i} contribute p_in = sum|A_i & A_k| / sum|A_i| and
// p_out = sum|A_k \ A_i| / sum(m - |A_i|); untargeted predictions contribute
// p_empty = sum|A_k| / (count * m). A parameter with no supporting
// predictions keeps its previous value.
LearnResult LearnParams(const ObservationSet& observations,
                        const PlacementMatrix& placement,
                        const ModelParams& init, const LearnOptions& options);

// Contextual counterpart: p_in is the share of displays at the predicted
// input over targeted predictions, p_out = (1 - p_in)/(N - 1), p_empty = 1/N.
LearnResult LearnContextualParams(const ContextualCounts& counts,
                                  const ModelParams& init,
                                  const LearnOptions& options);

}  // namespace xcorr

#endif  // XCORR_BAYES_H_
