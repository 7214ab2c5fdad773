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

#include "xcorr/bayes.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "xcorr/errors.h"

namespace xcorr {
namespace {

constexpr double kClampLo = 1e-6;
constexpr double kClampHi = 1.0 - 1e-6;

double Clamp(double p) { return std::clamp(p, kClampLo, kClampHi); }

bool Valid(double p) { return p > 0.0 && p < 1.0; }

double MaxDelta(const ModelParams& a, const ModelParams& b) {
  return std::max({std::abs(a.p_in - b.p_in), std::abs(a.p_out - b.p_out),
                   std::abs(a.p_empty - b.p_empty)});
}

// Keeps p_out strictly below p_in after clamping.
void Repair(ModelParams& p) {
  p.p_in = Clamp(p.p_in);
  p.p_out = Clamp(p.p_out);
  p.p_empty = Clamp(p.p_empty);
  if (p.p_out >= p.p_in) p.p_out = p.p_in * 0.5;
}

}  // namespace

void ModelParams::Validate(std::size_t n_inputs) const {
  if (!Valid(p_in) || !Valid(p_out) || !Valid(p_empty)) {
    throw ConfigError("model probabilities must lie in (0, 1)");
  }
  if (!(p_out < p_in)) throw ConfigError("model needs p_out < p_in");
  if (priors.empty()) return;
  if (n_inputs > 0 && priors.size() != n_inputs + 1) {
    throw ConfigError("prior vector must have N + 1 entries");
  }
  double sum = 0.0;
  for (double p : priors) {
    if (!(p >= 0.0)) throw ConfigError("priors must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("priors must sum to 1");
}

double ModelParams::log_prior(std::size_t hypothesis,
                              std::size_t n_inputs) const {
  if (priors.empty()) return -std::log(static_cast<double>(n_inputs + 1));
  return std::log(priors.at(hypothesis));
}

ModelParams DefaultContextualParams(std::size_t n_inputs) {
  ModelParams p;
  const double n = static_cast<double>(std::max<std::size_t>(n_inputs, 2));
  p.p_in = 0.7;
  p.p_out = 0.3 / (n - 1.0);
  p.p_empty = 1.0 / n;
  Repair(p);
  return p;
}

double BehavioralLogLikelihood(std::size_t a, std::size_t b, std::size_t c,
                               std::size_t d, const ModelParams& params) {
  auto term = [](std::size_t k, double log_p) {
    return k == 0 ? 0.0 : static_cast<double>(k) * log_p;
  };
  return term(a, std::log(params.p_in)) + term(b, std::log1p(-params.p_in)) +
         term(c, std::log(params.p_out)) + term(d, std::log1p(-params.p_out));
}

double BehavioralLogLikelihood(BitSpan active,
                               std::optional<BitSpan> input_accounts,
                               const ModelParams& params) {
  const std::size_t m = active.size();
  const std::size_t k = active.count();
  if (!input_accounts) {
    const double hits = static_cast<double>(k);
    const double misses = static_cast<double>(m - k);
    return (k == 0 ? 0.0 : hits * std::log(params.p_empty)) +
           (k == m ? 0.0 : misses * std::log1p(-params.p_empty));
  }
  if (input_accounts->size() != m) {
    throw MismatchedUniverse("A_i and A_k differ in account universe");
  }
  const std::size_t a = IntersectCount(*input_accounts, active);
  const std::size_t holders = input_accounts->count();
  const std::size_t c = k - a;
  return BehavioralLogLikelihood(a, holders - a, c, m - holders - c, params);
}

double ContextualLogLikelihood(std::span<const std::uint32_t> counts,
                               std::optional<InputId> input,
                               const ModelParams& params) {
  double total = 0.0;
  for (auto x : counts) total += static_cast<double>(x);
  if (!input) return total == 0.0 ? 0.0 : total * std::log(params.p_empty);
  if (*input >= counts.size()) throw DomainError("input out of range");
  const double own = static_cast<double>(counts[*input]);
  const double rest = total - own;
  return (own == 0.0 ? 0.0 : own * std::log(params.p_in)) +
         (rest == 0.0 ? 0.0 : rest * std::log(params.p_out));
}

Posterior PosteriorFromLogScores(std::vector<double> log_scores) {
  Posterior post;
  if (log_scores.empty()) return post;
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t h = 0; h < log_scores.size(); ++h) {
    if (log_scores[h] > hi) {
      hi = log_scores[h];
      post.argmax = h;
    }
  }
  double sum = 0.0;
  for (double s : log_scores) sum += std::exp(s - hi);
  post.log_normalizer = hi + std::log(sum);
  post.probs = std::move(log_scores);
  // Relative to the maximum, so large magnitudes do not cost precision.
  for (double& s : post.probs) s = std::exp(s - hi) / sum;
  return post;
}

Posterior BehavioralPosterior(BitSpan active, const PlacementMatrix& placement,
                              const ModelParams& params) {
  const std::size_t n = placement.n_inputs();
  const std::size_t m = placement.n_accounts();
  if (active.size() != m) {
    throw MismatchedUniverse("active set and placement differ in accounts");
  }
  const std::size_t k = active.count();
  std::vector<double> scores(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const BitSpan col = placement.input_accounts(static_cast<InputId>(i));
    const std::size_t a = IntersectCount(col, active);
    const std::size_t holders = col.count();
    scores[i] = BehavioralLogLikelihood(a, holders - a, k - a,
                                        m - holders - (k - a), params) +
                params.log_prior(i, n);
  }
  scores[n] = BehavioralLogLikelihood(active, std::nullopt, params) +
              params.log_prior(n, n);
  return PosteriorFromLogScores(std::move(scores));
}

Posterior ContextualPosterior(std::span<const std::uint32_t> counts,
                              const ModelParams& params) {
  const std::size_t n = counts.size();
  std::vector<double> scores(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] =
        ContextualLogLikelihood(counts, static_cast<InputId>(i), params) +
        params.log_prior(i, n);
  }
  scores[n] = ContextualLogLikelihood(counts, std::nullopt, params) +
              params.log_prior(n, n);
  return PosteriorFromLogScores(std::move(scores));
}

Prediction PredictFromPosterior(OutputId output_id, const Posterior& posterior,
                                double score_floor,
                                const std::string& score_key) {
  Prediction p = Prediction::Untargeted(output_id);
  if (posterior.argmax_is_input() && posterior.max() >= score_floor) {
    p = Prediction::Targeted(
        output_id,
        Family{Combination{static_cast<InputId>(posterior.argmax)}});
  }
  p.scores[score_key] = posterior.max();
  return p;
}

Prediction BayesPredict(OutputId output_id, BitSpan active,
                        const PlacementMatrix& placement,
                        const ModelParams& params, double score_floor) {
  return PredictFromPosterior(
      output_id, BehavioralPosterior(active, placement, params), score_floor,
      "bayes");
}

std::optional<double> CompositeScore(std::optional<double> behavioral,
                                     std::optional<double> contextual) {
  if (behavioral && contextual) return (*behavioral + *contextual) / 2.0;
  if (behavioral) return behavioral;
  return contextual;
}

Prediction CompositePredict(OutputId output_id, const Posterior* behavioral,
                            const Posterior* contextual, double score_floor) {
  if (behavioral == nullptr && contextual == nullptr) {
    return Prediction::Unknown(output_id);
  }
  if (behavioral != nullptr && contextual != nullptr &&
      behavioral->probs.size() != contextual->probs.size()) {
    throw MismatchedUniverse("posteriors cover different input universes");
  }
  const Posterior& any = behavioral != nullptr ? *behavioral : *contextual;
  Posterior avg;
  avg.probs.assign(any.probs.size(), 0.0);
  for (std::size_t h = 0; h < avg.probs.size(); ++h) {
    avg.probs[h] = CompositeScore(
                       behavioral ? std::optional(behavioral->probs[h])
                                  : std::nullopt,
                       contextual ? std::optional(contextual->probs[h])
                                  : std::nullopt)
                       .value();
    if (avg.probs[h] > avg.probs[avg.argmax]) avg.argmax = h;
  }
  Prediction p =
      PredictFromPosterior(output_id, avg, score_floor, "composite");
  if (behavioral) p.scores["bayes"] = behavioral->max();
  if (contextual) p.scores["contextual"] = contextual->max();
  return p;
}

LearnResult LearnParams(const ObservationSet& observations,
                        const PlacementMatrix& placement,
                        const ModelParams& init, const LearnOptions& options) {
  init.Validate(placement.n_inputs());
  const std::size_t m = placement.n_accounts();
  std::vector<std::size_t> holders(placement.n_inputs());
  for (std::size_t i = 0; i < holders.size(); ++i) {
    holders[i] = placement.input_accounts(static_cast<InputId>(i)).count();
  }

  LearnResult result;
  result.params = init;
  for (int iter = 0; iter < options.max_iter; ++iter) {
    // Exact integer accumulation keeps the estimate independent of
    // evaluation order.
    std::uint64_t in_hits = 0, in_total = 0, out_hits = 0, out_total = 0;
    std::uint64_t empty_hits = 0, empty_outputs = 0;
    for (const auto& active : observations.active) {
      const Posterior post = BehavioralPosterior(active, placement,
                                                 result.params);
      const std::size_t k = active.count();
      if (post.argmax_is_input() && post.max() >= options.score_floor) {
        const auto i = static_cast<InputId>(post.argmax);
        const std::size_t a =
            IntersectCount(placement.input_accounts(i), active);
        in_hits += a;
        in_total += holders[i];
        out_hits += k - a;
        out_total += m - holders[i];
      } else {
        empty_hits += k;
        ++empty_outputs;
      }
    }
    ModelParams next = result.params;
    if (in_total > 0 && out_total > 0) {
      next.p_in = static_cast<double>(in_hits) / static_cast<double>(in_total);
      next.p_out =
          static_cast<double>(out_hits) / static_cast<double>(out_total);
    }
    if (empty_outputs > 0 && m > 0) {
      next.p_empty = static_cast<double>(empty_hits) /
                     (static_cast<double>(empty_outputs) *
                      static_cast<double>(m));
    }
    Repair(next);
    const double delta = MaxDelta(next, result.params);
    result.params = next;
    result.trace.push_back(next);
    result.iterations = iter + 1;
    if (delta < options.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

LearnResult LearnContextualParams(const ContextualCounts& counts,
                                  const ModelParams& init,
                                  const LearnOptions& options) {
  const std::size_t n = counts.n_inputs;
  init.Validate(n);
  LearnResult result;
  result.params = init;
  for (int iter = 0; iter < options.max_iter; ++iter) {
    std::uint64_t own = 0, total = 0;
    for (const auto& x : counts.counts) {
      const Posterior post = ContextualPosterior(x, result.params);
      if (!post.argmax_is_input() || post.max() < options.score_floor) {
        continue;
      }
      own += x[post.argmax];
      for (auto v : x) total += v;
    }
    ModelParams next = result.params;
    if (total > 0 && n > 1) {
      next.p_in = static_cast<double>(own) / static_cast<double>(total);
      next.p_out = (1.0 - next.p_in) / static_cast<double>(n - 1);
      next.p_empty = 1.0 / static_cast<double>(n);
    }
    Repair(next);
    const double delta = MaxDelta(next, result.params);
    result.params = next;
    result.trace.push_back(next);
    result.iterations = iter + 1;
    if (delta < options.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace xcorr
