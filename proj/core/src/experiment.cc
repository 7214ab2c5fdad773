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

#include "xcorr/experiment.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <utility>

#include "xcorr/core_family_search.h"
#include "xcorr/errors.h"
#include "xcorr/input_matching.h"
#include "xcorr/rng.h"
#include "xcorr/set_intersection.h"
#include "xcorr/store.h"

namespace xcorr {
namespace {

// Random r-subset of 0..n-1 by partial Fisher-Yates.
Combination RandomSubset(Rng& rng, std::size_t n, std::size_t r) {
  std::vector<InputId> pool(n);
  std::iota(pool.begin(), pool.end(), InputId{0});
  for (std::size_t k = 0; k < r; ++k) {
    const std::size_t j = k + rng.Below(n - k);
    std::swap(pool[k], pool[j]);
  }
  pool.resize(r);
  return Combination(std::move(pool));
}

// The placement the algorithms see. With matching, each cluster becomes one
// column and predictions over clusters expand back to inputs.
class DetectionView {
 public:
  DetectionView(const PlacementMatrix& placement,
                const std::vector<std::vector<InputId>>& clusters)
      : placement_(&placement) {
    if (clusters.empty()) return;
    columns_ = clusters;
    const std::size_t m = placement.n_accounts();
    BitMatrix membership(m, columns_.size());
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (placement.contains(static_cast<AccountId>(j), columns_[c][0])) {
          membership.set(j, c);
        }
      }
    }
    PlacementConfig pc{columns_.size(), m, placement.alpha(),
                       placement.seed()};
    collapsed_ = PlacementMatrix(pc, std::move(membership));
    placement_ = &collapsed_;
  }

  const PlacementMatrix& placement() const { return *placement_; }
  bool identity() const { return columns_.empty(); }

  Family Expand(const Family& f) const {
    if (identity()) return f;
    Family out;
    for (const auto& c : f) {
      std::vector<std::vector<InputId>> acc{{}};
      for (InputId col : c) {
        std::vector<std::vector<InputId>> next;
        for (const auto& partial : acc) {
          for (InputId i : columns_[col]) {
            auto grown = partial;
            grown.push_back(i);
            next.push_back(std::move(grown));
          }
        }
        acc = std::move(next);
      }
      for (auto& inputs : acc) out.insert(Combination(std::move(inputs)));
    }
    return out;
  }

  Prediction Expand(Prediction p) const {
    if (p.targeted()) p.family = Expand(p.family);
    return p;
  }

  ContextualCounts Collapse(const ContextualCounts& counts) const {
    if (identity()) return counts;
    ContextualCounts out;
    out.n_inputs = columns_.size();
    out.displays_per_input = counts.displays_per_input;
    out.outputs = counts.outputs;
    for (const auto& row : counts.counts) {
      std::vector<std::uint32_t> merged(columns_.size(), 0);
      for (std::size_t c = 0; c < columns_.size(); ++c) {
        for (InputId i : columns_[c]) merged[c] += row[i];
      }
      out.counts.push_back(std::move(merged));
    }
    return out;
  }

 private:
  const PlacementMatrix* placement_;
  PlacementMatrix collapsed_;
  std::vector<std::vector<InputId>> columns_;
};

bool NoDisplays(const std::vector<std::uint32_t>& counts) {
  return std::all_of(counts.begin(), counts.end(),
                     [](std::uint32_t v) { return v == 0; });
}

std::uint64_t RemovalBound(const Family& core, std::size_t n_inputs) {
  const auto l = static_cast<std::uint64_t>(core.size());
  const auto r = static_cast<std::uint64_t>(core.order());
  std::uint64_t rl = 1;
  for (std::uint64_t k = 0; k < l; ++k) rl *= r;
  return l * rl * n_inputs;
}

LearnedRecord Record(const LearnResult& r) {
  return {r.params, r.iterations, r.converged};
}

}  // namespace

std::vector<TargetingSpec> GenerateWorkload(const ScenarioConfig& cfg,
                                            std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = cfg.n_inputs;
  const auto& w = cfg.workload;
  const auto& s = cfg.service;
  std::vector<TargetingSpec> specs;
  OutputId next_id = 0;

  if (w.kind == WorkloadKind::kOverlapping) {
    for (std::size_t g = 0; g < w.groups; ++g) {
      Family core;
      for (std::size_t j = 0; j < w.group_size; ++j) {
        core.insert(Combination{static_cast<InputId>(g * w.group_size + j)});
      }
      for (std::size_t a = 0; a < w.ads_per_group; ++a) {
        auto spec = TargetingSpec::Targeted(next_id++, core, s.p_in, s.p_out);
        spec.group_tag = "group-" + std::to_string(g);
        specs.push_back(std::move(spec));
      }
    }
  } else if (w.core_l == 1 && w.core_r == 1) {
    // Each input is targeted by its own ad before any input repeats.
    std::vector<InputId> order(n);
    std::iota(order.begin(), order.end(), InputId{0});
    for (std::size_t k = n; k > 1; --k) {
      std::swap(order[k - 1], order[rng.Below(k)]);
    }
    for (std::size_t k = 0; k < cfg.targeted_ads(); ++k) {
      specs.push_back(TargetingSpec::Targeted(
          next_id++, Family{Combination{order[k % n]}}, s.p_in, s.p_out));
    }
  } else {
    for (std::size_t k = 0; k < cfg.targeted_ads(); ++k) {
      std::set<Combination> members;
      while (members.size() < w.core_l) {
        members.insert(RandomSubset(rng, n, w.core_r));
      }
      specs.push_back(TargetingSpec::Targeted(
          next_id++,
          Family(std::vector<Combination>(members.begin(), members.end())),
          s.p_in, s.p_out));
    }
  }
  for (std::size_t k = 0; k < cfg.untargeted_ads(); ++k) {
    specs.push_back(TargetingSpec::Untargeted(next_id++, s.p_empty));
  }
  return specs;
}

std::vector<std::vector<InputId>> TrueGroups(const ScenarioConfig& cfg) {
  std::vector<std::vector<InputId>> out;
  std::size_t next = 0;
  if (cfg.workload.kind == WorkloadKind::kOverlapping) {
    for (std::size_t g = 0; g < cfg.workload.groups; ++g) {
      std::vector<InputId> group;
      for (std::size_t j = 0; j < cfg.workload.group_size; ++j) {
        group.push_back(static_cast<InputId>(next++));
      }
      out.push_back(std::move(group));
    }
  }
  for (; next < cfg.n_inputs; ++next) {
    out.push_back({static_cast<InputId>(next)});
  }
  return out;
}

double GroupingPurity(const std::vector<std::vector<InputId>>& clusters,
                      const std::vector<std::vector<InputId>>& truth,
                      std::size_t n_inputs) {
  if (n_inputs == 0) return 1.0;
  std::size_t correct = 0;
  for (const auto& group : truth) {
    const std::set<InputId> members(group.begin(), group.end());
    std::size_t best = 0;
    for (const auto& cluster : clusters) {
      const bool inside =
          std::all_of(cluster.begin(), cluster.end(),
                      [&](InputId i) { return members.count(i) > 0; });
      if (inside) best = std::max(best, cluster.size());
    }
    correct += best;
  }
  return static_cast<double>(correct) / static_cast<double>(n_inputs);
}

TrialData GenerateTrial(const ScenarioConfig& cfg, std::size_t trial) {
  TrialData d;
  d.trial = trial;
  d.seed = DeriveSeed(cfg.seed, trial);
  d.specs = GenerateWorkload(cfg, DeriveSeed(d.seed, "workload"));
  const std::size_t n = cfg.n_inputs;
  const auto& s = cfg.service;

  if (s.contextual || cfg.placement.matching) {
    std::vector<TargetingSpec> ctx_specs;
    for (const auto& spec : d.specs) {
      ctx_specs.push_back(
          spec.targeted()
              ? TargetingSpec::Targeted(spec.output_id, spec.core, s.ctx_p_in,
                                        s.ctx_p_out)
              : TargetingSpec::Untargeted(spec.output_id, s.ctx_p_empty));
    }
    std::vector<InputId> all(n);
    std::iota(all.begin(), all.end(), InputId{0});
    d.contextual = SimulateContextual(Combination(std::move(all)), n,
                                      ctx_specs, s.displays_per_input,
                                      DeriveSeed(d.seed, "contextual"));
  }

  PlacementConfig pc{n, cfg.accounts(), cfg.alpha(),
                     DeriveSeed(d.seed, "placement")};
  if (cfg.placement.matching) {
    d.clusters = ClusterInputs(BuildSignatures(*d.contextual),
                               cfg.placement.match_threshold,
                               cfg.placement.raw_distance
                                   ? DistanceMode::kRaw
                                   : DistanceMode::kNormalized);
    d.placement = GroupedPlacement(d.clusters, pc);
  } else {
    d.placement = BernoulliPlacement(pc);
  }
  auto [obs, trace] = SimulateBehavioral(d.placement, d.specs, cfg.rounds,
                                         DeriveSeed(d.seed, "behavioral"));
  d.observations = std::move(obs);
  d.trace = std::move(trace);
  return d;
}

DetectionStats& DetectionStats::operator+=(const DetectionStats& o) {
  targeted += o.targeted;
  targeted_detected += o.targeted_detected;
  untargeted += o.untargeted;
  untargeted_detected += o.untargeted_detected;
  return *this;
}

double DetectionStats::true_positive_rate() const {
  return targeted == 0 ? 0.0
                       : static_cast<double>(targeted_detected) /
                             static_cast<double>(targeted);
}

double DetectionStats::false_positive_rate() const {
  return untargeted == 0 ? 0.0
                         : static_cast<double>(untargeted_detected) /
                               static_cast<double>(untargeted);
}

SearchStats& SearchStats::operator+=(const SearchStats& o) {
  searches += o.searches;
  tests_total += o.tests_total;
  tests_max = std::max(tests_max, o.tests_max);
  unknowns += o.unknowns;
  budget_exceeded += o.budget_exceeded;
  bound_violations += o.bound_violations;
  return *this;
}

std::map<std::string, Confusion> ScorePredictions(
    const ScenarioConfig& cfg,
    const std::map<std::string, std::vector<Prediction>>& predictions,
    const SimulationTrace& trace) {
  std::map<std::string, Confusion> out;
  for (const auto& [algo, preds] : predictions) {
    out[algo] = Score(preds, trace, cfg.match_mode);
  }
  return out;
}

TrialResult RunTrial(const ScenarioConfig& cfg, const TrialData& data) {
  TrialResult result;
  const DetectionView view(data.placement, data.clusters);
  const PlacementMatrix& placement = view.placement();
  const ObservationSet& obs = data.observations;
  const std::size_t n_outputs = obs.outputs.size();

  if (cfg.placement.matching) {
    result.purity =
        GroupingPurity(data.clusters, TrueGroups(cfg), cfg.n_inputs);
  }

  const bool want_behavioral = cfg.uses("bayes") || cfg.uses("composite");
  const bool want_contextual =
      cfg.uses("contextual") || cfg.uses("composite");
  ModelParams behavioral = cfg.bayes.init;
  if (!view.identity()) behavioral.priors.clear();
  if (want_behavioral && cfg.bayes.learn) {
    const LearnResult lr =
        LearnParams(obs, placement, behavioral, cfg.bayes.options);
    behavioral = lr.params;
    result.behavioral = Record(lr);
  }
  std::optional<ContextualCounts> ctx;
  ModelParams contextual;
  if (want_contextual) {
    ctx = view.Collapse(data.contextual.value());
    contextual = DefaultContextualParams(ctx->n_inputs);
    if (cfg.bayes.learn) {
      const LearnResult lr =
          LearnContextualParams(*ctx, contextual, cfg.bayes.options);
      contextual = lr.params;
      result.contextual = Record(lr);
    }
  }

  const double floor = cfg.bayes.score_floor;
  for (std::size_t k = 0; k < n_outputs; ++k) {
    const OutputId id = obs.outputs[k];
    const BitSet& active = obs.active[k];
    if (cfg.uses("setint")) {
      result.predictions["setint"].push_back(view.Expand(
          PredictSetIntersection(id, active, placement, cfg.setint)));
    }
    std::optional<Posterior> bpost;
    if (want_behavioral) {
      bpost = BehavioralPosterior(active, placement, behavioral);
      if (cfg.uses("bayes")) {
        result.predictions["bayes"].push_back(
            view.Expand(PredictFromPosterior(id, *bpost, floor, "bayes")));
      }
    }
    std::optional<Posterior> cpost;
    if (want_contextual) {
      const auto& counts = ctx->counts[ctx->index_of(id)];
      if (!NoDisplays(counts)) cpost = ContextualPosterior(counts, contextual);
      if (cfg.uses("contextual")) {
        result.predictions["contextual"].push_back(
            cpost ? view.Expand(
                        PredictFromPosterior(id, *cpost, floor, "contextual"))
                  : Prediction::Unknown(id));
      }
    }
    if (cfg.uses("composite")) {
      result.predictions["composite"].push_back(view.Expand(CompositePredict(
          id, bpost ? &*bpost : nullptr, cpost ? &*cpost : nullptr, floor)));
    }
  }

  const bool want_search = cfg.uses("detect") || cfg.uses("agglomerative") ||
                           cfg.uses("removal");
  if (want_search) {
    DetectionConfig dc;
    dc.x = cfg.detection_x();
    dc.l_max = cfg.corefamily.l_max;
    dc.r_max = cfg.corefamily.r_max;
    dc.test_budget = cfg.corefamily.test_budget;
    dc.min_conditional = cfg.min_conditional();
    std::map<OutputId, const OutputTrace*> truth;
    for (const auto& t : data.trace.outputs) truth[t.output_id] = &t;
    DetectionStats detection;
    for (std::size_t k = 0; k < n_outputs; ++k) {
      const OutputId id = obs.outputs[k];
      const OutputTrace& t = *truth.at(id);
      const bool enough = obs.active[k].count() >=
                          std::max<std::size_t>(cfg.corefamily.min_active, 1);
      const AdFamily fam =
          enough ? AdFamily::FromObservation(obs.active[k], placement)
                 : AdFamily();
      if (cfg.uses("detect")) {
        const bool hit = enough && DetectTargeting(fam, dc);
        ++(t.targeted ? detection.targeted : detection.untargeted);
        if (hit) {
          ++(t.targeted ? detection.targeted_detected
                        : detection.untargeted_detected);
        }
      }
      for (const char* algo : {"agglomerative", "removal"}) {
        if (!cfg.uses(algo)) continue;
        if (!enough) {
          result.predictions[algo].push_back(Prediction::Unknown(id));
          continue;
        }
        SearchStats& stats = result.search[algo];
        ++stats.searches;
        SearchResult sr;
        try {
          sr = std::string_view(algo) == "removal"
                   ? RemovalCoreSearch(fam, dc)
                   : AgglomerativeCoreSearch(fam, dc);
        } catch (const BudgetExceeded&) {
          ++stats.budget_exceeded;
          result.predictions[algo].push_back(Prediction::Unknown(id));
          continue;
        }
        stats.tests_total += sr.tests;
        stats.tests_max = std::max(stats.tests_max, sr.tests);
        stats.unknowns += sr.unknowns;
        if (std::string_view(algo) == "removal" && t.targeted &&
            sr.tests > RemovalBound(t.core, cfg.n_inputs)) {
          ++stats.bound_violations;
        }
        Prediction p = Prediction::Unknown(id);
        if (!sr.family.empty()) {
          p = view.Expand(Prediction::Targeted(id, sr.family));
        } else if (!sr.detected) {
          p = Prediction::Untargeted(id);
        }
        p.scores[algo] = 1.0;
        result.predictions[algo].push_back(std::move(p));
      }
    }
    if (cfg.uses("detect")) result.detection = detection;
  }

  result.confusion = ScorePredictions(cfg, result.predictions, data.trace);
  return result;
}

void ParallelFor(std::size_t n, std::size_t threads,
                 const std::function<void(std::size_t)>& fn) {
  if (threads == 0) {
    threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::mutex mu;
  std::size_t next = 0;
  std::size_t failed_at = n;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= n) return;
        i = next++;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        // Report the lowest failing index so errors are reproducible.
        if (i < failed_at) {
          failed_at = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

Report RunScenario(const ScenarioConfig& cfg, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  cfg.Validate();
  Report report;
  report.config = cfg;
  report.accounts = cfg.accounts();
  report.alpha = cfg.alpha();
  if (cfg.uses("detect") || cfg.uses("agglomerative") ||
      cfg.uses("removal")) {
    report.detection_x = cfg.detection_x();
  }

  std::vector<TrialResult> results(cfg.trials);
  std::vector<std::optional<TrialData>> kept(cfg.trials);
  ParallelFor(cfg.trials, cfg.threads, [&](std::size_t t) {
    TrialData data = GenerateTrial(cfg, t);
    results[t] = RunTrial(cfg, data);
    if (options.store_root) kept[t] = std::move(data);
  });

  std::vector<double> purities;
  for (const auto& algo : cfg.algorithms) {
    if (algo == "detect") continue;
    AlgorithmReport& ar = report.algorithms[algo];
    Confusion total;
    for (const auto& r : results) {
      const Confusion c = r.confusion.count(algo) ? r.confusion.at(algo)
                                                  : Confusion{};
      ar.per_trial.push_back(c);
      total += c;
    }
    ar.metrics = Summarize(total);
  }
  for (const auto& r : results) {
    if (r.behavioral) report.learned_behavioral.push_back(*r.behavioral);
    if (r.contextual) report.learned_contextual.push_back(*r.contextual);
    if (r.detection) {
      if (!report.detection) report.detection = DetectionStats{};
      *report.detection += *r.detection;
    }
    for (const auto& [algo, stats] : r.search) report.search[algo] += stats;
    if (r.purity) purities.push_back(*r.purity);
  }
  if (!purities.empty()) {
    report.mean_purity =
        std::accumulate(purities.begin(), purities.end(), 0.0) /
        static_cast<double>(purities.size());
  }

  if (options.store_root) {
    CorrelationStore store(*options.store_root);
    store.WriteConfig(cfg);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      store.AppendTrial(cfg, *kept[t], results[t].predictions);
    }
  }
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

std::vector<CurvePoint> RecallCurve(const ScenarioConfig& base,
                                    const std::string& algorithm,
                                    const std::vector<std::size_t>& accounts) {
  std::vector<CurvePoint> out;
  for (std::size_t m : accounts) {
    ScenarioConfig cfg = base;
    cfg.placement.accounts = m;
    const Report r = RunScenario(cfg);
    auto it = r.algorithms.find(algorithm);
    if (it == r.algorithms.end()) {
      throw ConfigError("algorithm '" + algorithm + "' not in scenario");
    }
    out.push_back({m, it->second.metrics});
  }
  return out;
}

KneeResult FindKnee(const ScenarioConfig& base, const std::string& algorithm,
                    std::size_t m_max, double fraction) {
  if (m_max < 2) throw ConfigError("m_max must be >= 2");
  std::map<std::size_t, Metrics> cache;
  auto eval = [&](std::size_t m) -> const Metrics& {
    auto it = cache.find(m);
    if (it == cache.end()) {
      it = cache.emplace(m, RecallCurve(base, algorithm, {m})[0].metrics)
               .first;
    }
    return it->second;
  };
  KneeResult out;
  const std::size_t top = 4 * m_max;
  out.plateau_recall = eval(top).recall;
  const double half_way = eval(2 * m_max).recall;
  out.plateau_found = out.plateau_recall > 0.0 &&
                      std::abs(out.plateau_recall - half_way) <= 0.05;
  const double target = fraction * out.plateau_recall;
  std::size_t lo = 2;
  std::size_t hi = top;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (eval(mid).recall >= target) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  out.knee = lo;
  for (const auto& [m, metrics] : cache) out.curve.push_back({m, metrics});
  return out;
}

ScalingResult ScalingSweep(const ScenarioConfig& base,
                           const std::vector<std::size_t>& n_values,
                           const std::string& algorithm, std::size_t m_max) {
  for (std::size_t k = 1; k < n_values.size(); ++k) {
    if (n_values[k] <= n_values[k - 1]) {
      throw ConfigError("n_values must be strictly ascending");
    }
  }
  ScalingResult out;
  std::vector<double> x, y;
  for (std::size_t n : n_values) {
    ScenarioConfig cfg = base;
    cfg.n_inputs = n;
    ScalingRow row{n, FindKnee(cfg, algorithm, m_max)};
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(static_cast<double>(row.knee.knee));
    out.rows.push_back(std::move(row));
  }
  out.fit = FitLine(x, y);
  return out;
}

AccountFit FitAccountConstant(
    std::size_t n_inputs, const std::function<bool(std::size_t)>& acceptable,
    double c_lo, double c_hi, double rel_tol) {
  if (!(c_lo > 0.0 && c_lo < c_hi)) {
    throw DomainError("need 0 < c_lo < c_hi");
  }
  AccountFit fit;
  std::map<std::size_t, bool> cache;
  auto ok = [&](double c) {
    const std::size_t m = SizedAccountCount(n_inputs, c);
    auto it = cache.find(m);
    if (it == cache.end()) {
      ++fit.evaluations;
      it = cache.emplace(m, acceptable(m)).first;
    }
    return it->second;
  };
  if (!ok(c_hi)) {
    throw ConvergenceError("no acceptable account count up to c = " +
                           std::to_string(c_hi));
  }
  double lo = c_lo;
  double hi = c_hi;
  if (ok(lo)) {
    hi = lo;
  } else {
    while ((hi - lo) / hi > rel_tol) {
      const double mid = 0.5 * (lo + hi);
      (ok(mid) ? hi : lo) = mid;
    }
  }
  fit.c = hi;
  fit.accounts = SizedAccountCount(n_inputs, hi);
  return fit;
}

}  // namespace xcorr
