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

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "oracles.h"
#include "xcorr/errors.h"
#include "xcorr/experiment.h"
#include "xcorr/serialization.h"
#include "xcorr/store.h"

namespace xcorr {
namespace {

ScenarioConfig Small() {
  ScenarioConfig cfg = GmailLikePreset();
  cfg.n_inputs = 8;
  cfg.trials = 3;
  cfg.seed = 5;
  cfg.threads = 1;
  cfg.placement.accounts = 10;
  cfg.algorithms = {"setint", "bayes", "contextual", "composite"};
  return cfg;
}

TEST(GenerateWorkload, NonOverlappingCoversInputs) {
  const ScenarioConfig cfg = Small();
  const auto specs = GenerateWorkload(cfg, 1);
  std::size_t targeted = 0;
  for (const auto& s : specs) {
    EXPECT_NO_THROW(s.Validate(cfg.n_inputs));
    targeted += s.targeted();
  }
  EXPECT_EQ(targeted, cfg.targeted_ads());
  EXPECT_EQ(specs.size(), cfg.targeted_ads() + cfg.untargeted_ads());
}

TEST(GenerateWorkload, OverlappingUsesGroups) {
  ScenarioConfig cfg = AmazonLikePreset();
  cfg.n_inputs = 18;
  cfg.workload.kind = WorkloadKind::kOverlapping;
  cfg.workload.groups = 6;
  cfg.workload.group_size = 3;
  cfg.workload.ads_per_group = 2;
  cfg.workload.untargeted_ads = 4;
  cfg.Validate();
  const auto specs = GenerateWorkload(cfg, 1);
  std::size_t tagged = 0;
  for (const auto& s : specs) {
    if (!s.targeted()) continue;
    ++tagged;
    EXPECT_TRUE(s.group_tag.has_value());
    EXPECT_EQ(s.core.size(), 3U);
  }
  EXPECT_EQ(tagged, 12U);
  EXPECT_EQ(TrueGroups(cfg).size(), 6U);
}

TEST(GroupingPurity, CountsLargestCorrectCluster) {
  const std::vector<std::vector<InputId>> truth{{0, 1, 2}, {3, 4, 5}};
  EXPECT_DOUBLE_EQ(GroupingPurity({{0, 1, 2}, {3, 4, 5}}, truth, 6), 1.0);
  EXPECT_DOUBLE_EQ(GroupingPurity({{0, 1}, {2}, {3, 4, 5}}, truth, 6), 5.0 / 6);
}

TEST(RunScenario, ByteIdenticalReruns) {
  const ScenarioConfig cfg = Small();
  const std::string a = ReportToJson(RunScenario(cfg));
  const std::string b = ReportToJson(RunScenario(cfg));
  EXPECT_EQ(a, b);
  ScenarioConfig threaded = cfg;
  threaded.threads = 3;
  // Threads is part of the config, so compare everything but the config echo.
  const Report r1 = RunScenario(cfg);
  const Report r3 = RunScenario(threaded);
  for (const auto& [name, rep] : r1.algorithms) {
    EXPECT_EQ(rep.metrics.counts, r3.algorithms.at(name).metrics.counts) << name;
  }
}

TEST(RunScenario, SeedChangesResults) {
  ScenarioConfig a = Small();
  a.trials = 5;
  ScenarioConfig b = a;
  b.seed = 6;
  EXPECT_NE(ReportToJson(RunScenario(a)), ReportToJson(RunScenario(b)));
}

TEST(RunScenario, TrialCountsAddUp) {
  const ScenarioConfig cfg = Small();
  const Report rep = RunScenario(cfg);
  for (const auto& [name, r] : rep.algorithms) {
    EXPECT_EQ(r.per_trial.size(), cfg.trials);
    EXPECT_EQ(r.metrics.counts.outputs,
              cfg.trials * (cfg.targeted_ads() + cfg.untargeted_ads()));
  }
  EXPECT_EQ(rep.learned_behavioral.size(), cfg.trials);
}

TEST(RunScenario, UntargetedOnlyDetectionIsRare) {
  ScenarioConfig cfg;
  cfg.n_inputs = 30;
  cfg.trials = 40;
  cfg.threads = 1;
  cfg.workload.untargeted_ads = 1;
  cfg.service.p_empty = 0.5;
  cfg.algorithms = {"detect"};
  cfg.corefamily.l_max = 1;
  cfg.corefamily.x = 0.9;
  cfg.placement.alpha = 0.5;
  cfg.placement.accounts = 150;
  const Report rep = RunScenario(cfg);
  ASSERT_TRUE(rep.detection.has_value());
  EXPECT_LE(rep.detection->false_positive_rate(), 0.1);
}

TEST(RunScenario, SearchAlgorithmsRecoverStrictCores) {
  ScenarioConfig cfg;
  cfg.n_inputs = 8;
  cfg.trials = 6;
  cfg.threads = 1;
  cfg.workload.targeted_ads = 2;
  cfg.service.p_in = 0.9;
  cfg.service.p_out = 0.0;
  cfg.algorithms = {"detect", "agglomerative", "removal"};
  cfg.corefamily.r_max = 1;
  cfg.placement.accounts = 400;
  const Report rep = RunScenario(cfg);
  EXPECT_GE(rep.algorithms.at("removal").metrics.recall, 0.9);
  EXPECT_GE(rep.algorithms.at("agglomerative").metrics.recall, 0.9);
  EXPECT_EQ(rep.search.at("removal").bound_violations, 0U);
}

TEST(ParallelFor, RethrowsLowestFailure) {
  std::atomic<int> ran{0};
  try {
    ParallelFor(20, 4, [&](std::size_t i) {
      ++ran;
      if (i == 7 || i == 13) throw std::runtime_error(std::to_string(i));
    });
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "7");
  }
  EXPECT_EQ(ran.load(), 20);
}

TEST(FindKnee, CurveIsRecordedAndPlateauReached) {
  ScenarioConfig cfg = Small();
  cfg.algorithms = {"bayes"};
  cfg.trials = 4;
  const KneeResult knee = FindKnee(cfg, "bayes", 32);
  EXPECT_TRUE(knee.plateau_found);
  EXPECT_GE(knee.knee, 2U);
  EXPECT_LE(knee.knee, 128U);
  for (std::size_t k = 1; k < knee.curve.size(); ++k) {
    EXPECT_LT(knee.curve[k - 1].accounts, knee.curve[k].accounts);
  }
}

TEST(ScalingSweep, SingleSizeSkipsFit) {
  ScenarioConfig cfg = Small();
  cfg.algorithms = {"bayes"};
  cfg.trials = 2;
  const ScalingResult res = ScalingSweep(cfg, {8}, "bayes", 8);
  EXPECT_EQ(res.rows.size(), 1U);
  EXPECT_FALSE(res.fit.has_value());
}

TEST(FitAccountConstant, FindsSmallestAcceptableConstant) {
  const AccountFit fit = FitAccountConstant(
      100, [](std::size_t m) { return m >= 40; }, 0.5, 50.0);
  EXPECT_GE(fit.accounts, 40U);
  EXPECT_LE(fit.accounts, 41U);
  EXPECT_GT(fit.evaluations, 0);
}

TEST(CorrelationStore, RoundTrip) {
  const auto root = std::filesystem::temp_directory_path() / "xcorr_store_test";
  std::filesystem::remove_all(root);
  const ScenarioConfig cfg = Small();
  RunOptions opt;
  opt.store_root = root;
  RunScenario(cfg, opt);
  const CorrelationStore store(root);
  const auto dir = store.ScenarioDir(cfg);
  EXPECT_EQ(ScenarioToJson(CorrelationStore::LoadConfig(dir)), ScenarioToJson(cfg));
  const auto trials = CorrelationStore::Load(dir);
  ASSERT_EQ(trials.size(), cfg.trials);
  const TrialData fresh = GenerateTrial(cfg, 1);
  EXPECT_EQ(trials[1].data.placement, fresh.placement);
  ASSERT_EQ(trials[1].data.observations.active.size(),
            fresh.observations.active.size());
  for (std::size_t k = 0; k < fresh.observations.active.size(); ++k) {
    EXPECT_EQ(trials[1].data.observations.active[k].to_string(),
              fresh.observations.active[k].to_string());
  }
  EXPECT_EQ(trials[1].predictions.size(), cfg.algorithms.size());
  std::filesystem::remove_all(root);
}

}  // namespace
}  // namespace xcorr
