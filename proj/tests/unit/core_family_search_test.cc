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

#include <random>

#include "oracles.h"
#include "xcorr/core_family_search.h"
#include "xcorr/errors.h"
#include "xcorr/placement.h"
#include "xcorr/simulator.h"
#include "xcorr/threshold_analysis.h"

namespace xcorr {
namespace {

AdFamily Fam(std::size_t n, std::vector<Combination> members) {
  return AdFamily::FromCombinations(n, members);
}

TEST(AdFamily, FromObservationKeepsActiveAccounts) {
  const PlacementMatrix p = BernoulliPlacement({6, 10, 0.5, 2});
  const BitSet active = BitSet::FromString("1001000001");
  const AdFamily fam = AdFamily::FromObservation(active, p);
  ASSERT_EQ(fam.size(), 3U);
  EXPECT_EQ(fam.combinations()[1], p.account_inputs(3));
  for (InputId i : fam.present_inputs()) EXPECT_GT(fam.holders(i).count(), 0U);
}

TEST(FindXIntersectingSubset, Examples) {
  const AdFamily fam = Fam(8, {{1, 2}, {1, 3}, {4}});
  EXPECT_EQ(FindXIntersectingSubset(fam, 1.0, 2), (Combination{1, 4}));
  EXPECT_FALSE(FindXIntersectingSubset(fam, 1.0, 1).has_value());
  EXPECT_EQ(FindXIntersectingSubset(Fam(8, {{7}, {7}, {7}}), 1.0, 1),
            (Combination{7}));
  EXPECT_THROW(FindXIntersectingSubset(AdFamily{}, 0.5, 1), EmptyFamily);
}

TEST(FindXIntersectingSubset, MatchesBruteForce) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + trial % 8;
    const std::size_t k = 1 + trial % 9;
    std::vector<Combination> members;
    std::vector<std::vector<InputId>> raw;
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<InputId> ids;
      for (InputId i = 0; i < n; ++i) {
        if (rng() % 3 == 0) ids.push_back(i);
      }
      raw.push_back(ids);
      members.emplace_back(ids);
    }
    const double x = 0.25 + 0.25 * static_cast<double>(trial % 4);
    const std::size_t l_max = 1 + trial % 3;
    const auto got = FindXIntersectingSubset(Fam(n, members), x, l_max);
    const auto want = oracle::BruteForceXIntersecting(raw, n, x, l_max);
    ASSERT_EQ(got.has_value(), want.has_value()) << "trial " << trial;
    // Any valid witness must have the same minimal size.
    if (got) {
      EXPECT_EQ(got->order(), want->size()) << "trial " << trial;
    }
  }
}

TEST(ConditionalFamily, Examples) {
  const AdFamily fam = Fam(4, {{1, 2}, {1, 3}, {2, 3}});
  const AdFamily c1 = ConditionalFamily(fam, Combination{1});
  EXPECT_EQ(c1.combinations(), (std::vector<Combination>{{2}, {3}}));
  EXPECT_EQ(ConditionalFamily(fam, Combination{}).combinations(),
            fam.combinations());
  EXPECT_TRUE(ConditionalFamily(fam, Combination{0}).empty());
}

TEST(DetectTargeting, StrictTargetingAlwaysDetected) {
  const PlacementMatrix p = BernoulliPlacement({30, 40, 0.5, 6});
  const auto spec = TargetingSpec::Targeted(0, Family{{4, 9}}, 0.8, 0.0);
  DetectionConfig cfg;
  cfg.x = 0.75;
  cfg.l_max = 2;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto [obs, trace] = SimulateBehavioral(p, {spec}, 1, seed);
    if (obs.active[0].none()) continue;
    EXPECT_TRUE(DetectTargeting(AdFamily::FromObservation(obs.active[0], p), cfg));
  }
}

TEST(DetectTargeting, SingleAccountIsDetected) {
  DetectionConfig cfg;
  cfg.x = 0.5;
  EXPECT_TRUE(DetectTargeting(Fam(5, {{2, 3}}), cfg));
}

TEST(ContainsCoreTest, EmptyCombinationIsTheDetectionTest) {
  const AdFamily fam = Fam(5, {{1, 2}, {1, 3}, {1, 4}});
  DetectionConfig cfg;
  cfg.x = 1.0;
  EXPECT_TRUE(DetectTargeting(fam, cfg));
  EXPECT_EQ(ContainsCoreTest(Combination{}, fam, cfg), TestOutcome::kNegative);
  EXPECT_EQ(ContainsCoreTest(Combination{1}, fam, cfg), TestOutcome::kPositive);
  EXPECT_EQ(ContainsCoreTest(Combination{0}, fam, cfg), TestOutcome::kUnknown);
  cfg.min_conditional = 4;
  EXPECT_EQ(ContainsCoreTest(Combination{1}, fam, cfg), TestOutcome::kUnknown);
}

TEST(CoreSearch, SingleInputCore) {
  const PlacementMatrix p = BernoulliPlacement({20, 60, 0.5, 10});
  const auto spec = TargetingSpec::Targeted(0, Family{{3}}, 1.0, 0.0);
  const auto [obs, trace] = SimulateBehavioral(p, {spec}, 1, 4);
  const AdFamily fam = AdFamily::FromObservation(obs.active[0], p);
  DetectionConfig cfg;
  cfg.x = 0.99;
  cfg.l_max = 1;
  cfg.r_max = 1;
  cfg.min_conditional = MinConditionalSize(0.99, 0.5, 1, 20);
  const SearchResult agg = AgglomerativeCoreSearch(fam, cfg);
  EXPECT_EQ(agg.family, (Family{{3}}));
  const SearchResult rem = RemovalCoreSearch(fam, cfg);
  EXPECT_EQ(rem.family, (Family{{3}}));
  EXPECT_LE(rem.tests, 1U * 1U * 20U);
}

TEST(MinConditionalSize, BoundsFalseIntersections) {
  const std::size_t k = MinConditionalSize(0.99, 0.5, 1, 20);
  // 20 * 0.5^k <= 0.01 needs k >= 11 when x * k rounds up to k.
  EXPECT_EQ(k, 11U);
  EXPECT_THROW(MinConditionalSize(0.5, 0.5, 1, 20), DomainError);
}

TEST(CoreSearch, TwoMemberCoreRecovered) {
  const std::size_t n = 8;
  // A small alpha leaves a wide soundness margin below x = 0.75.
  const PlacementMatrix p = BernoulliPlacement({n, 900, 0.3, 17});
  const Family core{{1, 3}, {4}};
  const auto spec = TargetingSpec::Targeted(0, core, 1.0, 0.0);
  const auto [obs, trace] = SimulateBehavioral(p, {spec}, 1, 4);
  const AdFamily fam = AdFamily::FromObservation(obs.active[0], p);
  DetectionConfig cfg;
  cfg.x = 0.75;
  cfg.min_conditional = MinConditionalSize(0.75, 0.3, 2, n);
  cfg.l_max = 2;
  cfg.r_max = 2;
  EXPECT_EQ(AgglomerativeCoreSearch(fam, cfg).family, core);
  const SearchResult rem = RemovalCoreSearch(fam, cfg);
  EXPECT_EQ(rem.family, core);
  EXPECT_LE(rem.tests, 2U * 4U * n);
}

TEST(CoreSearch, PairCoreByRemoval) {
  const std::size_t n = 30;
  const PlacementMatrix p = BernoulliPlacement({n, 80, 0.5, 3});
  const auto spec = TargetingSpec::Targeted(0, Family{{1, 3}}, 1.0, 0.0);
  const auto [obs, trace] = SimulateBehavioral(p, {spec}, 1, 2);
  const AdFamily fam = AdFamily::FromObservation(obs.active[0], p);
  DetectionConfig cfg;
  cfg.x = 0.99;
  cfg.l_max = 1;
  cfg.min_conditional = MinConditionalSize(0.99, 0.5, 1, n);
  const SearchResult rem = RemovalCoreSearch(fam, cfg);
  EXPECT_EQ(rem.family, (Family{{1, 3}}));
  EXPECT_LE(rem.tests, 1U * 2U * n);
  EXPECT_FALSE(rem.trace.empty());
}

TEST(CoreSearch, TwoSingletonsByRemoval) {
  const std::size_t n = 12;
  const PlacementMatrix p = BernoulliPlacement({n, 400, 0.2, 8});
  const auto spec = TargetingSpec::Targeted(0, Family{{2}, {5}}, 1.0, 0.0);
  const auto [obs, trace] = SimulateBehavioral(p, {spec}, 1, 2);
  const AdFamily fam = AdFamily::FromObservation(obs.active[0], p);
  DetectionConfig cfg;
  cfg.x = 0.75;
  cfg.min_conditional = MinConditionalSize(0.75, 0.2, 2, n);
  cfg.l_max = 2;
  EXPECT_EQ(RemovalCoreSearch(fam, cfg).family, (Family{{2}, {5}}));
}

TEST(CoreSearch, UntargetedGivesEmptyFamily) {
  // Accounts share no input structure.
  const AdFamily fam = Fam(6, {{0}, {1}, {2}, {3}, {4}, {5}});
  DetectionConfig cfg;
  cfg.x = 0.9;
  cfg.l_max = 1;
  cfg.r_max = 2;
  const SearchResult agg = AgglomerativeCoreSearch(fam, cfg);
  EXPECT_TRUE(agg.family.empty());
  EXPECT_FALSE(agg.detected);
  const SearchResult rem = RemovalCoreSearch(fam, cfg);
  EXPECT_TRUE(rem.family.empty());
  EXPECT_EQ(rem.detection_tests, 1U);
}

TEST(CoreSearch, BudgetAndConfigErrors) {
  const AdFamily fam = Fam(6, {{1, 2}, {1, 3}});
  DetectionConfig cfg;
  cfg.x = 1.0;
  cfg.r_max = 2;
  cfg.test_budget = 1;
  EXPECT_THROW(RemovalCoreSearch(fam, cfg), BudgetExceeded);
  DetectionConfig no_r;
  EXPECT_THROW(AgglomerativeCoreSearch(fam, no_r), ConfigError);
  DetectionConfig bad_x;
  bad_x.x = 0.0;
  EXPECT_THROW(DetectTargeting(fam, bad_x), ConfigError);
}

}  // namespace
}  // namespace xcorr
