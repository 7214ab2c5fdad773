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

#include <string>

#include "oracles.h"
#include "xcorr/errors.h"
#include "xcorr/scenario.h"

namespace xcorr {
namespace {

std::string ErrorOf(const std::string& text) {
  try {
    ParseScenario(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(ParseScenario, MinimalDefaults) {
  const ScenarioConfig cfg =
      ParseScenario(R"({"workload": {"targeted_ads": 3}})");
  EXPECT_EQ(cfg.n_inputs, 20U);
  EXPECT_EQ(cfg.targeted_ads(), 3U);
  EXPECT_EQ(cfg.algorithms, (std::vector<std::string>{"bayes"}));
}

TEST(ParseScenario, PresetWithOverrides) {
  const ScenarioConfig cfg = ParseScenario(
      R"({"preset": "gmail-like", "n_inputs": 30, "placement": {"accounts": 12}})");
  EXPECT_EQ(cfg.preset, "gmail-like");
  EXPECT_EQ(cfg.n_inputs, 30U);
  EXPECT_EQ(cfg.accounts(), 12U);
  EXPECT_TRUE(cfg.service.contextual);
}

TEST(ParseScenario, AccountsFromConstant) {
  const ScenarioConfig cfg = ParseScenario(
      R"({"n_inputs": 100, "workload": {"targeted_ads": 1}, "placement": {"c": 4}})");
  EXPECT_EQ(cfg.accounts(), 19U);
}

TEST(ParseScenario, ErrorsNameTheLine) {
  const std::string unknown = ErrorOf("{\n  \"n_inputs\": 5,\n  \"bogus\": 1\n}");
  EXPECT_NE(unknown.find("line 3"), std::string::npos) << unknown;
  EXPECT_NE(unknown.find("bogus"), std::string::npos) << unknown;

  const std::string malformed = ErrorOf("{\n\n  \"n_inputs\": ,\n}");
  EXPECT_NE(malformed.find("line 3"), std::string::npos) << malformed;

  const std::string wrong_type =
      ErrorOf("{\n  \"workload\": {\"targeted_ads\": 1},\n  \"trials\": \"ten\"\n}");
  EXPECT_NE(wrong_type.find("line 3"), std::string::npos) << wrong_type;
}

TEST(ParseScenario, SemanticErrors) {
  EXPECT_FALSE(ErrorOf(R"({"workload": {"targeted_ads": 1}, "service": {"p_in": 0.1, "p_out": 0.2}})").empty());
  EXPECT_FALSE(ErrorOf(R"({"workload": {"targeted_ads": 1}, "algorithms": ["magic"]})").empty());
  EXPECT_FALSE(ErrorOf(R"({"preset": "nope"})").empty());
  EXPECT_FALSE(ErrorOf(R"({"workload": {}})").empty());
  EXPECT_FALSE(ErrorOf(R"({"workload": {"targeted_ads": 1}, "algorithms": ["contextual"]})").empty());
}

TEST(ScenarioConfig, AutoDetectionParameters) {
  ScenarioConfig cfg = ParseScenario(R"({
    "n_inputs": 100,
    "workload": {"targeted_ads": 1, "core": {"l": 2, "r": 2}},
    "service": {"p_in": 0.7, "p_out": 0.014},
    "placement": {"alpha": "auto"},
    "algorithms": ["detect"],
    "corefamily": {"l_max": 2, "r_max": 2, "ratio": 0.02}
  })");
  EXPECT_NEAR(cfg.detection_x(), 0.75, 1e-12);
  EXPECT_NEAR(cfg.alpha(), 0.475, 1e-12);
  cfg.corefamily.ratio = 0.5;
  EXPECT_THROW(cfg.alpha(), ConfigError);
}

TEST(ScenarioJson, RoundTripPreservesHash) {
  const ScenarioConfig a = GmailLikePreset();
  const ScenarioConfig b = ParseScenario(ScenarioToJson(a));
  EXPECT_EQ(ScenarioToJson(a), ScenarioToJson(b));
  EXPECT_EQ(ScenarioHash(a), ScenarioHash(b));
  ScenarioConfig c = a;
  c.seed += 1;
  EXPECT_NE(ScenarioHash(a), ScenarioHash(c));
}

TEST(LoadScenario, ShippedConfigLoads) {
  const ScenarioConfig cfg =
      LoadScenario(std::string(XCORR_CONFIG_DIR) + "/gmail_like_n20.json");
  EXPECT_EQ(cfg.n_inputs, 20U);
  EXPECT_THROW(LoadScenario("/nonexistent/config.json"), ConfigError);
}

TEST(Presets, Valid) {
  EXPECT_NO_THROW(GmailLikePreset().Validate());
  EXPECT_NO_THROW(AmazonLikePreset().Validate());
  EXPECT_EQ(PresetByName("amazon-like").preset, "amazon-like");
}

}  // namespace
}  // namespace xcorr
