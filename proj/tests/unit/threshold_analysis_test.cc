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

#include <cmath>

#include "oracles.h"
#include "xcorr/errors.h"
#include "xcorr/threshold_analysis.h"

namespace xcorr {
namespace {

TEST(Phi, Examples) {
  for (double x : {1e-9, 0.1, 0.5, 0.9, 1 - 1e-9}) {
    EXPECT_EQ(Phi(1, 1, x), 1.0);
  }
  EXPECT_NEAR(Phi(1, 2, 1 - 1e-9), 0.5, 1e-6);
  EXPECT_NEAR(Phi(2, 2, 0.75), 1.0 / 9.0, 1e-12);
  EXPECT_THROW(Phi(2, 2, 0.0), DomainError);
  EXPECT_THROW(Phi(2, 2, 1.0), DomainError);
  EXPECT_THROW(Phi(0, 2, 0.5), DomainError);
}

TEST(Phi, AgreesWithDirectFormula) {
  for (int l = 1; l <= 4; ++l) {
    for (int r = 1; r <= 4; ++r) {
      for (double x = 0.05; x < 0.96; x += 0.05) {
        EXPECT_NEAR(Phi(l, r, x), oracle::NaivePhi(l, r, x),
                    1e-10 * std::max(1.0, oracle::NaivePhi(l, r, x)));
      }
    }
  }
}

TEST(Phi, StableNearEnds) {
  EXPECT_TRUE(std::isfinite(Phi(3, 2, 1e-12)));
  EXPECT_TRUE(std::isfinite(Phi(3, 2, 1 - 1e-12)));
  EXPECT_LT(Phi(3, 2, 1e-12), 1e-3);
  EXPECT_LT(Phi(3, 2, 1 - 1e-12), 1e-3);
}

TEST(MaxRatio, ClosedForms) {
  for (int k = 1; k <= 10; ++k) {
    EXPECT_EQ(MaxRatio(1, k).m_lr, 1.0 / k);
    EXPECT_EQ(MaxRatio(k, 1).m_lr, 1.0 / k);
  }
  for (int n = 2; n <= 5; ++n) {
    const double d = std::pow(2.0, n) - 1.0;
    const ThresholdResult r = MaxRatio(n, n);
    EXPECT_NEAR(r.m_lr, 1.0 / (d * d), 1e-9);
    EXPECT_NEAR(r.z_star, 0.5, 1e-12);
  }
  const ThresholdResult r22 = MaxRatio(2, 2);
  EXPECT_NEAR(r22.x_star, 0.75, 1e-12);
  EXPECT_GT(MaxRatio(3, 3).m_lr, 0.02);
  EXPECT_TRUE(MaxRatio(1, 3).limit);
  EXPECT_EQ(MaxRatio(1, 3).method, ThresholdMethod::kClosedForm);
}

TEST(MaxRatio, RootFoundCasesAreConsistent) {
  for (int l = 2; l <= 6; ++l) {
    for (int r = 2; r <= 6; ++r) {
      if (l == r) continue;
      const ThresholdResult res = MaxRatio(l, r);
      EXPECT_EQ(res.method, ThresholdMethod::kRootFound);
      EXPECT_LT(std::abs(RootResidual(l, r, res.z_star)), 1e-10);
      EXPECT_GT(res.x_star, 0.0);
      EXPECT_LT(res.x_star, 1.0);
      EXPECT_NEAR(Phi(l, r, res.x_star), res.m_lr, 1e-9);
      // Grid maximum never beats the reported maximum.
      for (int k = 1; k < 1000; ++k) {
        EXPECT_LE(Phi(l, r, k / 1000.0), res.m_lr + 1e-12);
      }
    }
  }
}

TEST(MaxRatio, NonIncreasingInEachArgument) {
  for (int l = 1; l <= 6; ++l) {
    for (int r = 1; r <= 6; ++r) {
      if (l < 6) {
        EXPECT_GE(MaxRatio(l, r).m_lr, MaxRatio(l + 1, r).m_lr - 1e-12);
      }
      if (r < 6) {
        EXPECT_GE(MaxRatio(l, r).m_lr, MaxRatio(l, r + 1).m_lr - 1e-12);
      }
    }
  }
}

TEST(PhiCurve, UnimodalWithSmallEnds) {
  const auto curve = PhiCurve(3, 2, 1000);
  ASSERT_EQ(curve.size(), 1000U);
  std::size_t peak = 0;
  for (std::size_t k = 0; k < curve.size(); ++k) {
    if (curve[k].second > curve[peak].second) peak = k;
  }
  for (std::size_t k = 1; k <= peak; ++k) {
    EXPECT_GE(curve[k].second, curve[k - 1].second - 1e-15);
  }
  for (std::size_t k = peak + 1; k < curve.size(); ++k) {
    EXPECT_LE(curve[k].second, curve[k - 1].second + 1e-15);
  }
}

TEST(Admissible, Examples) {
  EXPECT_TRUE(Admissible(0.01, 0.7, 1, 1));
  EXPECT_FALSE(Admissible(0.02, 0.7, 3, 3));
  EXPECT_TRUE(Admissible(0.0, 0.4, 5, 5));
  EXPECT_THROW(Admissible(0.5, 0.4, 1, 1), DomainError);
}

TEST(RecommendConfig, Examples) {
  const RecommendedConfig r11 = RecommendConfig(1, 1, 0.3);
  ASSERT_TRUE(r11.admissible);
  EXPECT_NEAR(r11.x, 0.99, 1e-12);
  EXPECT_NEAR(r11.alpha, 0.95 * r11.x, 1e-12);

  const RecommendedConfig r22 = RecommendConfig(2, 2, 0.05);
  ASSERT_TRUE(r22.admissible);
  EXPECT_NEAR(r22.x, 0.75, 1e-12);
  EXPECT_NEAR(r22.alpha, 0.475, 1e-12);

  const RecommendedConfig r33 = RecommendConfig(3, 3, 0.05);
  EXPECT_FALSE(r33.admissible);
  EXPECT_NEAR(r33.m_lr, 1.0 / 49.0, 1e-9);
}

TEST(RecommendConfig, SingleOrderLimitStaysAdmissible) {
  const RecommendedConfig rec = RecommendConfig(3, 1, 0.1);
  ASSERT_TRUE(rec.admissible);
  EXPECT_GT(Phi(3, 1, rec.x), 0.1);
  EXPECT_LT(rec.alpha, 1.0 - std::cbrt(1.0 - rec.x));
}

TEST(SoundnessConstant, GrowsAsMarginShrinks) {
  EXPECT_GT(SoundnessConstant(0.75, 0.49, 2), SoundnessConstant(0.75, 0.3, 2));
  EXPECT_GT(CompletenessBound(0.75, 0.475, 2), 0.0);
}

}  // namespace
}  // namespace xcorr
