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

#ifndef XCORR_THRESHOLD_ANALYSIS_H_
#define XCORR_THRESHOLD_ANALYSIS_H_

#include <string_view>
#include <utility>
#include <vector>

namespace xcorr {

enum class ThresholdMethod { kClosedForm, kRootFound };

std::string_view ToString(ThresholdMethod method);

struct ThresholdResult {
  int l = 1;
  int r = 1;
  double m_lr = 0.0;    // sup over x of phi(l, r, x)
  double x_star = 0.0;  // argmax (reported inside (0, 1) for limits)
  double z_star = 0.0;  // x_star = 1 - z_star^l
  ThresholdMethod method = ThresholdMethod::kClosedForm;
  // The supremum is only approached as x tends to an end of (0, 1).
  bool limit = false;
};

// Largest detectable p_out/p_in for threshold fraction x:
// ((1-x)/x) * a^r / (1 - a^r) with a = 1 - (1-x)^(1/l).
// Throws DomainError unless l, r >= 1 and 0 < x < 1.
double Phi(int l, int r, double x);

// Residual of r z^(l+1) - l (1-z)^(r+1) - (r+l) z + l.
double RootResidual(int l, int r, double z);

// Throws DomainError for l or r < 1, ConvergenceError if the bracket fails.
ThresholdResult MaxRatio(int l, int r);

// p_out/p_in < M_{l,r}. Throws DomainError unless 0 <= p_out < p_in <= 1.
bool Admissible(double p_out, double p_in, int l, int r);

inline constexpr double kAlphaMargin = 0.05;
inline constexpr double kLimitCap = 0.99;

struct RecommendedConfig {
  bool admissible = false;
  double x = 0.0;
  double alpha = 0.0;
  double m_lr = 0.0;  // the bound the ratio was compared against
};

// x = x_star when the maximum is attained; when it is only a supremum, x is
// capped at 0.99 (or moved just far enough past it to clear the ratio).
// alpha = (1 - (1-x)^(1/l)) * (1 - margin). Throws DomainError for ratio < 0.
RecommendedConfig RecommendConfig(int l, int r, double ratio);

// (z, phi) samples along x = 1 - z^l for z in (0, 1).
std::vector<std::pair<double, double>> PhiCurve(int l, int r, int points);

// Reference value of the soundness constant
// 3 q / (x - q)^2 with q = 1 - (1 - alpha)^l; requires x > q.
double SoundnessConstant(double x, double alpha, int l);

// Ratio bound ((1-x)/x) * alpha^r / (1 - alpha^r) under which accounts
// holding a core combination dominate the active set.
double CompletenessBound(double x, double alpha, int r);

// Smallest family size k for which a family of k random accounts (each input
// held with probability alpha) has an x-intersecting subset of at most l of
// n_inputs inputs with probability at most delta, by a union bound over
// subsets and the exact binomial tail. Throws DomainError when
// x <= 1 - (1 - alpha)^l, where no size suffices.
std::size_t MinConditionalSize(double x, double alpha, int l,
                               std::size_t n_inputs, double delta = 0.01);

}  // namespace xcorr

#endif  // XCORR_THRESHOLD_ANALYSIS_H_
