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

#include "xcorr/threshold_analysis.h"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "xcorr/errors.h"

namespace xcorr {
namespace {

constexpr double kBracketLo = 1e-9;
constexpr double kBracketHi = 1.0 - 1e-9;
constexpr double kRootTol = 1e-12;
constexpr double kLimitOffset = 1e-6;

void CheckOrders(int l, int r) {
  if (l < 1 || r < 1) throw DomainError("l and r must be >= 1");
}

// f_n(z) = z^n / (1 - z^n)
double Ratio(double z, int n) {
  const double zn = std::pow(z, n);
  return zn / -std::expm1(n * std::log(z));
}

// Smallest x in (lo, hi) with phi(x) > target, given phi increasing there.
double BisectIncreasing(int l, int r, double lo, double hi, double target) {
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (Phi(l, r, mid) > target ? hi : lo) = mid;
  }
  return hi;
}

// Largest x in (lo, hi) with phi(x) > target, given phi decreasing there.
double BisectDecreasing(int l, int r, double lo, double hi, double target) {
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (Phi(l, r, mid) > target ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

std::string_view ToString(ThresholdMethod method) {
  return method == ThresholdMethod::kClosedForm ? "closed_form" : "root_found";
}

double Phi(int l, int r, double x) {
  CheckOrders(l, r);
  if (!(x > 0.0 && x < 1.0)) throw DomainError("x must be in (0, 1)");
  if (l == 1 && r == 1) return 1.0;
  // a = 1 - (1-x)^(1/l), computed without cancellation near x = 0.
  const double a = -std::expm1(std::log1p(-x) / l);
  const double ar = std::pow(a, r);
  const double one_minus_ar = -std::expm1(r * std::log(a));
  return ((1.0 - x) / x) * (ar / one_minus_ar);
}

double RootResidual(int l, int r, double z) {
  return r * std::pow(z, l + 1) - l * std::pow(1.0 - z, r + 1) -
         (r + l) * z + l;
}

ThresholdResult MaxRatio(int l, int r) {
  CheckOrders(l, r);
  ThresholdResult out;
  out.l = l;
  out.r = r;
  if (l == 1) {
    out.m_lr = 1.0 / r;
    out.x_star = 1.0 - kLimitOffset;
    out.z_star = 1.0 - out.x_star;
    out.limit = true;
    return out;
  }
  if (r == 1) {
    // phi decreases in x; the supremum sits at x -> 0.
    out.m_lr = 1.0 / l;
    out.x_star = kLimitOffset;
    out.z_star = std::pow(1.0 - out.x_star, 1.0 / l);
    out.limit = true;
    return out;
  }
  if (l == r) {
    const double d = std::ldexp(1.0, l) - 1.0;
    out.m_lr = 1.0 / (d * d);
    out.z_star = 0.5;
    out.x_star = 1.0 - std::ldexp(1.0, -l);
    return out;
  }
  double lo = kBracketLo;
  double hi = kBracketHi;
  if (!(RootResidual(l, r, lo) > 0.0 && RootResidual(l, r, hi) < 0.0)) {
    throw ConvergenceError("root bracket failed for l=" + std::to_string(l) +
                           ", r=" + std::to_string(r));
  }
  while (hi - lo > kRootTol) {
    const double mid = 0.5 * (lo + hi);
    (RootResidual(l, r, mid) > 0.0 ? lo : hi) = mid;
  }
  const double z = 0.5 * (lo + hi);
  out.method = ThresholdMethod::kRootFound;
  out.z_star = z;
  out.x_star = 1.0 - std::pow(z, l);
  out.m_lr = Ratio(z, l) * Ratio(1.0 - z, r);
  return out;
}

bool Admissible(double p_out, double p_in, int l, int r) {
  if (!(p_out >= 0.0 && p_out < p_in && p_in <= 1.0)) {
    throw DomainError("need 0 <= p_out < p_in <= 1");
  }
  return p_out / p_in < MaxRatio(l, r).m_lr;
}

RecommendedConfig RecommendConfig(int l, int r, double ratio) {
  if (!(ratio >= 0.0)) throw DomainError("ratio must be >= 0");
  const ThresholdResult best = MaxRatio(l, r);
  RecommendedConfig out;
  out.m_lr = best.m_lr;
  if (!(ratio < best.m_lr)) return out;
  out.admissible = true;
  if (!best.limit) {
    out.x = best.x_star;
  } else if (l == 1) {
    out.x = kLimitCap;
    if (!(Phi(l, r, out.x) > ratio)) {
      out.x = BisectIncreasing(l, r, kLimitCap, 1.0 - 1e-12, ratio);
    }
  } else {
    // r == 1: aim halfway between the ratio and the supremum.
    const double target = 0.5 * (ratio + best.m_lr);
    out.x = BisectDecreasing(l, r, 1e-12, 1.0 - 1e-12, target);
  }
  out.alpha = -std::expm1(std::log1p(-out.x) / l) * (1.0 - kAlphaMargin);
  return out;
}

std::vector<std::pair<double, double>> PhiCurve(int l, int r, int points) {
  CheckOrders(l, r);
  if (points < 1) throw DomainError("points must be >= 1");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int k = 1; k <= points; ++k) {
    const double z = static_cast<double>(k) / (points + 1);
    out.emplace_back(z, Phi(l, r, 1.0 - std::pow(z, l)));
  }
  return out;
}

double SoundnessConstant(double x, double alpha, int l) {
  if (l < 1) throw DomainError("l must be >= 1");
  const double q = -std::expm1(l * std::log1p(-alpha));
  if (!(x > q)) throw DomainError("soundness needs x > 1 - (1 - alpha)^l");
  return 3.0 * q / ((x - q) * (x - q));
}

namespace {

std::size_t ComputeMinConditionalSize(double x, double alpha, int l,
                                      std::size_t n_inputs, double delta) {
  if (l < 1 || n_inputs < 1) throw DomainError("need l >= 1 and n_inputs >= 1");
  if (!(x > 0.0 && x <= 1.0 && alpha > 0.0 && alpha < 1.0 && delta > 0.0)) {
    throw DomainError("need x in (0, 1], alpha in (0, 1), delta > 0");
  }
  const double q = -std::expm1(l * std::log1p(-alpha));
  if (!(x > q)) throw DomainError("x must exceed 1 - (1 - alpha)^l");
  // log of the number of subsets with 1..l inputs.
  double subsets = 0.0;
  for (int s = 1; s <= l && static_cast<std::size_t>(s) <= n_inputs; ++s) {
    subsets += std::exp(std::lgamma(n_inputs + 1.0) - std::lgamma(s + 1.0) -
                        std::lgamma(n_inputs - s + 1.0));
  }
  const double log_budget = std::log(delta) - std::log(subsets);
  const double lq = std::log(q);
  const double lp = std::log1p(-q);
  constexpr std::size_t kMaxSize = 1'000'000;
  for (std::size_t k = 1; k <= kMaxSize; ++k) {
    const auto need = static_cast<std::size_t>(
        std::ceil(x * static_cast<double>(k) - 1e-9));
    // log P(Bin(k, q) >= need). need lies above the mean, so terms fall
    // geometrically from j = need and the tail is cut once they vanish.
    const double lk = std::lgamma(k + 1.0);
    double hi = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (std::size_t j = need; j <= k; ++j) {
      const double t = lk - std::lgamma(j + 1.0) - std::lgamma(k - j + 1.0) +
                       j * lq + (k - j) * lp;
      if (t > hi) {
        sum = sum * std::exp(hi - t) + 1.0;
        hi = t;
      } else {
        sum += std::exp(t - hi);
        if (t < hi - 50.0) break;
      }
    }
    if (hi + std::log(sum) <= log_budget) return k;
  }
  throw DomainError("no family size up to 10^6 meets the bound");
}

}  // namespace

std::size_t MinConditionalSize(double x, double alpha, int l,
                               std::size_t n_inputs, double delta) {
  // Every trial of a scenario asks for the same size.
  using Key = std::tuple<double, double, int, std::size_t, double>;
  static std::mutex mu;
  static std::map<Key, std::size_t> memo;
  const Key key{x, alpha, l, n_inputs, delta};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  const std::size_t k = ComputeMinConditionalSize(x, alpha, l, n_inputs, delta);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, k);
  return k;
}

double CompletenessBound(double x, double alpha, int r) {
  if (r < 1) throw DomainError("r must be >= 1");
  if (!(x > 0.0 && x < 1.0 && alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("x and alpha must be in (0, 1)");
  }
  const double ar = std::pow(alpha, r);
  return ((1.0 - x) / x) * ar / (1.0 - ar);
}

}  // namespace xcorr
