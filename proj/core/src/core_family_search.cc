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

#include "xcorr/core_family_search.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "xcorr/errors.h"

namespace xcorr {
namespace {

constexpr double kFractionSlack = 1e-9;

std::size_t Required(double x, std::size_t members) {
  return static_cast<std::size_t>(
      std::ceil(x * static_cast<double>(members) - kFractionSlack));
}

// Lexicographic depth-first enumeration of `size`-subsets of `inputs`,
// accumulating the union of holder columns.
class SubsetSearch {
 public:
  SubsetSearch(const AdFamily& fam, std::vector<InputId> inputs,
               std::size_t need)
      : fam_(fam), inputs_(std::move(inputs)), need_(need) {}

  std::optional<Combination> Run(std::size_t size) {
    chosen_.clear();
    acc_.assign(size + 1, BitSet(fam_.size()));
    if (Descend(0, 0, size)) return Combination(chosen_);
    return std::nullopt;
  }

 private:
  bool Descend(std::size_t depth, std::size_t start, std::size_t size) {
    if (depth == size) return acc_[depth].count() >= need_;
    for (std::size_t p = start; p + (size - depth) <= inputs_.size(); ++p) {
      BitSet& next = acc_[depth + 1];
      next = acc_[depth];
      next |= fam_.holders(inputs_[p]);
      chosen_.push_back(inputs_[p]);
      if (Descend(depth + 1, p + 1, size)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  const AdFamily& fam_;
  std::vector<InputId> inputs_;
  std::size_t need_;
  std::vector<InputId> chosen_;
  std::vector<BitSet> acc_;
};

class TestRunner {
 public:
  TestRunner(const AdFamily& fam, const DetectionConfig& cfg,
             SearchResult& result)
      : fam_(fam), cfg_(cfg), result_(result) {}

  TestOutcome Test(const Combination& c, const std::string& phase,
                   bool detection = false) {
    const std::uint64_t spent = result_.tests + result_.detection_tests;
    if (cfg_.test_budget && spent >= *cfg_.test_budget) {
      throw BudgetExceeded("test budget of " +
                           std::to_string(*cfg_.test_budget) + " exhausted");
    }
    ++(detection ? result_.detection_tests : result_.tests);
    const TestOutcome outcome = ContainsCoreTest(c, fam_, cfg_);
    if (outcome == TestOutcome::kUnknown) ++result_.unknowns;
    result_.trace.push_back({spent + 1, phase, c, outcome});
    return outcome;
  }

 private:
  const AdFamily& fam_;
  const DetectionConfig& cfg_;
  SearchResult& result_;
};

// Every set obtained from `all` by dropping one input of each found
// combination.
std::vector<Combination> RestartSets(const Combination& all,
                                     const std::vector<Combination>& found) {
  std::set<Combination> out;
  std::vector<InputId> drop;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == found.size()) {
      std::vector<InputId> keep;
      for (InputId i : all) {
        if (std::find(drop.begin(), drop.end(), i) == drop.end()) {
          keep.push_back(i);
        }
      }
      out.insert(Combination(std::move(keep)));
      return;
    }
    for (InputId i : found[k]) {
      drop.push_back(i);
      self(self, k + 1);
      drop.pop_back();
    }
  };
  rec(rec, 0);
  return {out.begin(), out.end()};
}

}  // namespace

AdFamily::AdFamily(BitMatrix members)
    : rows_(std::move(members)), cols_(rows_.transposed()) {}

AdFamily AdFamily::FromObservation(BitSpan active,
                                   const PlacementMatrix& placement) {
  if (active.size() != placement.n_accounts()) {
    throw MismatchedUniverse("active set and placement differ in accounts");
  }
  const auto accounts = active.ones();
  BitMatrix rows(accounts.size(), placement.n_inputs());
  for (std::size_t k = 0; k < accounts.size(); ++k) {
    const auto src = placement.account_bits(accounts[k]).words();
    std::copy(src.begin(), src.end(), rows.mutable_row(k).begin());
  }
  return AdFamily(std::move(rows));
}

AdFamily AdFamily::FromCombinations(std::size_t n_inputs,
                                    const std::vector<Combination>& members) {
  BitMatrix rows(0, n_inputs);
  for (const auto& c : members) rows.push_row(c.to_bits(n_inputs));
  return AdFamily(std::move(rows));
}

std::vector<InputId> AdFamily::present_inputs() const {
  std::vector<InputId> out;
  for (std::size_t i = 0; i < n_inputs(); ++i) {
    if (cols_.row(i).any()) out.push_back(static_cast<InputId>(i));
  }
  return out;
}

std::vector<Combination> AdFamily::combinations() const {
  std::vector<Combination> out;
  out.reserve(size());
  for (std::size_t k = 0; k < size(); ++k) {
    out.push_back(Combination::FromBits(member(k)));
  }
  return out;
}

void DetectionConfig::Validate() const {
  if (!(x > 0.0 && x <= 1.0)) throw ConfigError("x must be in (0, 1]");
  if (l_max < 1) throw ConfigError("l_max must be >= 1");
  if (r_max && *r_max < 1) throw ConfigError("r_max must be >= 1");
}

std::string_view ToString(TestOutcome outcome) {
  switch (outcome) {
    case TestOutcome::kPositive:
      return "positive";
    case TestOutcome::kNegative:
      return "negative";
    case TestOutcome::kUnknown:
      return "unknown";
  }
  return "unknown";
}

std::optional<Combination> FindXIntersectingSubset(const AdFamily& fam,
                                                   double x,
                                                   std::size_t l_max) {
  if (fam.empty()) throw EmptyFamily("family has no members");
  const std::size_t need = Required(x, fam.size());
  SubsetSearch search(fam, fam.present_inputs(), need);
  for (std::size_t size = 1; size <= l_max; ++size) {
    if (auto c = search.Run(size)) return c;
  }
  return std::nullopt;
}

AdFamily ConditionalFamily(const AdFamily& fam, const Combination& c) {
  const std::size_t n = fam.n_inputs();
  if (c.empty()) return fam;
  const BitSet mask = c.to_bits(n);
  const auto mw = mask.view().words();
  BitMatrix rows(0, n);
  BitSet row(n);
  for (std::size_t k = 0; k < fam.size(); ++k) {
    const BitSpan member = fam.member(k);
    if (!IsSubset(mask, member)) continue;
    const auto src = member.words();
    auto dst = row.mutable_words();
    for (std::size_t w = 0; w < src.size(); ++w) dst[w] = src[w] & ~mw[w];
    rows.push_row(row);
  }
  return AdFamily(std::move(rows));
}

bool DetectTargeting(const AdFamily& fam, const DetectionConfig& cfg) {
  cfg.Validate();
  return FindXIntersectingSubset(fam, cfg.x, cfg.l_max).has_value();
}

TestOutcome ContainsCoreTest(const Combination& c, const AdFamily& fam,
                             const DetectionConfig& cfg) {
  cfg.Validate();
  const AdFamily cond = ConditionalFamily(fam, c);
  if (cond.size() < std::max<std::size_t>(1, cfg.min_conditional)) {
    return TestOutcome::kUnknown;
  }
  return FindXIntersectingSubset(cond, cfg.x, cfg.l_max)
             ? TestOutcome::kNegative
             : TestOutcome::kPositive;
}

SearchResult AgglomerativeCoreSearch(const AdFamily& fam,
                                     const DetectionConfig& cfg) {
  cfg.Validate();
  if (!cfg.r_max) throw ConfigError("agglomerative search needs r_max");
  SearchResult result;
  if (fam.empty()) return result;
  TestRunner runner(fam, cfg, result);
  const std::vector<InputId> inputs = fam.present_inputs();

  std::vector<Combination> level{Combination{}};
  std::vector<Combination> found;
  for (std::size_t order = 0; order <= *cfg.r_max && !level.empty();
       ++order) {
    std::vector<Combination> next;
    for (const auto& c : level) {
      const bool covered = std::any_of(
          found.begin(), found.end(),
          [&](const Combination& f) { return f.is_subset_of(c); });
      if (covered) continue;
      const TestOutcome outcome = runner.Test(c, "bfs");
      if (outcome == TestOutcome::kPositive) {
        if (c.empty()) return result;  // untargeted
        found.push_back(c);
        if (found.size() >= cfg.l_max) {
          result.family = Family(found);
          result.detected = true;
          return result;
        }
        continue;
      }
      if (c.empty()) result.detected = true;
      if (order == *cfg.r_max) continue;
      const InputId floor = c.empty() ? 0 : c.inputs().back() + 1;
      for (InputId i : inputs) {
        if (i >= floor) next.push_back(c.with(i));
      }
    }
    level = std::move(next);
  }
  result.family = Family(found);
  return result;
}

SearchResult RemovalCoreSearch(const AdFamily& fam,
                               const DetectionConfig& cfg) {
  cfg.Validate();
  SearchResult result;
  if (fam.empty()) return result;
  TestRunner runner(fam, cfg, result);
  if (runner.Test(Combination{}, "detect", true) != TestOutcome::kNegative) {
    return result;
  }
  result.detected = true;

  // Inputs are dropped rarest first: core inputs sit in nearly every member,
  // so they are only reached once the conditional families are large.
  std::vector<InputId> order = fam.present_inputs();
  std::stable_sort(order.begin(), order.end(), [&](InputId a, InputId b) {
    return fam.holders(a).count() < fam.holders(b).count();
  });

  std::vector<Combination> found;
  std::map<Combination, TestOutcome> seen;
  auto test = [&](const Combination& c, const std::string& phase) {
    auto it = seen.find(c);
    if (it != seen.end()) return it->second;
    const TestOutcome outcome = runner.Test(c, phase);
    seen.emplace(c, outcome);
    return outcome;
  };
  // Large sets have (almost) no member holding them, so an UNKNOWN outcome
  // cannot refute containment and the removal stands. The survivor must
  // then pass an informative test.
  auto refine = [&](Combination c) -> std::optional<Combination> {
    for (InputId i : order) {
      if (!c.contains(i)) continue;
      Combination smaller = c.without(i);
      if (smaller.empty()) continue;
      if (test(smaller, "refine") != TestOutcome::kNegative) {
        c = std::move(smaller);
      }
    }
    if (test(c, "confirm") != TestOutcome::kPositive) return std::nullopt;
    return c;
  };

  const Combination all(order);
  std::optional<Combination> next = refine(all);
  while (next) {
    found.push_back(std::move(*next));
    next.reset();
    if (found.size() >= cfg.l_max) break;
    for (const auto& candidate : RestartSets(all, found)) {
      if (candidate.empty()) continue;
      if ((next = refine(candidate))) break;
    }
  }
  result.family = Family(found);
  return result;
}

}  // namespace xcorr
