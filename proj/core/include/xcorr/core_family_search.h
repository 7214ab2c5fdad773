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

#ifndef XCORR_CORE_FAMILY_SEARCH_H_
#define XCORR_CORE_FAMILY_SEARCH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xcorr/bitset.h"
#include "xcorr/core_model.h"
#include "xcorr/placement.h"

namespace xcorr {

// Multiset of input sets, one per active account of an output. Rows are
// members (bits over inputs); columns are kept alongside for the subset
// search.
class AdFamily {
 public:
  AdFamily() = default;
  explicit AdFamily(BitMatrix members);

  static AdFamily FromObservation(BitSpan active,
                                  const PlacementMatrix& placement);
  static AdFamily FromCombinations(std::size_t n_inputs,
                                   const std::vector<Combination>& members);

  std::size_t size() const { return rows_.rows(); }
  bool empty() const { return size() == 0; }
  std::size_t n_inputs() const { return rows_.cols(); }
  BitSpan member(std::size_t k) const { return rows_.row(k); }
  // Members holding `input`, as bits over members.
  BitSpan holders(InputId input) const { return cols_.row(input); }
  const BitMatrix& members() const { return rows_; }

  // Inputs held by at least one member, ascending.
  std::vector<InputId> present_inputs() const;
  std::vector<Combination> combinations() const;

 private:
  BitMatrix rows_;
  BitMatrix cols_;
};

struct DetectionConfig {
  double x = 0.5;  // in (0, 1]
  std::size_t l_max = 1;
  std::optional<std::size_t> r_max;
  std::optional<std::uint64_t> test_budget;
  // Conditional families with fewer members are too small to separate the
  // two outcomes; the containment test reports UNKNOWN for them.
  std::size_t min_conditional = 1;

  // Throws ConfigError.
  void Validate() const;
};

enum class TestOutcome { kPositive, kNegative, kUnknown };

std::string_view ToString(TestOutcome outcome);

// Smallest, then lexicographically first, combination of at most `l_max`
// inputs meeting at least a fraction `x` of the members. Throws EmptyFamily.
std::optional<Combination> FindXIntersectingSubset(const AdFamily& fam,
                                                   double x,
                                                   std::size_t l_max);

// Members containing `c`, with the inputs of `c` removed.
AdFamily ConditionalFamily(const AdFamily& fam, const Combination& c);

// True iff an x-intersecting subset of size <= l_max exists. Throws
// EmptyFamily.
bool DetectTargeting(const AdFamily& fam, const DetectionConfig& cfg);

// Positive when `c` contains a core combination: the conditional family has
// no x-intersecting subset. Unknown when no member contains `c`.
TestOutcome ContainsCoreTest(const Combination& c, const AdFamily& fam,
                             const DetectionConfig& cfg);

struct TraceEntry {
  std::uint64_t step = 0;
  std::string phase;
  Combination combination;
  TestOutcome outcome = TestOutcome::kUnknown;
};

struct SearchResult {
  Family family;
  bool detected = false;
  // Containment tests spent by the search proper.
  std::uint64_t tests = 0;
  // Tests spent on the initial detection step (removal search only).
  std::uint64_t detection_tests = 0;
  std::uint64_t unknowns = 0;
  std::vector<TraceEntry> trace;
};

// Breadth-first from the empty combination. Unknown outcomes count as
// negative. Throws BudgetExceeded.
SearchResult AgglomerativeCoreSearch(const AdFamily& fam,
                                     const DetectionConfig& cfg);

// Shrinks the set of present inputs one input at a time (ascending id),
// keeping a removal whenever the containment test stays positive, then
// restarts from every set that excludes one input of each found combination.
// Throws BudgetExceeded.
SearchResult RemovalCoreSearch(const AdFamily& fam, const DetectionConfig& cfg);

}  // namespace xcorr

#endif  // XCORR_CORE_FAMILY_SEARCH_H_
