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

#ifndef XCORR_CORE_MODEL_H_
#define XCORR_CORE_MODEL_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "xcorr/bitset.h"

namespace xcorr {

// Inputs are dense integers 0..N-1 (emails, products, videos).
using InputId = std::uint32_t;

// A set of inputs, kept sorted and duplicate-free. Its order is the number
// of inputs it holds.
class Combination {
 public:
  Combination() = default;
  Combination(std::initializer_list<InputId> inputs);
  explicit Combination(std::vector<InputId> inputs);

  static Combination FromBits(BitSpan bits);

  const std::vector<InputId>& inputs() const { return inputs_; }
  std::size_t order() const { return inputs_.size(); }
  bool empty() const { return inputs_.empty(); }
  bool contains(InputId id) const;
  bool is_subset_of(const Combination& other) const;

  // Bit mask over `n_inputs` inputs. Throws DomainError if an input is out of
  // range.
  BitSet to_bits(std::size_t n_inputs) const;
  // Only valid while every input is < 64.
  std::uint64_t to_mask() const;

  Combination with(InputId id) const;
  Combination without(InputId id) const;

  auto begin() const { return inputs_.begin(); }
  auto end() const { return inputs_.end(); }

  friend bool operator==(const Combination&, const Combination&) = default;
  friend auto operator<=>(const Combination& a, const Combination& b) {
    return a.inputs_ <=> b.inputs_;
  }

 private:
  std::vector<InputId> inputs_;
};

// A duplicate-free collection of combinations in canonical (lexicographic)
// order. Size l is the number of combinations, order r the largest order.
class Family {
 public:
  Family() = default;
  Family(std::initializer_list<Combination> combinations);
  explicit Family(std::vector<Combination> combinations);

  const std::vector<Combination>& combinations() const { return combos_; }
  std::size_t size() const { return combos_.size(); }
  std::size_t order() const;
  bool empty() const { return combos_.empty(); }
  bool contains(const Combination& c) const;

  // No member is a subset of another member.
  bool is_antichain() const;

  // True iff some member is a subset of `inputs`.
  bool covers(const Combination& inputs) const;

  void insert(Combination c);

  auto begin() const { return combos_.begin(); }
  auto end() const { return combos_.end(); }

  friend bool operator==(const Family&, const Family&) = default;

 private:
  std::vector<Combination> combos_;
};

// Complete boolean function over all 2^n subsets of n <= 24 inputs. Subsets
// are indexed by bit mask.
class TruthTable {
 public:
  static constexpr std::size_t kMaxInputs = 24;

  explicit TruthTable(std::size_t n_inputs);

  // Materializes x -> eval_targeting(core, x).
  static TruthTable FromFamily(const Family& core, std::size_t n_inputs);

  std::size_t n_inputs() const { return n_; }
  std::size_t size() const { return values_.size(); }
  bool at(std::uint64_t mask) const { return values_[mask] != 0; }
  void set(std::uint64_t mask, bool value) { values_[mask] = value ? 1 : 0; }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> values_;
};

struct AxiomReport {
  bool monotone = false;
  bool input_sensitive = false;

  bool ok() const { return monotone && input_sensitive; }
};

// f(inputs) for the targeting function generated by `core`: true iff some
// combination of the core is contained in `inputs`. The empty core is the
// null (never targeted) function.
bool EvalTargeting(const Family& core, const Combination& inputs);

// Fast path over bit masks; every core member must fit in `inputs` width.
bool EvalTargeting(std::span<const BitSet> core_bits, BitSpan inputs);

// True iff every combination of `s_prime` contains some combination of `s`.
bool Explains(const Family& s, const Family& s_prime);

AxiomReport CheckAxioms(const TruthTable& f);

// The unique minimal family explaining f: the subset-minimal true points.
// Throws AxiomViolation unless f is monotone and input-sensitive.
Family ExtractCoreFamily(const TruthTable& f);

std::string ToString(const Combination& c);
std::string ToString(const Family& f);

}  // namespace xcorr

#endif  // XCORR_CORE_MODEL_H_
