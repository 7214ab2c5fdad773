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

#include "xcorr/core_model.h"

#include <algorithm>
#include <sstream>

#include "xcorr/errors.h"

namespace xcorr {
namespace {

void Normalize(std::vector<InputId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Combination::Combination(std::initializer_list<InputId> inputs)
    : inputs_(inputs) {
  Normalize(inputs_);
}

Combination::Combination(std::vector<InputId> inputs)
    : inputs_(std::move(inputs)) {
  Normalize(inputs_);
}

Combination Combination::FromBits(BitSpan bits) {
  Combination c;
  c.inputs_ = bits.ones();
  return c;
}

bool Combination::contains(InputId id) const {
  return std::binary_search(inputs_.begin(), inputs_.end(), id);
}

bool Combination::is_subset_of(const Combination& other) const {
  return std::includes(other.inputs_.begin(), other.inputs_.end(),
                       inputs_.begin(), inputs_.end());
}

BitSet Combination::to_bits(std::size_t n_inputs) const {
  if (!inputs_.empty() && inputs_.back() >= n_inputs) {
    throw DomainError("input " + std::to_string(inputs_.back()) +
                      " out of range for " + std::to_string(n_inputs) +
                      " inputs");
  }
  return BitSet::FromIndices(n_inputs, inputs_);
}

std::uint64_t Combination::to_mask() const {
  std::uint64_t mask = 0;
  for (InputId i : inputs_) {
    if (i >= 64) throw DomainError("input id too large for a 64-bit mask");
    mask |= std::uint64_t{1} << i;
  }
  return mask;
}

Combination Combination::with(InputId id) const {
  Combination c = *this;
  auto it = std::lower_bound(c.inputs_.begin(), c.inputs_.end(), id);
  if (it == c.inputs_.end() || *it != id) c.inputs_.insert(it, id);
  return c;
}

Combination Combination::without(InputId id) const {
  Combination c = *this;
  auto it = std::lower_bound(c.inputs_.begin(), c.inputs_.end(), id);
  if (it != c.inputs_.end() && *it == id) c.inputs_.erase(it);
  return c;
}

Family::Family(std::initializer_list<Combination> combinations)
    : Family(std::vector<Combination>(combinations)) {}

Family::Family(std::vector<Combination> combinations)
    : combos_(std::move(combinations)) {
  std::sort(combos_.begin(), combos_.end());
  combos_.erase(std::unique(combos_.begin(), combos_.end()), combos_.end());
}

std::size_t Family::order() const {
  std::size_t r = 0;
  for (const auto& c : combos_) r = std::max(r, c.order());
  return r;
}

bool Family::contains(const Combination& c) const {
  return std::binary_search(combos_.begin(), combos_.end(), c);
}

bool Family::is_antichain() const {
  for (std::size_t i = 0; i < combos_.size(); ++i) {
    for (std::size_t j = 0; j < combos_.size(); ++j) {
      if (i != j && combos_[i].is_subset_of(combos_[j])) return false;
    }
  }
  return true;
}

bool Family::covers(const Combination& inputs) const {
  return std::any_of(combos_.begin(), combos_.end(),
                     [&](const Combination& c) { return c.is_subset_of(inputs); });
}

void Family::insert(Combination c) {
  auto it = std::lower_bound(combos_.begin(), combos_.end(), c);
  if (it == combos_.end() || *it != c) combos_.insert(it, std::move(c));
}

TruthTable::TruthTable(std::size_t n_inputs) : n_(n_inputs) {
  if (n_inputs > kMaxInputs) {
    throw DomainError("truth tables are limited to " +
                      std::to_string(kMaxInputs) + " inputs");
  }
  values_.assign(std::size_t{1} << n_inputs, 0);
}

TruthTable TruthTable::FromFamily(const Family& core, std::size_t n_inputs) {
  TruthTable t(n_inputs);
  std::vector<std::uint64_t> masks;
  for (const auto& c : core) {
    if (!c.empty() && c.inputs().back() >= n_inputs) {
      throw DomainError("core input out of range for truth table");
    }
    masks.push_back(c.to_mask());
  }
  for (std::uint64_t x = 0; x < t.size(); ++x) {
    const bool hit = std::any_of(masks.begin(), masks.end(), [x](auto m) {
      return (m & ~x) == 0;
    });
    t.set(x, hit);
  }
  return t;
}

bool EvalTargeting(const Family& core, const Combination& inputs) {
  return core.covers(inputs);
}

bool EvalTargeting(std::span<const BitSet> core_bits, BitSpan inputs) {
  return std::any_of(core_bits.begin(), core_bits.end(),
                     [&](const BitSet& c) { return IsSubset(c, inputs); });
}

bool Explains(const Family& s, const Family& s_prime) {
  return std::all_of(s_prime.begin(), s_prime.end(),
                     [&](const Combination& c) { return s.covers(c); });
}

AxiomReport CheckAxioms(const TruthTable& f) {
  AxiomReport report;
  report.monotone = true;
  bool seen_true = false;
  bool seen_false = false;
  const std::size_t n = f.n_inputs();
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    (f.at(x) ? seen_true : seen_false) = true;
    if (!f.at(x)) continue;
    // Checking single-input supersets suffices: the subset order is generated
    // by covering steps.
    for (std::size_t i = 0; i < n && report.monotone; ++i) {
      const std::uint64_t up = x | (std::uint64_t{1} << i);
      if (!f.at(up)) report.monotone = false;
    }
  }
  report.input_sensitive = seen_true && seen_false;
  return report;
}

Family ExtractCoreFamily(const TruthTable& f) {
  const AxiomReport axioms = CheckAxioms(f);
  if (!axioms.monotone) {
    throw AxiomViolation("targeting function is not monotone");
  }
  if (!axioms.input_sensitive) {
    throw AxiomViolation("targeting function is constant");
  }
  const std::size_t n = f.n_inputs();
  std::vector<Combination> minimal;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    if (!f.at(x)) continue;
    // Under monotonicity a true point is minimal iff dropping any single
    // input makes it false.
    bool is_minimal = true;
    for (std::size_t i = 0; i < n && is_minimal; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if ((x & bit) != 0 && f.at(x & ~bit)) is_minimal = false;
    }
    if (!is_minimal) continue;
    std::vector<InputId> ids;
    for (std::size_t i = 0; i < n; ++i) {
      if ((x >> i) & 1U) ids.push_back(static_cast<InputId>(i));
    }
    minimal.emplace_back(std::move(ids));
  }
  return Family(std::move(minimal));
}

std::string ToString(const Combination& c) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < c.order(); ++i) {
    if (i > 0) os << ',';
    os << c.inputs()[i];
  }
  os << ']';
  return os.str();
}

std::string ToString(const Family& f) {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (const auto& c : f) {
    if (!first) os << ',';
    first = false;
    os << ToString(c);
  }
  os << ']';
  return os.str();
}

}  // namespace xcorr
