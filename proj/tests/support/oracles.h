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

#ifndef XCORR_TESTS_SUPPORT_ORACLES_H_
#define XCORR_TESTS_SUPPORT_ORACLES_H_

// Brute-force reference implementations. They share no code with the
// library beyond its value types.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <vector>

#include "xcorr/core_model.h"

namespace xcorr {

// Readable assertion messages.
inline void PrintTo(const Combination& c, std::ostream* os) { *os << ToString(c); }
inline void PrintTo(const Family& f, std::ostream* os) { *os << ToString(f); }

}  // namespace xcorr

namespace xcorr::oracle {

using Mask = std::uint32_t;

// Truth table over n <= 12 inputs, indexed by input mask.
using Table = std::vector<bool>;

// Upward closure of the generator masks.
Table UpwardClosure(const std::vector<Mask>& generators, std::size_t n);

// Random monotone, input-sensitive table: the upward closure of 1..4
// non-empty random generators.
Table RandomMonotoneTable(std::mt19937_64& rng, std::size_t n,
                          std::vector<Mask>* generators = nullptr);

// Random antichain of 1..max_size non-empty combinations over n inputs.
std::vector<Mask> RandomAntichain(std::mt19937_64& rng, std::size_t n,
                                  std::size_t max_size);

// True points with no true proper subset.
std::vector<Mask> MinimalTruePoints(const Table& f, std::size_t n);

// The family (as masks) evaluates exactly to f on every input set.
bool FamilyExplainsTable(const std::vector<Mask>& family, const Table& f,
                         std::size_t n);

// Some family of fewer than `size` true points explains f (exhaustive).
bool SmallerFamilyExplains(const Table& f, std::size_t n, std::size_t size);

// The family of all true points of fewer than `order` inputs explains f.
bool LowerOrderFamilyExplains(const Table& f, std::size_t n,
                              std::size_t order);

Mask ToMask(const Combination& c);
std::vector<Mask> ToMasks(const Family& f);

// Per-account product of Bernoulli terms, in log space.
double NaiveBehavioralLogLikelihood(const std::vector<bool>& active,
                                    const std::vector<bool>* holders,
                                    double p_in, double p_out,
                                    double p_empty);

// First combination in (size, lexicographic) order of at most l_max inputs
// meeting at least x * |members| members.
std::optional<std::vector<InputId>> BruteForceXIntersecting(
    const std::vector<std::vector<InputId>>& members, std::size_t n_inputs,
    double x, std::size_t l_max);

// Direct evaluation of the admissibility bound.
double NaivePhi(int l, int r, double x);

}  // namespace xcorr::oracle

#endif  // XCORR_TESTS_SUPPORT_ORACLES_H_
