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

#ifndef XCORR_PLACEMENT_H_
#define XCORR_PLACEMENT_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "xcorr/bitset.h"
#include "xcorr/core_model.h"

namespace xcorr {

using AccountId = std::uint32_t;

struct PlacementConfig {
  std::size_t n_inputs = 0;
  std::size_t n_accounts = 0;
  double alpha = 0.5;  // per-cell inclusion probability, in (0, 1)
  std::uint64_t seed = 0;

  // Throws ConfigError on an invalid configuration.
  void Validate() const;
};

// Which shadow accounts hold which inputs. Rows are accounts, columns are
// inputs; both orientations are kept so A_i lookups are a single span.
class PlacementMatrix {
 public:
  PlacementMatrix() = default;
  PlacementMatrix(const PlacementConfig& cfg, BitMatrix membership);

  std::size_t n_accounts() const { return rows_.rows(); }
  std::size_t n_inputs() const { return rows_.cols(); }
  double alpha() const { return alpha_; }
  std::uint64_t seed() const { return seed_; }

  bool contains(AccountId account, InputId input) const {
    return rows_.test(account, input);
  }
  // Inputs placed in `account`, as bits over inputs.
  BitSpan account_bits(AccountId account) const { return rows_.row(account); }
  // A_i: accounts holding `input`, as bits over accounts.
  BitSpan input_accounts(InputId input) const { return cols_.row(input); }

  Combination account_inputs(AccountId account) const {
    return Combination::FromBits(account_bits(account));
  }

  const BitMatrix& membership() const { return rows_; }

  friend bool operator==(const PlacementMatrix& a, const PlacementMatrix& b) {
    return a.alpha_ == b.alpha_ && a.seed_ == b.seed_ && a.rows_ == b.rows_;
  }

 private:
  BitMatrix rows_;
  BitMatrix cols_;
  double alpha_ = 0.0;
  std::uint64_t seed_ = 0;
};

// m = ceil(c * ln N), at least 2. Throws DomainError if N < 2 or c <= 0.
std::size_t SizedAccountCount(std::size_t n_inputs, double c);

// Every (account, input) cell is an independent Bernoulli(alpha) draw.
PlacementMatrix BernoulliPlacement(const PlacementConfig& cfg);

// One Bernoulli(alpha) draw per (account, group); group members share their
// membership rows. Inputs not named in any group are singletons. Throws
// OverlapError if two groups share an input.
PlacementMatrix GroupedPlacement(const std::vector<std::vector<InputId>>& groups,
                                 const PlacementConfig& cfg);

}  // namespace xcorr

#endif  // XCORR_PLACEMENT_H_
