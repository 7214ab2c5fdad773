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

#include "xcorr/bitset.h"

#include <algorithm>
#include <stdexcept>

namespace xcorr {

std::size_t BitSpan::count() const {
  std::size_t total = 0;
  for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitSpan::any() const {
  return std::any_of(words_.begin(), words_.end(),
                     [](Word w) { return w != 0; });
}

std::vector<std::uint32_t> BitSpan::ones() const {
  std::vector<std::uint32_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    Word bits = words_[w];
    while (bits != 0) {
      const int tz = std::countr_zero(bits);
      out.push_back(static_cast<std::uint32_t>(w * kWordBits + tz));
      bits &= bits - 1;
    }
  }
  return out;
}

std::string BitSpan::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

std::size_t IntersectCount(BitSpan a, BitSpan b) {
  const auto wa = a.words();
  const auto wb = b.words();
  std::size_t total = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) {
    total += static_cast<std::size_t>(std::popcount(wa[i] & wb[i]));
  }
  return total;
}

std::size_t DifferenceCount(BitSpan a, BitSpan b) {
  const auto wa = a.words();
  const auto wb = b.words();
  std::size_t total = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) {
    total += static_cast<std::size_t>(std::popcount(wa[i] & ~wb[i]));
  }
  return total;
}

bool IsSubset(BitSpan a, BitSpan b) {
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    if ((wa[i] & ~wb[i]) != 0) return false;
  }
  return true;
}

bool Intersects(BitSpan a, BitSpan b) {
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    if ((wa[i] & wb[i]) != 0) return true;
  }
  return false;
}

BitSet BitSet::FromString(std::string_view bits) {
  BitSet out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
  }
  return out;
}

BitSet BitSet::FromIndices(std::size_t size,
                           std::span<const std::uint32_t> indices) {
  BitSet out(size);
  for (auto i : indices) {
    if (i >= size) throw std::out_of_range("bit index out of range");
    out.set(i);
  }
  return out;
}

BitSet& BitSet::operator|=(BitSpan other) {
  const auto w = other.words();
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= w[i];
  return *this;
}

BitSet& BitSet::operator&=(BitSpan other) {
  const auto w = other.words();
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= w[i];
  return *this;
}

void BitMatrix::push_row(BitSpan bits) {
  if (bits.size() != cols_) throw std::invalid_argument("row width mismatch");
  const auto w = bits.words();
  words_.insert(words_.end(), w.begin(), w.end());
  ++rows_;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const Word* row_words = words_.data() + r * stride_;
    for (std::size_t w = 0; w < stride_; ++w) {
      Word bits = row_words[w];
      while (bits != 0) {
        const int tz = std::countr_zero(bits);
        out.set(w * kWordBits + static_cast<std::size_t>(tz), r);
        bits &= bits - 1;
      }
    }
  }
  return out;
}

}  // namespace xcorr
