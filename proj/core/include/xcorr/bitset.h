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

#ifndef XCORR_BITSET_H_
#define XCORR_BITSET_H_

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xcorr {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t WordsFor(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

// Read-only view over packed bits. Bits past `size` in the last word are
// always zero, so popcounts over whole words are exact.
class BitSpan {
 public:
  BitSpan() = default;
  BitSpan(std::span<const Word> words, std::size_t size)
      : words_(words), size_(size) {}

  std::size_t size() const { return size_; }
  std::span<const Word> words() const { return words_; }

  bool test(std::size_t i) const {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }
  std::size_t count() const;
  bool any() const;
  bool none() const { return !any(); }

  // Indices of the set bits, ascending.
  std::vector<std::uint32_t> ones() const;

  // "0101..." with bit 0 first.
  std::string to_string() const;

 private:
  std::span<const Word> words_;
  std::size_t size_ = 0;
};

std::size_t IntersectCount(BitSpan a, BitSpan b);
// |a \ b|
std::size_t DifferenceCount(BitSpan a, BitSpan b);
bool IsSubset(BitSpan a, BitSpan b);
bool Intersects(BitSpan a, BitSpan b);

// Owning fixed-width bit vector.
class BitSet {
 public:
  BitSet() = default;
  explicit BitSet(std::size_t size) : words_(WordsFor(size), 0), size_(size) {}

  static BitSet FromString(std::string_view bits);
  static BitSet FromIndices(std::size_t size,
                            std::span<const std::uint32_t> indices);

  std::size_t size() const { return size_; }
  BitSpan view() const { return BitSpan(words_, size_); }
  operator BitSpan() const { return view(); }  // NOLINT(runtime/explicit)

  bool test(std::size_t i) const { return view().test(i); }
  void set(std::size_t i, bool value = true) {
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void reset() { std::fill(words_.begin(), words_.end(), Word{0}); }

  std::size_t count() const { return view().count(); }
  bool any() const { return view().any(); }
  bool none() const { return !any(); }
  std::vector<std::uint32_t> ones() const { return view().ones(); }
  std::string to_string() const { return view().to_string(); }

  std::span<Word> mutable_words() { return words_; }

  BitSet& operator|=(BitSpan other);
  BitSet& operator&=(BitSpan other);

  friend bool operator==(const BitSet& a, const BitSet& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

 private:
  std::vector<Word> words_;
  std::size_t size_ = 0;
};

// Dense row-major bit matrix stored in one allocation.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows),
        cols_(cols),
        stride_(WordsFor(cols)),
        words_(rows * stride_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BitSpan row(std::size_t r) const {
    return BitSpan(std::span<const Word>(words_).subspan(r * stride_, stride_),
                   cols_);
  }
  std::span<Word> mutable_row(std::size_t r) {
    return std::span<Word>(words_).subspan(r * stride_, stride_);
  }

  bool test(std::size_t r, std::size_t c) const {
    return (words_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1U;
  }
  void set(std::size_t r, std::size_t c) {
    words_[r * stride_ + c / kWordBits] |= Word{1} << (c % kWordBits);
  }

  // Appends a row; `bits` must have cols() bits.
  void push_row(BitSpan bits);

  BitMatrix transposed() const;

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.words_ == b.words_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> words_;
};

}  // namespace xcorr

#endif  // XCORR_BITSET_H_
