// Copyright 2026 The ksproofs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include <boost/container/small_vector.hpp>

namespace ksp {

/// Fixed-length bit vector packed into 64-bit words. Vectors of up to 64 bits
/// live inline; longer ones spill to the heap.
class BitVec {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVec() = default;
  explicit BitVec(std::size_t size)
      : size_(size), words_((size + kWordBits - 1) / kWordBits, Word{0}) {}

  static BitVec from_word(std::size_t size, Word bits) {
    BitVec v(size);
    if (!v.words_.empty()) {
      v.words_[0] = bits;
      v.trim();
    }
    return v;
  }

  std::size_t size() const { return size_; }
  std::size_t num_words() const { return words_.size(); }
  const Word* data() const { return words_.data(); }
  Word* data() { return words_.data(); }
  Word word(std::size_t i) const { return words_[i]; }

  bool test(std::size_t i) const {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }
  void set(std::size_t i, bool value = true) {
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
  }
  bool none() const { return !any(); }

  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Index of the lowest set bit, or size() when empty.
  std::size_t first() const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] != 0) {
        return i * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[i]));
      }
    }
    return size_;
  }

  /// Index of the next set bit strictly after `i`, or size() when none.
  std::size_t next(std::size_t i) const {
    ++i;
    if (i >= size_) return size_;
    std::size_t w = i / kWordBits;
    Word cur = words_[w] & (~Word{0} << (i % kWordBits));
    while (true) {
      if (cur != 0) {
        return w * kWordBits + static_cast<std::size_t>(std::countr_zero(cur));
      }
      if (++w == words_.size()) return size_;
      cur = words_[w];
    }
  }

  template <typename F>
  void for_each_set(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      Word w = words_[i];
      while (w != 0) {
        f(i * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  BitVec& operator^=(const BitVec& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  BitVec& operator&=(const BitVec& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  BitVec& operator|=(const BitVec& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }

  /// Popcount of (a & b) without materialising the intersection.
  friend std::size_t and_count(const BitVec& a, const BitVec& b) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      c += static_cast<std::size_t>(std::popcount(a.words_[i] & b.words_[i]));
    }
    return c;
  }

  /// True iff every set bit of *this is also set in `o`.
  bool is_subset_of(const BitVec& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    }
    return true;
  }

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.size_ == b.size_ && std::equal(a.words_.begin(), a.words_.end(), b.words_.begin());
  }
  /// Orders by size, then lexicographically from the highest word down.
  friend bool operator<(const BitVec& a, const BitVec& b) {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    for (std::size_t i = a.words_.size(); i-- > 0;) {
      if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
    }
    return false;
  }

  std::size_t hash() const {
    std::size_t h = std::hash<std::size_t>{}(size_);
    for (Word w : words_) h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  /// Bit i rendered at position i, e.g. "0110".
  std::string to_string() const {
    std::string s(size_, '0');
    for_each_set([&](std::size_t i) { s[i] = '1'; });
    return s;
  }

 private:
  void trim() {
    if (size_ % kWordBits != 0 && !words_.empty()) {
      words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
    }
  }

  std::size_t size_ = 0;
  boost::container::small_vector<Word, 1> words_;
};

struct BitVecHash {
  std::size_t operator()(const BitVec& v) const { return v.hash(); }
};

}  // namespace ksp
