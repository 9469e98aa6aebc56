// Copyright 2026 The cmsat Authors
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

#ifndef CMSAT_BITSET_HPP_
#define CMSAT_BITSET_HPP_

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace cmsat {

inline std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

// Word-level helpers shared by Bitset and the row storage of Graph.
inline bool test_bit(const uint64_t* w, std::size_t i) {
  return (w[i >> 6] >> (i & 63)) & 1u;
}
inline void set_bit(uint64_t* w, std::size_t i) { w[i >> 6] |= uint64_t{1} << (i & 63); }
inline void clear_bit(uint64_t* w, std::size_t i) {
  w[i >> 6] &= ~(uint64_t{1} << (i & 63));
}

template <typename F>
inline void for_each_bit(const uint64_t* w, std::size_t nwords, F&& f) {
  for (std::size_t k = 0; k < nwords; ++k) {
    uint64_t x = w[k];
    while (x) {
      f(static_cast<uint32_t>(k * 64 + std::countr_zero(x)));
      x &= x - 1;
    }
  }
}

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), w_(words_for(bits), 0) {}

  std::size_t size() const { return bits_; }
  std::size_t num_words() const { return w_.size(); }
  uint64_t* data() { return w_.data(); }
  const uint64_t* data() const { return w_.data(); }

  bool test(std::size_t i) const { return test_bit(w_.data(), i); }
  void set(std::size_t i) { set_bit(w_.data(), i); }
  void reset(std::size_t i) { clear_bit(w_.data(), i); }
  void clear() { std::fill(w_.begin(), w_.end(), 0); }
  void fill() {
    std::fill(w_.begin(), w_.end(), ~uint64_t{0});
    trim();
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (uint64_t x : w_) c += std::popcount(x);
    return c;
  }
  bool any() const {
    for (uint64_t x : w_)
      if (x) return true;
    return false;
  }
  // Lowest set bit, or size() when empty.
  std::size_t first() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return k * 64 + std::countr_zero(w_[k]);
    return bits_;
  }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }
  Bitset& and_not(const Bitset& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
    return *this;
  }
  bool intersects(const Bitset& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & o.w_[k]) return true;
    return false;
  }
  bool operator==(const Bitset& o) const = default;

  template <typename F>
  void for_each(F&& f) const {
    for_each_bit(w_.data(), w_.size(), f);
  }

  std::vector<uint32_t> to_vector() const {
    std::vector<uint32_t> out;
    for_each([&](uint32_t v) { out.push_back(v); });
    return out;
  }

 private:
  void trim() {
    if (bits_ % 64 && !w_.empty()) w_.back() &= (uint64_t{1} << (bits_ % 64)) - 1;
  }

  std::size_t bits_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace cmsat

#endif  // CMSAT_BITSET_HPP_
