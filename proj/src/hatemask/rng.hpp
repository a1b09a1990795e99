// Copyright 2026 The Hatemask Authors.
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

#include <cstdint>
#include <utility>
#include <vector>

namespace hatemask {

// SplitMix64 (Steele, Lea, Flood 2014). Output and the bounded-integer
// reduction below are fully specified, so sample orders are portable.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t Mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t Next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return Mix(state_);
  }

  // Uniform integer in [0, bound) by rejection: draws below 2^64 mod bound
  // are discarded, then the draw is reduced modulo bound. bound must be > 0.
  std::uint64_t UniformBelow(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = Next();
      if (r >= threshold) return r % bound;
    }
  }

  // Moves a uniform sample of `count` elements to the front of `items`
  // (partial Fisher-Yates). The front is in sample order.
  template <typename T>
  void SampleFront(std::vector<T>& items, std::size_t count) {
    for (std::size_t i = 0; i < count && i + 1 < items.size(); ++i) {
      std::size_t j = i + static_cast<std::size_t>(UniformBelow(items.size() - i));
      std::swap(items[i], items[j]);
    }
  }

  template <typename T>
  void Shuffle(std::vector<T>& items) { SampleFront(items, items.size()); }

 private:
  std::uint64_t state_;
};

}  // namespace hatemask
