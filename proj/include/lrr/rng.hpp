// Copyright 2026 The lrr Authors
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

#ifndef LRR_RNG_HPP_
#define LRR_RNG_HPP_

// Counter-based 64-bit generator. A stream is keyed by (seed, trial, batch);
// the i-th output is a bijective mix of key + i * golden, so streams are
// independent of call order and can be handed to parallel workers.

#include <cstdint>
#include <limits>

namespace lrr {

struct StreamId {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::uint64_t batch = 0;
};

class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(StreamId id) : key_(derive_key(id)) {}
  explicit CounterRng(std::uint64_t seed) : CounterRng(StreamId{seed, 0, 0}) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return mix(key_ + kGolden * ++counter_); }

  /// Uniform integer in [0, bound), Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t x = (*this)();
    __uint128_t prod = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(prod);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = (*this)();
        prod = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(prod);
      }
    }
    return static_cast<std::uint64_t>(prod >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  std::uint64_t counter() const { return counter_; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t derive_key(StreamId id) {
    std::uint64_t k = mix(id.seed + kGolden);
    k = mix(k ^ (id.trial * 0xd1b54a32d192ed03ULL + 1));
    k = mix(k ^ (id.batch * 0x8cb92ba72f3d8dd7ULL + 2));
    return k;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace lrr

#endif  // LRR_RNG_HPP_
