// Copyright 2026 The evcharge Authors. All Rights Reserved.
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

#ifndef EVCHARGE_RNG_HPP_
#define EVCHARGE_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace evcharge {

// Seedable random source with portable output.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. All derived draws (bounded integers, unit reals, normals,
// shuffles) are computed here instead of through <random> distributions,
// whose algorithms differ between standard library implementations. Two
// hosts given the same seed therefore see the same stream.
//
// Independent consumers should use stream(): each named sub-stream is seeded
// from (seed, name, index) through SplitMix64, so adding a consumer never
// shifts the draws of another.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  static Rng stream(std::uint64_t seed, std::string_view name,
                    std::uint64_t index = 0);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform();

  // Uniform integer in [0, n). n must be > 0.
  std::size_t below(std::size_t n);

  // Standard normal draw (Box-Muller, no cached second value).
  double normal();

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace evcharge

#endif  // EVCHARGE_RNG_HPP_
