/*
 * Copyright 2026 The Lacunary Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <limits>

namespace lacunary {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Word `counter` of the counter-based SplitMix64 stream keyed by `seed`.
// Words are independent of how many are requested, so a longer request
// extends a shorter one.
constexpr std::uint64_t stream_word(std::uint64_t seed, std::uint64_t counter) noexcept {
  return mix64(mix64(seed) + (counter + 1) * kGoldenGamma);
}

// Seed for sample `index` of a run keyed by `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master ^ 0x6a09e667f3bcc909ULL) + mix64(index + kGoldenGamma));
}

// Uniform double in [0, 1) from the top 53 bits of a word.
constexpr double to_unit_double(std::uint64_t word) noexcept {
  return static_cast<double>(word >> 11) * 0x1p-53;
}

// Satisfies UniformRandomBitGenerator; reproducible from (seed, start).
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t seed, std::uint64_t start = 0) noexcept
      : seed_(seed), counter_(start) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept { return stream_word(seed_, counter_++); }

  constexpr double uniform() noexcept { return to_unit_double((*this)()); }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace lacunary
