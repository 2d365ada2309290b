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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lacunary/numeric.hpp"
#include "lacunary/sequences.hpp"

namespace lacunary {

inline constexpr unsigned kDefaultGuardBits = 48;
inline constexpr unsigned kMinGuardBits = 48;
inline constexpr std::size_t kDefaultMaxPrecision = std::size_t{1} << 24;

// A point of the unit circle R/Z as a 0.64 fixed-point fraction.
// Differences are taken modulo 1 with wrapping unsigned arithmetic.
class Phase {
 public:
  constexpr Phase() = default;
  explicit constexpr Phase(std::uint64_t raw) noexcept : raw_(raw) {}

  // Nearest phase to t mod 1.
  static Phase from_double(double t) noexcept;

  constexpr std::uint64_t raw() const noexcept { return raw_; }
  double value() const noexcept { return static_cast<double>(raw_) * 0x1p-64; }

  constexpr auto operator<=>(const Phase&) const = default;

 private:
  std::uint64_t raw_ = 0;
};

// (b - a) mod 1 in raw units.
constexpr std::uint64_t forward_distance(Phase a, Phase b) noexcept { return b.raw() - a.raw(); }

// b - a wrapped into [-1/2, 1/2), raw units.
constexpr std::int64_t signed_difference(Phase a, Phase b) noexcept {
  return static_cast<std::int64_t>(b.raw() - a.raw());
}

// |b - a| on the circle, raw units (2^63 is the antipode).
constexpr std::uint64_t circle_distance(Phase a, Phase b) noexcept {
  const std::uint64_t d = b.raw() - a.raw();
  return d > (std::uint64_t{1} << 63) ? ~d + 1 : d;
}

struct SeededAlpha {
  std::uint64_t seed = 0;
};
struct RationalAlpha {
  BigInt numerator;
  BigInt denominator;
};
using AlphaProvenance = std::variant<SeededAlpha, RationalAlpha>;

// alpha = mantissa / 2^P in [0, 1).
class FixedPointAlpha {
 public:
  // Uniform mantissa from the counter stream keyed by `seed`. Raising P
  // keeps the leading bits.
  static FixedPointAlpha sample(std::uint64_t seed, std::size_t precision_bits);
  // floor(2^P * {p/q}).
  static FixedPointAlpha from_rational(const BigInt& p, const BigInt& q, std::size_t precision_bits);

  const BigInt& mantissa() const noexcept { return mantissa_; }
  std::size_t precision_bits() const noexcept { return precision_bits_; }
  const AlphaProvenance& provenance() const noexcept { return provenance_; }
  std::string digest() const;

 private:
  FixedPointAlpha(BigInt mantissa, std::size_t bits, AlphaProvenance provenance);

  BigInt mantissa_;
  std::size_t precision_bits_;
  AlphaProvenance provenance_;
};

// sample_alpha(seed, P).
inline FixedPointAlpha sample_alpha(std::uint64_t seed, std::size_t precision_bits) {
  return FixedPointAlpha::sample(seed, precision_bits);
}

// The first N phases theta_x (x = 1..N) in index order, plus the sorted
// multiset view. sorted_index(i) is the 0-based x of the i-th smallest
// phase; sorting is stable so equal phases keep index order.
class OrderedPoints {
 public:
  OrderedPoints() = default;
  explicit OrderedPoints(std::vector<Phase> by_index, double error_bound = 0.0,
                         std::string alpha_digest = {});

  static OrderedPoints from_doubles(std::span<const double> theta, double error_bound = 0.0);

  std::size_t size() const noexcept { return by_index_.size(); }
  bool empty() const noexcept { return by_index_.empty(); }
  std::span<const Phase> by_index() const noexcept { return by_index_; }
  std::span<const Phase> sorted() const noexcept { return sorted_; }
  std::size_t sorted_index(std::size_t i) const noexcept { return order_[i]; }
  // Worst-case |computed - exact| for every phase (0 for exact inputs).
  double error_bound() const noexcept { return error_bound_; }
  const std::string& alpha_digest() const noexcept { return alpha_digest_; }

  // Points for x = 1..n only.
  OrderedPoints head(std::size_t n) const;

 private:
  std::vector<Phase> by_index_;
  std::vector<Phase> sorted_;
  std::vector<std::size_t> order_;
  double error_bound_ = 0.0;
  std::string alpha_digest_;
};

// Smallest P such that every theta_x keeps `guard` accurate bits:
// ceil(log2 a(N)) + ceil(log2 N) + guard.
std::size_t required_precision(std::span<const BigInt> values, unsigned guard,
                               std::size_t max_bits = kDefaultMaxPrecision);
std::size_t required_precision(const SequenceSpec& spec, std::size_t n, unsigned guard,
                               std::size_t max_bits = kDefaultMaxPrecision);

// theta_x = {alpha a(x)} rounded to the nearest 2^-64, with
// |theta_x - {alpha a(x)}| <= a(x) 2^-P + 2^-65.
OrderedPoints frac_parts(const FixedPointAlpha& alpha, std::span<const BigInt> values,
                         unsigned guard = kDefaultGuardBits);

// Convenience pipeline: alpha = sample_alpha(seed, required_precision(values, guard)).
OrderedPoints sample_points(std::span<const BigInt> values, std::uint64_t seed,
                            unsigned guard = kDefaultGuardBits);

// N i.i.d. uniform phases (the Poisson-model control).
OrderedPoints uniform_points(std::size_t n, std::uint64_t seed);

}  // namespace lacunary
