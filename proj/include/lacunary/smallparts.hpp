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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lacunary/fracparts.hpp"
#include "lacunary/numeric.hpp"

namespace lacunary {

// Distances within this many units of a window edge are refused when the
// phases carry approximation error.
inline constexpr double kBoundaryMargin = 0x1p-40;

struct WindowCensus {
  std::size_t n = 0;
  std::string alpha_digest;
  std::size_t g_max = 0;
  Phase argmax_beta;
};

// G(N, alpha, beta) = #{x : ||theta_x - beta|| < 1/N}.
std::size_t g_count(const OrderedPoints& points, Phase beta);

// max_beta G(N, alpha, beta): the most phases in an open arc of length 2/N.
WindowCensus g_max(const OrderedPoints& points);

struct ExceptionalFraction {
  std::size_t samples = 0;
  std::size_t exceeding = 0;
  double threshold = 0.0;   // N^delta
  double fraction = 0.0;
  double half_width = 0.0;  // normal-approximation 95% half-width
  std::vector<std::size_t> g_max_values;
};

// Fraction of `samples` seeded alphas with G(N, alpha) > N^delta, where
// N = values.size() and sample i uses derive_seed(seed, i).
ExceptionalFraction exceptional_fraction(double delta, std::span<const BigInt> values,
                                         std::size_t samples, std::uint64_t seed,
                                         unsigned guard = kDefaultGuardBits);

struct ClosedInterval {
  Rational lo;
  Rational hi;
};

// Sorted, pairwise disjoint closed intervals with exact endpoints.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  static IntervalUnion unit();
  static IntervalUnion from_intervals(std::vector<ClosedInterval> intervals);

  std::span<const ClosedInterval> intervals() const noexcept { return intervals_; }
  Rational measure() const;
  bool contains(const Rational& x) const;

  // Intersection with {alpha : ||alpha a|| <= 1/N}.
  IntervalUnion restrict_near_integer(const BigInt& a, const BigInt& n) const;

 private:
  std::vector<ClosedInterval> intervals_;
};

// {alpha in [0, 1] : ||alpha a|| <= 1/N} as an explicit union.
IntervalUnion near_integer_set(const BigInt& a, const BigInt& n);

// Lambda(a, N) = {alpha in [0, 1] : ||alpha a_j|| <= 1/N for all j},
// for k <= 3 constraints with a_{j+1} >= N a_j and a_1 <= 1000.
IntervalUnion lambda_set(std::span<const BigInt> a, const BigInt& n);

inline Rational lambda_measure(std::span<const BigInt> a, const BigInt& n) {
  return lambda_set(a, n).measure();
}

// 4^k / N^k.
Rational lambda_bound(std::size_t k, const BigInt& n);

}  // namespace lacunary
