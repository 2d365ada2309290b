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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lacunary/numeric.hpp"

namespace lacunary {

enum class CountSystem { sandwich, hyperplane_pair, homogeneous, pair_equation, contrast_triple };

std::string_view to_string(CountSystem system) noexcept;
CountSystem parse_count_system(std::string_view text);

// Whether z_1..z_r must be distinct, or may repeat (then the count is
// split into degenerate and non-degenerate solutions).
enum class HomogeneousVariant { distinct, repeated };

std::string_view to_string(HomogeneousVariant variant) noexcept;
HomogeneousVariant parse_homogeneous_variant(std::string_view text);

// Hard limits checked before any enumeration starts.
struct CountBudget {
  std::uint64_t max_work = std::uint64_t{6} << 30;          // elementary steps
  std::uint64_t max_entries_per_pass = std::uint64_t{1} << 23;  // hash-join rows held at once
};

// Selects how hash-join keys are represented. `automatic` uses exact
// 64-bit keys whenever every key provably fits, and 122-bit residue
// fingerprints with exact big-integer confirmation otherwise.
enum class KeyMode { automatic, fingerprint };

struct HomogeneousSolution {
  std::vector<std::int64_t> y;
  std::vector<std::size_t> z;  // 1-based indices
};

struct CountResult {
  CountSystem system = CountSystem::homogeneous;
  std::size_t n = 0;
  unsigned order = 0;  // r, k or s depending on the system
  BigInt total;
  std::optional<BigInt> degenerate;
  std::optional<BigInt> nondegenerate;
  std::vector<HomogeneousSolution> degenerate_witnesses;
  double elapsed_seconds = 0.0;
};

// #{y in [-N, N]^s : |y_1 A_1 + ... + y_s A_s + b| <= C A_1} with
// A_1 > ... > A_s > 0 and s <= 4.
BigInt count_sandwich(std::span<const BigInt> a, const BigInt& b, const Rational& c, std::size_t n,
                      const CountBudget& budget = {});

// The one-inequality instance obtained by eliminating y_s with the linear
// condition of the two-condition system.
struct SandwichInstance {
  std::vector<BigInt> a;
  BigInt b;
  Rational c;
};

// Sequence indices z_1 > ... > z_s (1-based) with values a(z_j).
SandwichInstance reduce_hyperplane_pair(std::span<const BigInt> values,
                                        std::span<const std::size_t> z, const BigInt& b,
                                        const BigInt& d, const Rational& c);

// Direct count of y in [-N, N]^s with |sum y_j a(z_j) + b| <= C a(z_1) and
// sum y_j + d = 0.
BigInt count_hyperplane_pair(std::span<const BigInt> values, std::span<const std::size_t> z,
                             const BigInt& b, const BigInt& d, const Rational& c, std::size_t n,
                             const CountBudget& budget = {});

// Solutions of sum y_j a(z_j) = 0, sum y_j = 0 with y != 0, |y_j| <= N and
// 1 <= z_j <= N, for r in {2, 3, 4}; N = values.size(). The repeated
// variant also reports the degenerate / non-degenerate split.
CountResult count_homogeneous(unsigned r, std::span<const BigInt> values,
                              HomogeneousVariant variant = HomogeneousVariant::distinct,
                              const CountBudget& budget = {}, KeyMode mode = KeyMode::automatic);

// sum_{i<k} m_i (a(n_i) - a(n_{i+1})) = sum_{i<k} m'_i (a(n'_i) - a(n'_{i+1}))
// with n, n' each distinct, (m, m') != 0 and every variable bounded by N.
CountResult count_pair_equation(unsigned k, std::span<const BigInt> values,
                                const CountBudget& budget = {}, KeyMode mode = KeyMode::automatic);

// The k = 3 form of the same equation with n != 0 and n' != 0 separately.
CountResult count_contrast_triple(std::span<const BigInt> values, const CountBudget& budget = {},
                                  KeyMode mode = KeyMode::automatic);

// #{(m, n) : m != 0, n distinct}: the diagonal solutions m' = m, n' = n.
BigInt diagonal_solutions(unsigned k, std::size_t n);

// Every z-class of equal indices has y summing to zero.
bool is_degenerate(std::span<const std::int64_t> y, std::span<const std::size_t> z);

struct GrowthPoint {
  double n = 0.0;
  double count = 0.0;
};

struct GrowthFit {
  bool degenerate = false;  // fewer than two positive counts
  double exponent = 0.0;    // p in count ~ A N^p (log N)^q
  double intercept = 0.0;   // log A
  double residual = 0.0;    // root mean square of the log residuals
};

// Least squares of log count - q log log N against log N. Zero counts are
// skipped; requires at least four points.
GrowthFit fit_growth(std::span<const GrowthPoint> points, double q);

}  // namespace lacunary
