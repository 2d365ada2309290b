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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "lacunary/fracparts.hpp"

namespace lacunary {

enum class SpacingMode { circular, linear };

std::string_view to_string(SpacingMode mode) noexcept;
SpacingMode parse_spacing_mode(std::string_view text);

struct SpacingSample {
  std::size_t level = 1;
  SpacingMode mode = SpacingMode::circular;
  std::size_t n = 0;
  std::vector<double> deltas;
};

// delta_{a,n} = N (theta_{n+a} - theta_n) over the sorted phases. Circular
// mode wraps the last a spacings around the circle and returns N values;
// linear mode returns N - a.
SpacingSample normalized_spacings(const OrderedPoints& points, std::size_t level,
                                  SpacingMode mode = SpacingMode::circular);

// Consecutive level-1 spacing windows (delta_n, ..., delta_{n+r-1}).
std::vector<std::vector<double>> joint_spacings(const OrderedPoints& points, std::size_t r,
                                                SpacingMode mode = SpacingMode::circular);

struct OccupancyHistogram {
  std::size_t trials = 0;
  std::vector<std::uint64_t> counts;  // counts[k] = trials with k points in the arc

  double frequency(std::size_t k) const noexcept {
    return k < counts.size() ? static_cast<double>(counts[k]) / static_cast<double>(trials) : 0.0;
  }
  double mean() const noexcept;
};

// Occupancy of M random half-open arcs [t, t + lambda/N) on the circle.
// Trial t draws its left endpoint from stream_word(seed, t).
OccupancyHistogram interval_counts(const OrderedPoints& points, double lambda, std::size_t trials,
                                   std::uint64_t seed);

// Number of phases in [left, left + length) with length in raw units
// (length may equal 2^64, the whole circle).
std::size_t count_in_arc(std::span<const Phase> sorted, Phase left, unsigned __int128 length);

// Kolmogorov-Smirnov distance sup |F_emp - F| against a continuous cdf,
// evaluated on both sides of every sample.
template <class Cdf>
double ks_distance(std::span<const double> samples, Cdf&& cdf);

double ks_distance_sorted(std::span<const double> sorted, const auto& cdf) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

template <class Cdf>
double ks_distance(std::span<const double> samples, Cdf&& cdf) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  return ks_distance_sorted(sorted, cdf);
}

// Fixed-width histogram on [0, upper) with one overflow bin.
struct SpacingHistogram {
  double width = 0.1;
  double upper = 10.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t overflow = 0;
  std::uint64_t total = 0;

  // Empirical density of bin i.
  double density(std::size_t i) const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(counts[i]) / (static_cast<double>(total) * width);
  }
};

SpacingHistogram spacing_histogram(std::span<const double> deltas, double width = 0.1,
                                   double upper = 10.0);
void accumulate(SpacingHistogram& into, std::span<const double> deltas);

}  // namespace lacunary
