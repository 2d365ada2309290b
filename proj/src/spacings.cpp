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

#include "lacunary/spacings.hpp"

#include <cmath>

#include "lacunary/errors.hpp"
#include "lacunary/rng.hpp"

namespace lacunary {

namespace {

constexpr unsigned __int128 kFullCircle = static_cast<unsigned __int128>(1) << 64;

}  // namespace

std::string_view to_string(SpacingMode mode) noexcept {
  return mode == SpacingMode::circular ? "circular" : "linear";
}

SpacingMode parse_spacing_mode(std::string_view text) {
  if (text == "circular") return SpacingMode::circular;
  if (text == "linear") return SpacingMode::linear;
  fail(Errc::invalid_argument, "unknown spacing mode '" + std::string(text) + "'");
}

SpacingSample normalized_spacings(const OrderedPoints& points, std::size_t level,
                                  SpacingMode mode) {
  const std::size_t n = points.size();
  if (level < 1 || level >= n) {
    fail(Errc::level_out_of_range,
         "level " + std::to_string(level) + " needs 1 <= a < N = " + std::to_string(n));
  }
  const auto s = points.sorted();
  const double scale = static_cast<double>(n) * 0x1p-64;
  SpacingSample out{level, mode, n, {}};
  out.deltas.reserve(mode == SpacingMode::circular ? n : n - level);
  for (std::size_t i = 0; i + level < n; ++i) {
    out.deltas.push_back(static_cast<double>(s[i + level].raw() - s[i].raw()) * scale);
  }
  if (mode == SpacingMode::circular) {
    for (std::size_t i = n - level; i < n; ++i) {
      // theta_{i+a-N} + 1 - theta_i
      const unsigned __int128 gap = kFullCircle - (s[i].raw() - s[i + level - n].raw());
      out.deltas.push_back(static_cast<double>(gap) * scale);
    }
  }
  return out;
}

std::vector<std::vector<double>> joint_spacings(const OrderedPoints& points, std::size_t r,
                                                SpacingMode mode) {
  const std::size_t n = points.size();
  if (r < 1 || r >= n) {
    fail(Errc::window_out_of_range,
         "window " + std::to_string(r) + " needs 1 <= r < N = " + std::to_string(n));
  }
  const auto level1 = normalized_spacings(points, 1, mode);
  const auto& d = level1.deltas;
  const std::size_t tuples = mode == SpacingMode::circular ? n : n - r;
  std::vector<std::vector<double>> out;
  out.reserve(tuples);
  for (std::size_t i = 0; i < tuples; ++i) {
    std::vector<double> t(r);
    for (std::size_t j = 0; j < r; ++j) t[j] = d[(i + j) % d.size()];
    out.push_back(std::move(t));
  }
  return out;
}

double OccupancyHistogram::mean() const noexcept {
  double m = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) m += static_cast<double>(k) * frequency(k);
  return m;
}

std::size_t count_in_arc(std::span<const Phase> sorted, Phase left, unsigned __int128 length) {
  if (length >= kFullCircle) return sorted.size();
  auto rank = [&](unsigned __int128 raw) -> std::size_t {
    if (raw >= kFullCircle) return sorted.size();
    return static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), Phase(static_cast<std::uint64_t>(raw))) -
        sorted.begin());
  };
  const unsigned __int128 start = left.raw();
  const unsigned __int128 end = start + length;
  if (end <= kFullCircle) return rank(end) - rank(start);
  return (sorted.size() - rank(start)) + rank(end - kFullCircle);
}

OccupancyHistogram interval_counts(const OrderedPoints& points, double lambda, std::size_t trials,
                                   std::uint64_t seed) {
  const std::size_t n = points.size();
  require(n >= 1, Errc::invalid_argument, "interval_counts needs points");
  require(lambda > 0 && lambda <= static_cast<double>(n), Errc::domain_error,
          "lambda must lie in (0, N]");
  require(trials >= 1, Errc::invalid_argument, "interval_counts needs at least one trial");
  const long double arc = std::floor(std::ldexp(static_cast<long double>(lambda) / n, 64));
  const unsigned __int128 length =
      arc >= 0x1p64L ? kFullCircle : static_cast<unsigned __int128>(arc);
  OccupancyHistogram h;
  h.trials = trials;
  const auto sorted = points.sorted();
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t k = count_in_arc(sorted, Phase(stream_word(seed, t)), length);
    if (k >= h.counts.size()) h.counts.resize(k + 1, 0);
    ++h.counts[k];
  }
  return h;
}

SpacingHistogram spacing_histogram(std::span<const double> deltas, double width, double upper) {
  require(width > 0 && upper > width, Errc::invalid_argument, "histogram needs 0 < width < upper");
  SpacingHistogram h;
  h.width = width;
  h.upper = upper;
  h.counts.assign(static_cast<std::size_t>(std::llround(upper / width)), 0);
  accumulate(h, deltas);
  return h;
}

void accumulate(SpacingHistogram& into, std::span<const double> deltas) {
  for (double d : deltas) {
    const double bin = std::floor(d / into.width);
    if (bin >= 0 && bin < static_cast<double>(into.counts.size())) {
      ++into.counts[static_cast<std::size_t>(bin)];
    } else {
      ++into.overflow;
    }
    ++into.total;
  }
}

}  // namespace lacunary
