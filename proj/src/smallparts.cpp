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

#include "lacunary/smallparts.hpp"

#include <algorithm>
#include <cmath>

#include "lacunary/errors.hpp"
#include "lacunary/parallel.hpp"
#include "lacunary/rng.hpp"
#include "lacunary/spacings.hpp"

namespace lacunary {

namespace {

using u128 = unsigned __int128;
constexpr u128 kCircle = u128{1} << 64;
// kBoundaryMargin in raw units.
constexpr std::uint64_t kMarginRaw = std::uint64_t{1} << 24;

// Largest raw distance d with d < 2^64 / N.
std::uint64_t window_radius(std::size_t n) {
  return static_cast<std::uint64_t>((kCircle - 1) / n);
}

// Points within raw distance `radius` of beta (closed).
std::size_t count_within(std::span<const Phase> sorted, Phase beta, u128 radius) {
  const u128 length = 2 * radius + 1;
  if (length >= kCircle) return sorted.size();
  return count_in_arc(sorted, Phase(beta.raw() - static_cast<std::uint64_t>(radius)), length);
}

struct Sweep {
  std::size_t best = 0;
  Phase beta;
};

// Largest run of sorted-consecutive phases whose span d admits a centre
// within `radius` of both ends, i.e. ceil(d / 2) <= radius.
Sweep sweep(std::span<const Phase> sorted, u128 radius) {
  const std::size_t n = sorted.size();
  Sweep out;
  if (n == 0) return out;
  std::size_t j = 0;  // unrolled index of the last captured point
  for (std::size_t i = 0; i < n; ++i) {
    if (j < i) j = i;
    auto span_to = [&](std::size_t k) -> u128 {
      const u128 hi = sorted[k % n].raw() + (k >= n ? kCircle : 0);
      return hi - sorted[i].raw();
    };
    while (j + 1 < i + n && (span_to(j + 1) + 1) / 2 <= radius) ++j;
    const std::size_t count = j - i + 1;
    if (count > out.best) {
      out.best = count;
      out.beta = Phase(sorted[i].raw() + static_cast<std::uint64_t>(span_to(j) / 2));
    }
  }
  return out;
}

}  // namespace

std::size_t g_count(const OrderedPoints& points, Phase beta) {
  const std::size_t n = points.size();
  if (n == 0) return 0;
  const auto sorted = points.sorted();
  const u128 radius = window_radius(n);
  const std::size_t count = count_within(sorted, beta, radius);
  if (points.error_bound() > 0.0) {
    const std::size_t inner = count_within(sorted, beta, radius - kMarginRaw);
    const std::size_t outer = count_within(sorted, beta, radius + kMarginRaw);
    if (inner != outer) {
      fail(Errc::precision_error, "a phase lies within 2^-40 of the window edge");
    }
  }
  return count;
}

WindowCensus g_max(const OrderedPoints& points) {
  const std::size_t n = points.size();
  WindowCensus census;
  census.n = n;
  census.alpha_digest = points.alpha_digest();
  if (n == 0) return census;
  const auto sorted = points.sorted();
  const u128 radius = window_radius(n);
  const Sweep result = sweep(sorted, radius);
  if (points.error_bound() > 0.0) {
    if (sweep(sorted, radius - kMarginRaw).best != sweep(sorted, radius + kMarginRaw).best) {
      fail(Errc::precision_error, "a window span lies within 2^-40 of the 2/N threshold");
    }
  }
  census.g_max = result.best;
  census.argmax_beta = result.beta;
  return census;
}

ExceptionalFraction exceptional_fraction(double delta, std::span<const BigInt> values,
                                         std::size_t samples, std::uint64_t seed, unsigned guard) {
  require(delta > 0.0, Errc::invalid_argument, "delta must be positive");
  require(samples >= 100, Errc::invalid_argument, "exceptional_fraction needs at least 100 samples");
  require(!values.empty(), Errc::invalid_argument, "no sequence values");
  ExceptionalFraction out;
  out.samples = samples;
  out.threshold = std::pow(static_cast<double>(values.size()), delta);
  out.g_max_values = parallel_map(samples, [&](std::size_t i) {
    return g_max(sample_points(values, derive_seed(seed, i), guard)).g_max;
  });
  for (std::size_t g : out.g_max_values) {
    if (static_cast<double>(g) > out.threshold) ++out.exceeding;
  }
  const double m = static_cast<double>(samples);
  out.fraction = static_cast<double>(out.exceeding) / m;
  out.half_width = 1.96 * std::sqrt(out.fraction * (1.0 - out.fraction) / m);
  return out;
}

IntervalUnion IntervalUnion::unit() { return from_intervals({{Rational(0), Rational(1)}}); }

IntervalUnion IntervalUnion::from_intervals(std::vector<ClosedInterval> intervals) {
  std::sort(intervals.begin(), intervals.end(),
            [](const ClosedInterval& a, const ClosedInterval& b) { return a.lo < b.lo; });
  IntervalUnion out;
  for (auto& iv : intervals) {
    require(iv.lo <= iv.hi, Errc::invalid_argument, "interval with lo > hi");
    if (!out.intervals_.empty() && iv.lo <= out.intervals_.back().hi) {
      if (iv.hi > out.intervals_.back().hi) out.intervals_.back().hi = iv.hi;
    } else {
      out.intervals_.push_back(std::move(iv));
    }
  }
  return out;
}

Rational IntervalUnion::measure() const {
  Rational total = 0;
  for (const auto& iv : intervals_) total += iv.hi - iv.lo;
  return total;
}

bool IntervalUnion::contains(const Rational& x) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                             [](const Rational& v, const ClosedInterval& iv) { return v < iv.lo; });
  return it != intervals_.begin() && x <= std::prev(it)->hi;
}

namespace {

constexpr std::size_t kMaxIntervals = std::size_t{1} << 22;

BigInt floor_q(const Rational& q) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

BigInt ceil_q(const Rational& q) {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

}  // namespace

IntervalUnion IntervalUnion::restrict_near_integer(const BigInt& a, const BigInt& n) const {
  require(a > 0, Errc::invalid_argument, "constraint coefficient must be positive");
  require(n >= 1, Errc::invalid_argument, "N must be >= 1");
  const Rational inv_n(BigInt(1), n);
  const Rational aq(a);
  std::vector<ClosedInterval> out;
  for (const auto& iv : intervals_) {
    // alpha a in [j - 1/N, j + 1/N] for j between these bounds.
    const BigInt first = ceil_q(iv.lo * aq - inv_n);
    const BigInt last = floor_q(iv.hi * aq + inv_n);
    if (last >= first && BigInt(last - first) + out.size() > kMaxIntervals) {
      fail(Errc::budget_exceeded, "interval union grows past the interval budget");
    }
    for (BigInt j = first; j <= last; ++j) {
      Rational lo = (Rational(j) - inv_n) / aq;
      Rational hi = (Rational(j) + inv_n) / aq;
      lo.canonicalize();
      hi.canonicalize();
      if (lo < iv.lo) lo = iv.lo;
      if (hi > iv.hi) hi = iv.hi;
      if (lo <= hi) out.push_back({lo, hi});
    }
  }
  return from_intervals(std::move(out));
}

IntervalUnion near_integer_set(const BigInt& a, const BigInt& n) {
  return IntervalUnion::unit().restrict_near_integer(a, n);
}

IntervalUnion lambda_set(std::span<const BigInt> a, const BigInt& n) {
  require(!a.empty() && a.size() <= 3, Errc::invalid_argument, "Lambda needs 1 to 3 constraints");
  require(n >= 1, Errc::invalid_argument, "N must be >= 1");
  require(a[0] > 0, Errc::invalid_argument, "constraints must be positive");
  for (std::size_t j = 1; j < a.size(); ++j) {
    require(a[j] >= n * a[j - 1], Errc::invalid_argument, "constraints need a_{j+1} >= N a_j");
  }
  if (a[0] > 1000) fail(Errc::budget_exceeded, "a_1 above 1000");
  IntervalUnion set = IntervalUnion::unit();
  for (const auto& aj : a) set = set.restrict_near_integer(aj, n);
  return set;
}

Rational lambda_bound(std::size_t k, const BigInt& n) {
  BigInt num, den;
  mpz_ui_pow_ui(num.get_mpz_t(), 4, k);
  mpz_pow_ui(den.get_mpz_t(), n.get_mpz_t(), k);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace lacunary
