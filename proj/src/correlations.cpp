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

#include "lacunary/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lacunary {

std::string_view to_string(CorrelationMethod method) noexcept {
  return method == CorrelationMethod::naive ? "naive" : "windowed";
}

CorrelationMethod parse_correlation_method(std::string_view text) {
  if (text == "windowed") return CorrelationMethod::windowed;
  if (text == "naive") return CorrelationMethod::naive;
  fail(Errc::invalid_argument, "unknown correlation method '" + std::string(text) + "'");
}

std::vector<NeighborWindow> neighbor_windows(std::span<const Phase> sorted, std::uint64_t reach) {
  const std::size_t n = sorted.size();
  std::vector<NeighborWindow> out(n);
  if (n < 2) return out;
  // Two laps of the circle unrolled onto a line.
  using u128 = unsigned __int128;
  std::vector<u128> line(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    line[i] = sorted[i].raw();
    line[i + n] = static_cast<u128>(sorted[i].raw()) + (u128{1} << 64);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto first = line.begin() + static_cast<std::ptrdiff_t>(i + 1);
    const auto last = line.begin() + static_cast<std::ptrdiff_t>(i + n);
    const auto fwd = std::upper_bound(first, last, line[i] + reach);
    const auto bwd = std::lower_bound(first, last, line[i + n] - reach);
    std::size_t forward = static_cast<std::size_t>(fwd - first);
    std::size_t backward = static_cast<std::size_t>(last - bwd);
    if (forward + backward > n - 1) backward = n - 1 - forward;
    out[i] = {forward, backward};
  }
  return out;
}

namespace detail {

void check_correlation_args(std::size_t n, unsigned k, double radius, std::size_t dimension) {
  if (k < 2 || k > kMaxCorrelationOrder) {
    fail(Errc::order_out_of_range, "k = " + std::to_string(k) + " outside [2, 4]");
  }
  require(dimension + 1 == k, Errc::invalid_argument,
          "test function dimension must be k - 1 = " + std::to_string(k - 1));
  if (static_cast<double>(n) <= 2.0 * radius) {
    fail(Errc::n_too_small, "N = " + std::to_string(n) + " must exceed 2 rho");
  }
}

void check_naive_guard(std::size_t n, unsigned k) {
  const std::size_t limit = k <= 3 ? 128 : 48;
  if (n > limit) {
    fail(Errc::size_guard, "naive enumeration limited to N <= " + std::to_string(limit) +
                               " at k = " + std::to_string(k));
  }
}

std::uint64_t support_reach(double radius, std::size_t n) {
  const double reach = std::ceil(radius / static_cast<double>(n) * 0x1p64);
  const double padded = reach * (1.0 + 0x1p-40) + 0x1p16;
  if (padded >= 0x1p63) return std::uint64_t{1} << 63;
  return static_cast<std::uint64_t>(padded);
}

}  // namespace detail

namespace {

// Per-coordinate envelope |fhat_1(n / N)| <= min(peak, decay / |n|^power).
struct Envelope {
  double peak;
  double decay;
  int power;

  double at(double n) const {
    const double a = std::abs(n);
    return a == 0.0 ? peak : std::min(peak, decay / std::pow(a, power));
  }
};

Envelope envelope_of(const TestFunction& f, std::size_t n) {
  const double rho = f.radius();
  const double nn = static_cast<double>(n);
  constexpr double pi = std::numbers::pi;
  if (f.kind() == TestFunctionKind::box) return {2.0 * rho, nn / pi, 1};
  return {rho, nn * nn / (pi * pi * rho), 2};
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// t-range where |base + t step| <= bound (step != 0).
std::pair<BigInt, BigInt> box_range(const BigInt& base, const BigInt& step, const BigInt& bound) {
  BigInt lo, hi;
  if (step > 0) {
    lo = ceil_div(-bound - base, step);
    hi = floor_div(bound - base, step);
  } else {
    lo = ceil_div(bound - base, step);
    hi = floor_div(-bound - base, step);
  }
  return {lo, hi};
}

constexpr std::int64_t kMaxExplicitTail = 1'000'000;

class FourierSum {
 public:
  FourierSum(const TestFunction& f, std::size_t n) : f_(f), scale_(1.0 / static_cast<double>(n)) {}

  double term(const BigInt& n1) const {
    const double xi = n1.get_d() * scale_;
    return f_.fourier(std::span<const double>(&xi, 1));
  }
  double term(const BigInt& n1, const BigInt& n2) const {
    const double xi[2] = {n1.get_d() * scale_, n2.get_d() * scale_};
    return f_.fourier(xi);
  }

 private:
  const TestFunction& f_;
  double scale_;
};

// Sum over t > t_last of |fhat(n(t) / N)| for n(t) = (b1 + t s1, b2 - t s2).
// Terms up to past both zero crossings are summed explicitly; the rest is
// bounded by the integral of the product envelope.
double ray_tail(const FourierSum& sum, const Envelope& env, double amplitude, const BigInt& b1,
                const BigInt& s1, const BigInt& b2, const BigInt& s2, const BigInt& t_last) {
  // Zero crossings t1 = -b1 / s1, t2 = b2 / s2; tau_floor >= floor(max).
  const BigInt cross = std::max(floor_div(-b1, s1), floor_div(b2, s2));
  const BigInt start = t_last + 1;
  const BigInt t0 = std::max(start, BigInt(cross + 3));
  const BigInt explicit_terms = t0 - start;
  if (explicit_terms > kMaxExplicitTail) {
    fail(Errc::truncation_too_coarse, "tail of a solution line needs too many explicit terms");
  }
  double tail = 0.0;
  for (BigInt t = start; t < t0; ++t) {
    tail += std::abs(sum.term(b1 + t * s1, b2 - t * s2));
  }
  // For t >= t0: |n_i(t)| >= |s_i| (t - tau), decreasing in t.
  const double gap = BigInt(t0 - 2 - cross).get_d();  // <= t0 - 1 - tau
  const double s = std::abs(s1.get_d() * s2.get_d());
  const int p2 = 2 * env.power - 1;
  const double integral = amplitude * env.decay * env.decay /
                          (std::pow(s, env.power) * p2 * std::pow(gap, p2));
  return tail + integral;
}

FourierCoefficient fourier_b2(std::int64_t l, const TestFunction& f,
                              std::span<const BigInt> values, std::int64_t n_max) {
  const FourierSum sum(f, values.size());
  const BigInt target = to_big(l);
  FourierCoefficient out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (i == j) continue;
      const BigInt d = values[i] - values[j];
      BigInt n;
      if (l == 0) {
        n = 0;
      } else {
        if (mpz_divisible_p(target.get_mpz_t(), d.get_mpz_t()) == 0) continue;
        n = target / d;
      }
      const double v = sum.term(n);
      if (abs(n) > n_max) {
        out.tail_bound += std::abs(v);
      } else {
        out.value += v;
        ++out.terms;
      }
    }
  }
  return out;
}

FourierCoefficient fourier_b3(std::int64_t l, const TestFunction& f,
                              std::span<const BigInt> values, std::int64_t n_max) {
  const std::size_t n = values.size();
  const FourierSum sum(f, n);
  const Envelope env = envelope_of(f, n);
  const BigInt target = to_big(l);
  const BigInt bound = to_big(n_max);
  FourierCoefficient out;
  BigInt g, s, t;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const BigInt d1 = values[i] - values[j];
      for (std::size_t m = 0; m < n; ++m) {
        if (m == i || m == j) continue;
        const BigInt d2 = values[j] - values[m];
        // n1 d1 + n2 d2 = l.
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), d1.get_mpz_t(), d2.get_mpz_t());
        if (mpz_divisible_p(target.get_mpz_t(), g.get_mpz_t()) == 0) continue;
        const BigInt q = target / g;
        const BigInt b1 = s * q, b2 = t * q;
        const BigInt s1 = d2 / g, s2 = d1 / g;  // n = (b1 + u s1, b2 - u s2)
        auto [lo1, hi1] = box_range(b1, s1, bound);
        auto [lo2, hi2] = box_range(b2, BigInt(-s2), bound);
        const BigInt lo = std::max(lo1, lo2);
        const BigInt hi = std::max(BigInt(lo - 1), std::min(hi1, hi2));
        for (BigInt u = lo; u <= hi; ++u) {
          out.value += sum.term(b1 + u * s1, b2 - u * s2);
          ++out.terms;
        }
        // Both rays; the left one by reflecting u -> -u.
        out.tail_bound += ray_tail(sum, env, f.amplitude(), b1, s1, b2, s2, hi);
        out.tail_bound += ray_tail(sum, env, f.amplitude(), b1, BigInt(-s1), b2, BigInt(-s2),
                                   BigInt(-lo));
      }
    }
  }
  return out;
}

}  // namespace

FourierCoefficient fourier_b(std::int64_t l, unsigned k, const TestFunction& f,
                             std::span<const BigInt> values, std::optional<std::int64_t> n_max,
                             std::optional<double> tail_tolerance) {
  if (k != 2 && k != 3) {
    fail(Errc::order_out_of_range, "fourier_b supports k = 2 or 3, got " + std::to_string(k));
  }
  require(f.dimension() + 1 == k, Errc::invalid_argument, "test function dimension must be k - 1");
  if (!f.has_closed_form_transform()) {
    fail(Errc::no_closed_form, "fourier_b needs a box or triangle test function");
  }
  require(values.size() >= k, Errc::invalid_argument, "need at least k sequence values");
  std::vector<BigInt> check(values.begin(), values.end());
  std::sort(check.begin(), check.end());
  require(std::adjacent_find(check.begin(), check.end()) == check.end(), Errc::invalid_argument,
          "sequence values must be distinct");
  const std::int64_t limit = n_max.value_or(64 * static_cast<std::int64_t>(values.size()));
  require(limit >= 0, Errc::invalid_argument, "n_max must be >= 0");

  FourierCoefficient out = k == 2 ? fourier_b2(l, f, values, limit) : fourier_b3(l, f, values, limit);
  if (tail_tolerance && out.tail_bound > *tail_tolerance) {
    fail(Errc::truncation_too_coarse, "tail bound " + std::to_string(out.tail_bound) +
                                          " exceeds tolerance " + std::to_string(*tail_tolerance));
  }
  return out;
}

double mean_via_b0(unsigned k, const TestFunction& f, std::span<const BigInt> values,
                   std::optional<std::int64_t> n_max) {
  const auto b = fourier_b(0, k, f, values, n_max);
  return b.value / std::pow(static_cast<double>(values.size()), k);
}

double stability_delta(const OrderedPoints& points_n, const OrderedPoints& points_nk, unsigned k,
                       const TestFunction& f, double delta) {
  require(delta > 0.0 && delta < 1.0, Errc::invalid_argument, "delta must lie in (0, 1)");
  const std::size_t n = points_n.size();
  require(points_nk.size() >= n, Errc::invalid_argument, "second point set must extend the first");
  const auto a = points_n.by_index();
  const auto b = points_nk.by_index();
  require(std::equal(a.begin(), a.end(), b.begin()), Errc::invalid_argument,
          "point sets do not come from the same alpha");
  const std::size_t extra = points_nk.size() - n;
  if (static_cast<double>(extra) > std::pow(static_cast<double>(n), 1.0 - delta)) {
    fail(Errc::window_out_of_range, "K = " + std::to_string(extra) + " exceeds N^(1 - delta)");
  }
  if (extra == 0) return 0.0;
  const double r_n = correlation_direct(points_n, k, f).value;
  const double r_nk = correlation_direct(points_nk, k, f).value;
  return std::abs(r_nk - r_n);
}

}  // namespace lacunary
