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

#include "lacunary/poisson_model.hpp"

#include <array>
#include <cmath>
#include <string>

#include "lacunary/errors.hpp"

namespace lacunary::poisson {

namespace {

constexpr auto kFactorials = [] {
  std::array<std::uint64_t, kMaxLevel + 1> f{};
  f[0] = 1;
  for (std::size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * i;
  return f;
}();

void check_level(unsigned a) {
  if (a < 1 || a > kMaxLevel) {
    fail(Errc::domain_error, "level must lie in [1, " + std::to_string(kMaxLevel) + "]");
  }
}

void check_nonnegative(double s) {
  if (!(s >= 0.0)) fail(Errc::domain_error, "spacing must be >= 0");
}

constexpr double kEps = 1e-16;
constexpr int kMaxIterations = 1000;

// gamma(a, s) / Gamma(a) by the power series, valid for s < a + 1.
double lower_series(unsigned a, double s) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= s / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-s + a * std::log(s) - std::lgamma(static_cast<double>(a)));
}

// Gamma(a, s) / Gamma(a) by the modified Lentz continued fraction, s >= a + 1.
double upper_fraction(unsigned a, double s) {
  constexpr double tiny = 1e-300;
  double b = s + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - static_cast<double>(a));
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-s + a * std::log(s) - std::lgamma(static_cast<double>(a))) * h;
}

}  // namespace

double factorial(unsigned n) {
  if (n > kMaxLevel) fail(Errc::domain_error, "factorial table ends at " + std::to_string(kMaxLevel));
  return static_cast<double>(kFactorials[n]);
}

double level_spacing_pdf(unsigned a, double s) {
  check_level(a);
  check_nonnegative(s);
  if (a == 1) return std::exp(-s);
  return std::pow(s, a - 1) * std::exp(-s) / factorial(a - 1);
}

double level_spacing_cdf(unsigned a, double s) {
  check_level(a);
  check_nonnegative(s);
  if (s == 0.0) return 0.0;
  if (std::isinf(s)) return 1.0;
  if (a == 1) return -std::expm1(-s);
  if (s < a + 1.0) return lower_series(a, s);
  return 1.0 - upper_fraction(a, s);
}

double interval_count_pmf(double lambda, unsigned k) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) fail(Errc::domain_error, "lambda must be > 0");
  return std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0));
}

double joint_spacing_pdf(std::span<const double> s) {
  double sum = 0.0;
  for (double v : s) {
    check_nonnegative(v);
    sum += v;
  }
  return std::exp(-sum);
}

double joint_spacing_cdf(std::span<const double> s) {
  double p = 1.0;
  for (double v : s) {
    check_nonnegative(v);
    p *= -std::expm1(-v);
  }
  return p;
}

}  // namespace lacunary::poisson
