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

#include "lacunary/fracparts.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lacunary/errors.hpp"
#include "lacunary/rng.hpp"

namespace lacunary {

Phase Phase::from_double(double t) noexcept {
  long double frac = static_cast<long double>(t) - std::floor(static_cast<long double>(t));
  const long double scaled = std::round(std::ldexp(frac, 64));
  if (scaled >= 0x1p64L) return Phase(0);
  return Phase(static_cast<std::uint64_t>(scaled));
}

FixedPointAlpha::FixedPointAlpha(BigInt mantissa, std::size_t bits, AlphaProvenance provenance)
    : mantissa_(std::move(mantissa)), precision_bits_(bits), provenance_(std::move(provenance)) {}

FixedPointAlpha FixedPointAlpha::sample(std::uint64_t seed, std::size_t precision_bits) {
  require(precision_bits >= 64, Errc::invalid_argument, "alpha precision must be >= 64 bits");
  const std::size_t words = (precision_bits + 63) / 64;
  // Most significant word first so that longer streams extend shorter ones.
  std::vector<std::uint64_t> stream(words);
  for (std::size_t i = 0; i < words; ++i) stream[i] = stream_word(seed, i);
  BigInt m;
  mpz_import(m.get_mpz_t(), words, 1, sizeof(std::uint64_t), 0, 0, stream.data());
  mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), 64 * words - precision_bits);
  return {std::move(m), precision_bits, SeededAlpha{seed}};
}

FixedPointAlpha FixedPointAlpha::from_rational(const BigInt& p, const BigInt& q,
                                               std::size_t precision_bits) {
  require(precision_bits >= 64, Errc::invalid_argument, "alpha precision must be >= 64 bits");
  require(q > 0, Errc::invalid_argument, "alpha denominator must be positive");
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  BigInt m = r;
  mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), precision_bits);
  mpz_fdiv_q(m.get_mpz_t(), m.get_mpz_t(), q.get_mpz_t());
  return {std::move(m), precision_bits, RationalAlpha{p, q}};
}

std::string FixedPointAlpha::digest() const {
  std::string head;
  if (const auto* s = std::get_if<SeededAlpha>(&provenance_)) {
    head = "seed:" + std::to_string(s->seed);
  } else {
    const auto& r = std::get<RationalAlpha>(provenance_);
    head = "rational:" + r.numerator.get_str() + "/" + r.denominator.get_str();
  }
  return head + "@P=" + std::to_string(precision_bits_);
}

OrderedPoints::OrderedPoints(std::vector<Phase> by_index, double error_bound,
                             std::string alpha_digest)
    : by_index_(std::move(by_index)),
      error_bound_(error_bound),
      alpha_digest_(std::move(alpha_digest)) {
  order_.resize(by_index_.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::size_t a, std::size_t b) { return by_index_[a] < by_index_[b]; });
  sorted_.reserve(by_index_.size());
  for (std::size_t i : order_) sorted_.push_back(by_index_[i]);
}

OrderedPoints OrderedPoints::from_doubles(std::span<const double> theta, double error_bound) {
  std::vector<Phase> phases;
  phases.reserve(theta.size());
  for (double t : theta) phases.push_back(Phase::from_double(t));
  return OrderedPoints(std::move(phases), error_bound);
}

OrderedPoints OrderedPoints::head(std::size_t n) const {
  require(n <= size(), Errc::invalid_argument, "head longer than the point set");
  return OrderedPoints(std::vector<Phase>(by_index_.begin(), by_index_.begin() + n), error_bound_,
                       alpha_digest_);
}

std::size_t required_precision(std::span<const BigInt> values, unsigned guard,
                               std::size_t max_bits) {
  require(guard >= kMinGuardBits, Errc::invalid_argument,
          "guard must be >= " + std::to_string(kMinGuardBits) + " bits");
  require(!values.empty(), Errc::invalid_argument, "no sequence values");
  const BigInt& largest = *std::max_element(values.begin(), values.end());
  const std::size_t bits = ceil_log2(largest) + ceil_log2(std::uint64_t{values.size()}) + guard;
  if (bits > max_bits) {
    fail(Errc::resource_limit, "required precision " + std::to_string(bits) +
                                   " bits exceeds the maximum " + std::to_string(max_bits));
  }
  return std::max<std::size_t>(bits, 64);
}

std::size_t required_precision(const SequenceSpec& spec, std::size_t n, unsigned guard,
                               std::size_t max_bits) {
  const auto values = generate(spec, n);
  return required_precision(values, guard, max_bits);
}

OrderedPoints frac_parts(const FixedPointAlpha& alpha, std::span<const BigInt> values,
                         unsigned guard) {
  const std::size_t precision = alpha.precision_bits();
  const std::size_t needed = required_precision(values, guard, std::max(precision, kDefaultMaxPrecision));
  if (precision < needed) {
    fail(Errc::insufficient_precision, "alpha has " + std::to_string(precision) +
                                           " bits, values need " + std::to_string(needed));
  }
  std::vector<Phase> phases;
  phases.reserve(values.size());
  BigInt product;
  BigInt top;
  for (const BigInt& a : values) {
    mpz_mul(product.get_mpz_t(), alpha.mantissa().get_mpz_t(), a.get_mpz_t());
    mpz_fdiv_r_2exp(product.get_mpz_t(), product.get_mpz_t(), precision);
    if (precision <= 64) {
      mpz_mul_2exp(top.get_mpz_t(), product.get_mpz_t(), 64 - precision);
    } else {
      // Round the leading 64 fractional bits to nearest; 1.0 wraps to 0.
      mpz_set_ui(top.get_mpz_t(), 1);
      mpz_mul_2exp(top.get_mpz_t(), top.get_mpz_t(), precision - 65);
      mpz_add(top.get_mpz_t(), top.get_mpz_t(), product.get_mpz_t());
      mpz_fdiv_q_2exp(top.get_mpz_t(), top.get_mpz_t(), precision - 64);
    }
    phases.emplace_back(low_word(top));
  }
  const BigInt& largest = *std::max_element(values.begin(), values.end());
  const double representation = std::ldexp(1.0, static_cast<int>(ceil_log2(largest)) -
                                                     static_cast<int>(precision));
  return OrderedPoints(std::move(phases), representation + 0x1p-65, alpha.digest());
}

OrderedPoints sample_points(std::span<const BigInt> values, std::uint64_t seed, unsigned guard) {
  const auto alpha = sample_alpha(seed, required_precision(values, guard));
  return frac_parts(alpha, values, guard);
}

OrderedPoints uniform_points(std::size_t n, std::uint64_t seed) {
  std::vector<Phase> phases;
  phases.reserve(n);
  for (std::size_t i = 0; i < n; ++i) phases.emplace_back(stream_word(seed, i));
  return OrderedPoints(std::move(phases), 0.0, "uniform:" + std::to_string(seed));
}

}  // namespace lacunary
