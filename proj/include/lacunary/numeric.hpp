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

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>

namespace lacunary {

using BigInt = mpz_class;
using Rational = mpq_class;

static_assert(GMP_LIMB_BITS == 64, "64-bit GMP limbs are assumed");

// Number of bits in |v| (0 for v == 0).
inline std::size_t bit_length(const BigInt& v) {
  return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

// ceil(log2 v) for v >= 1.
inline std::size_t ceil_log2(const BigInt& v) {
  if (v <= 1) return 0;
  const std::size_t bits = bit_length(v);
  // Exact powers of two have a single set bit.
  return mpz_scan1(v.get_mpz_t(), 0) == bits - 1 ? bits - 1 : bits;
}

inline std::size_t ceil_log2(std::uint64_t v) {
  std::size_t bits = 0;
  while (bits < 64 && (std::uint64_t{1} << bits) < v) ++bits;
  return bits;
}

inline BigInt to_big(std::int64_t v) {
  BigInt out;
  mpz_set_si(out.get_mpz_t(), v);
  return out;
}

inline BigInt to_big_u(std::uint64_t v) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return out;
}

// Low 64 bits of |v|.
inline std::uint64_t low_word(const BigInt& v) {
  return mpz_size(v.get_mpz_t()) == 0 ? 0 : mpz_getlimbn(v.get_mpz_t(), 0);
}

inline bool fits_int64(const BigInt& v) { return mpz_fits_slong_p(v.get_mpz_t()) != 0; }

// "p/q" (or "p" for integers) in lowest terms.
inline std::string to_fraction_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational(const std::string& text);

}  // namespace lacunary
