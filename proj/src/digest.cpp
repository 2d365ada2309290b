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

#include "lacunary/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

#include "lacunary/errors.hpp"
#include "lacunary/numeric.hpp"

namespace lacunary {

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1) {
    fail(Errc::io_error, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xf]);
  }
  return out;
}

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_spec: return "invalid-spec";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::resource_limit: return "resource-limit";
    case Errc::insufficient_precision: return "insufficient-precision";
    case Errc::level_out_of_range: return "level-out-of-range";
    case Errc::window_out_of_range: return "window-out-of-range";
    case Errc::domain_error: return "domain-error";
    case Errc::n_too_small: return "N-too-small";
    case Errc::order_out_of_range: return "order-out-of-range";
    case Errc::size_guard: return "size-guard";
    case Errc::no_closed_form: return "no-closed-form-transform";
    case Errc::truncation_too_coarse: return "truncation-too-coarse";
    case Errc::budget_exceeded: return "budget-exceeded";
    case Errc::schema_error: return "schema-error";
    case Errc::missing_record: return "missing-record";
    case Errc::precision_error: return "precision-error";
    case Errc::io_error: return "io-error";
  }
  return "error";
}

Rational parse_rational(const std::string& text) {
  Rational q;
  const auto slash = text.find('/');
  const auto dot = text.find('.');
  try {
    if (dot != std::string::npos && slash == std::string::npos) {
      // Terminating decimal, parsed exactly.
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      BigInt num(digits.empty() ? "0" : digits, 10);
      BigInt den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
      q = Rational(num, den);
    } else {
      q = Rational(text, 10);
    }
  } catch (const std::invalid_argument&) {
    fail(Errc::invalid_argument, "not a rational number: '" + text + "'");
  }
  if (q.get_den() == 0) fail(Errc::invalid_argument, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace lacunary
