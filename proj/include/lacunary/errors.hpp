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

#include <stdexcept>
#include <string>
#include <string_view>

namespace lacunary {

enum class Errc {
  invalid_spec,
  invalid_argument,
  resource_limit,
  insufficient_precision,
  level_out_of_range,
  window_out_of_range,
  domain_error,
  n_too_small,
  order_out_of_range,
  size_guard,
  no_closed_form,
  truncation_too_coarse,
  budget_exceeded,
  schema_error,
  missing_record,
  precision_error,
  io_error,
};

std::string_view to_string(Errc code) noexcept;

// All library failures are reported through this exception; the code
// identifies which precondition or budget was violated.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, Errc code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace lacunary
