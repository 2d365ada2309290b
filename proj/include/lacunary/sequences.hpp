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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lacunary/numeric.hpp"

namespace lacunary {

enum class SequenceKind { geometric, fibonacci_like, polynomial, explicit_list };

std::string_view to_string(SequenceKind kind) noexcept;
SequenceKind parse_sequence_kind(std::string_view text);

// Bit length of a(N) above which generation is refused.
inline constexpr std::size_t kDefaultBitBudget = std::size_t{1} << 22;

// Declarative description of an integer sequence a(1), a(2), ...
//
// Lacunary kinds carry a claimed gap constant c > 1 and the index x0 from
// which a(x+1) > c a(x) is claimed. Polynomial sequences are the contrast
// class and are never lacunary.
struct SequenceSpec {
  SequenceKind kind = SequenceKind::geometric;
  unsigned long base = 2;               // geometric: a(x) = base^x
  BigInt first = 1;                     // fibonacci-like seeds a(1), a(2)
  BigInt second = 2;
  unsigned degree = 2;                  // polynomial: a(x) = x^degree
  std::vector<BigInt> values;           // explicit list
  std::optional<Rational> gap_constant; // claimed c
  std::size_t gap_start = 1;            // claimed x0

  static SequenceSpec geometric(unsigned long base);
  static SequenceSpec fibonacci_like(BigInt first, BigInt second);
  static SequenceSpec polynomial(unsigned degree);
  static SequenceSpec explicit_list(std::vector<BigInt> values,
                                    std::optional<Rational> gap_constant = std::nullopt,
                                    std::size_t gap_start = 1);

  bool lacunary() const noexcept {
    return kind != SequenceKind::polynomial && gap_constant.has_value();
  }

  // Throws invalid_spec when the parameters do not describe a strictly
  // increasing sequence of positive integers.
  void validate() const;

  std::string describe() const;
};

// Exact values a(1), ..., a(n).
std::vector<BigInt> generate(const SequenceSpec& spec, std::size_t n,
                             std::size_t bit_budget = kDefaultBitBudget);

struct GapCheck {
  bool holds = true;
  std::optional<std::size_t> first_violation;  // 1-based x with a(x+1) <= c a(x)
};

// Checks a(x+1) > c a(x) for every x >= start (1-based) by exact
// rational comparison.
GapCheck verify_gap(std::span<const BigInt> values, const Rational& c, std::size_t start);

}  // namespace lacunary
