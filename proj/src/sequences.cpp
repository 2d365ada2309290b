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

#include "lacunary/sequences.hpp"

#include <cmath>
#include <sstream>

#include "lacunary/errors.hpp"

namespace lacunary {

std::string_view to_string(SequenceKind kind) noexcept {
  switch (kind) {
    case SequenceKind::geometric: return "geometric";
    case SequenceKind::fibonacci_like: return "fibonacci";
    case SequenceKind::polynomial: return "polynomial";
    case SequenceKind::explicit_list: return "explicit";
  }
  return "?";
}

SequenceKind parse_sequence_kind(std::string_view text) {
  if (text == "geometric") return SequenceKind::geometric;
  if (text == "fibonacci" || text == "fibonacci-like" || text == "fibonacci_like")
    return SequenceKind::fibonacci_like;
  if (text == "polynomial") return SequenceKind::polynomial;
  if (text == "explicit") return SequenceKind::explicit_list;
  fail(Errc::invalid_spec, "unknown sequence kind '" + std::string(text) + "'");
}

SequenceSpec SequenceSpec::geometric(unsigned long base) {
  SequenceSpec s;
  s.kind = SequenceKind::geometric;
  s.base = base;
  // Any c < g works from x0 = 1; claim the midpoint between 1 and g.
  s.gap_constant = Rational(static_cast<long>(base) + 1, 2);
  s.gap_start = 1;
  return s;
}

SequenceSpec SequenceSpec::fibonacci_like(BigInt first, BigInt second) {
  SequenceSpec s;
  s.kind = SequenceKind::fibonacci_like;
  s.first = std::move(first);
  s.second = std::move(second);
  // Ratios approach the golden ratio only asymptotically.
  s.gap_constant = Rational(7, 5);
  s.gap_start = 2;
  return s;
}

SequenceSpec SequenceSpec::polynomial(unsigned degree) {
  SequenceSpec s;
  s.kind = SequenceKind::polynomial;
  s.degree = degree;
  s.gap_constant.reset();
  return s;
}

SequenceSpec SequenceSpec::explicit_list(std::vector<BigInt> values,
                                         std::optional<Rational> gap_constant,
                                         std::size_t gap_start) {
  SequenceSpec s;
  s.kind = SequenceKind::explicit_list;
  s.values = std::move(values);
  s.gap_constant = std::move(gap_constant);
  s.gap_start = gap_start;
  return s;
}

void SequenceSpec::validate() const {
  switch (kind) {
    case SequenceKind::geometric:
      require(base >= 2, Errc::invalid_spec, "geometric base must be >= 2");
      break;
    case SequenceKind::fibonacci_like:
      require(first > 0 && second > first, Errc::invalid_spec,
              "fibonacci-like seeds must satisfy 0 < a(1) < a(2)");
      break;
    case SequenceKind::polynomial:
      require(degree >= 1, Errc::invalid_spec, "polynomial degree must be >= 1");
      break;
    case SequenceKind::explicit_list:
      for (std::size_t i = 0; i < values.size(); ++i) {
        require(values[i] > 0, Errc::invalid_spec, "explicit values must be positive");
        require(i == 0 || values[i] > values[i - 1], Errc::invalid_spec,
                "explicit values must be strictly increasing (index " + std::to_string(i + 1) + ")");
      }
      break;
  }
  if (gap_constant) {
    require(*gap_constant > 1, Errc::invalid_spec, "gap constant must exceed 1");
  }
  require(gap_start >= 1, Errc::invalid_spec, "gap start is 1-based");
}

std::string SequenceSpec::describe() const {
  std::ostringstream os;
  os << to_string(kind);
  switch (kind) {
    case SequenceKind::geometric: os << "(g=" << base << ")"; break;
    case SequenceKind::fibonacci_like: os << "(" << first << "," << second << ")"; break;
    case SequenceKind::polynomial: os << "(d=" << degree << ")"; break;
    case SequenceKind::explicit_list: os << "(len=" << values.size() << ")"; break;
  }
  return os.str();
}

std::vector<BigInt> generate(const SequenceSpec& spec, std::size_t n, std::size_t bit_budget) {
  require(n >= 1, Errc::invalid_argument, "N must be >= 1");
  spec.validate();
  std::vector<BigInt> out;
  out.reserve(n);
  auto check_budget = [&](const BigInt& v) {
    if (bit_length(v) > bit_budget) {
      fail(Errc::resource_limit, "a(" + std::to_string(out.size() + 1) + ") needs " +
                                     std::to_string(bit_length(v)) + " bits, budget is " +
                                     std::to_string(bit_budget));
    }
  };
  switch (spec.kind) {
    case SequenceKind::geometric: {
      // Bit length of a(N) is known up front.
      const double bits = static_cast<double>(n) * std::log2(static_cast<double>(spec.base));
      if (bits > static_cast<double>(bit_budget) + 1.0) {
        fail(Errc::resource_limit, "geometric a(N) exceeds the bit budget");
      }
      BigInt v = 1;
      for (std::size_t x = 1; x <= n; ++x) {
        v *= spec.base;
        check_budget(v);
        out.push_back(v);
      }
      break;
    }
    case SequenceKind::fibonacci_like: {
      BigInt prev = spec.first;
      BigInt cur = spec.second;
      out.push_back(prev);
      if (n >= 2) out.push_back(cur);
      while (out.size() < n) {
        BigInt next = prev + cur;
        check_budget(next);
        out.push_back(next);
        prev = std::move(cur);
        cur = std::move(next);
      }
      out.resize(n);
      break;
    }
    case SequenceKind::polynomial:
      for (std::size_t x = 1; x <= n; ++x) {
        BigInt v;
        mpz_ui_pow_ui(v.get_mpz_t(), x, spec.degree);
        check_budget(v);
        out.push_back(std::move(v));
      }
      break;
    case SequenceKind::explicit_list:
      require(n <= spec.values.size(), Errc::invalid_spec,
              "explicit list has only " + std::to_string(spec.values.size()) + " values");
      for (std::size_t x = 0; x < n; ++x) {
        check_budget(spec.values[x]);
        out.push_back(spec.values[x]);
      }
      break;
  }
  return out;
}

GapCheck verify_gap(std::span<const BigInt> values, const Rational& c, std::size_t start) {
  require(!values.empty(), Errc::invalid_argument, "verify_gap needs values");
  require(c > 1, Errc::invalid_argument, "gap constant must exceed 1");
  require(start >= 1, Errc::invalid_argument, "gap start is 1-based");
  // a(x+1) > (p/q) a(x)  <=>  q a(x+1) > p a(x)
  const BigInt& p = c.get_num();
  const BigInt& q = c.get_den();
  for (std::size_t x = start; x < values.size(); ++x) {
    if (q * values[x] <= p * values[x - 1]) return {false, x};
  }
  return {true, std::nullopt};
}

}  // namespace lacunary
