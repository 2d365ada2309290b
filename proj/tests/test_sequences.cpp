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

#include <gtest/gtest.h>

#include "lacunary/errors.hpp"
#include "lacunary/sequences.hpp"

namespace lacunary {
namespace {

std::vector<BigInt> ints(std::initializer_list<long> v) {
  std::vector<BigInt> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

TEST(Sequences, GeometricValues) {
  EXPECT_EQ(generate(SequenceSpec::geometric(2), 5), ints({2, 4, 8, 16, 32}));
  EXPECT_EQ(generate(SequenceSpec::geometric(3), 3), ints({3, 9, 27}));
}

TEST(Sequences, PolynomialValues) {
  EXPECT_EQ(generate(SequenceSpec::polynomial(2), 4), ints({1, 4, 9, 16}));
  EXPECT_FALSE(SequenceSpec::polynomial(2).lacunary());
}

TEST(Sequences, FibonacciLikeValues) {
  EXPECT_EQ(generate(SequenceSpec::fibonacci_like(1, 2), 6), ints({1, 2, 3, 5, 8, 13}));
  EXPECT_EQ(SequenceSpec::fibonacci_like(1, 2).gap_start, 2u);
}

TEST(Sequences, ExplicitValuesAreCopied) {
  const auto spec = SequenceSpec::explicit_list(ints({3, 7, 20}));
  EXPECT_EQ(generate(spec, 2), ints({3, 7}));
  EXPECT_THROW(generate(spec, 4), Error);
}

TEST(Sequences, InvalidSpecsAreRejected) {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::io_error;
  };
  EXPECT_EQ(code([] { generate(SequenceSpec::geometric(1), 3); }), Errc::invalid_spec);
  EXPECT_EQ(code([] { generate(SequenceSpec::explicit_list(ints({1, 3, 3})), 3); }),
            Errc::invalid_spec);
  EXPECT_EQ(code([] { generate(SequenceSpec::polynomial(0), 3); }), Errc::invalid_spec);
  EXPECT_EQ(code([] { generate(SequenceSpec::geometric(2), 100, 64); }), Errc::resource_limit);
}

TEST(Sequences, LargeTermsAreExact) {
  const auto v = generate(SequenceSpec::geometric(2), 200);
  BigInt expected;
  mpz_ui_pow_ui(expected.get_mpz_t(), 2, 200);
  EXPECT_EQ(v.back(), expected);
  EXPECT_EQ(generate(SequenceSpec::geometric(2), 200), v);
}

TEST(VerifyGap, GeometricHolds) {
  const auto g = verify_gap(ints({2, 4, 8, 16}), Rational(3, 2), 1);
  EXPECT_TRUE(g.holds);
  EXPECT_FALSE(g.first_violation);
}

TEST(VerifyGap, SquaresFailAtFirstSmallRatio) {
  // 16/9 and 25/16 both exceed 3/2; 36/25 does not.
  EXPECT_TRUE(verify_gap(ints({1, 4, 9, 16, 25}), Rational(3, 2), 2).holds);
  const auto g = verify_gap(ints({1, 4, 9, 16, 25, 36}), Rational(3, 2), 2);
  EXPECT_FALSE(g.holds);
  ASSERT_TRUE(g.first_violation);
  EXPECT_EQ(*g.first_violation, 5u);
}

TEST(VerifyGap, FibonacciFromSecondTerm) {
  EXPECT_TRUE(verify_gap(ints({1, 2, 3, 5, 8}), Rational(1418, 1000), 2).holds);
  // a(2)/a(1) = 2 is fine but 3/2 is the smallest later ratio.
  EXPECT_FALSE(verify_gap(ints({1, 2, 3, 5, 8}), Rational(3, 2), 1).holds);
}

TEST(VerifyGap, GeometricThresholdIsTheBase) {
  for (unsigned long g : {2UL, 3UL, 5UL}) {
    const auto v = generate(SequenceSpec::geometric(g), 12);
    EXPECT_TRUE(verify_gap(v, Rational(static_cast<long>(g) * 100 - 1, 100), 1).holds) << g;
    EXPECT_FALSE(verify_gap(v, Rational(static_cast<long>(g)), 1).holds) << g;
    EXPECT_TRUE(verify_gap(v, *SequenceSpec::geometric(g).gap_constant, 1).holds);
  }
}

TEST(VerifyGap, PolynomialEventuallyFails) {
  const auto v = generate(SequenceSpec::polynomial(3), 200);
  const auto g = verify_gap(v, Rational(11, 10), 1);
  EXPECT_FALSE(g.holds);
}

TEST(VerifyGap, ClaimedConstantsHold) {
  const auto fib = SequenceSpec::fibonacci_like(1, 2);
  EXPECT_TRUE(verify_gap(generate(fib, 80), *fib.gap_constant, fib.gap_start).holds);
}

}  // namespace
}  // namespace lacunary
