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

#include <cmath>

#include "lacunary/counting.hpp"
#include "lacunary/errors.hpp"
#include "lacunary/sequences.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace lacunary {
namespace {

std::vector<BigInt> seq(const SequenceSpec& s, std::size_t n) { return generate(s, n); }

std::vector<SequenceSpec> families() {
  return {SequenceSpec::geometric(2), SequenceSpec::geometric(3), SequenceSpec::polynomial(2),
          SequenceSpec::fibonacci_like(1, 2)};
}

TEST(Counting, PairEquationMatchesOracle) {
  for (const auto& s : families()) {
    for (std::size_t n = 2; n <= 5; ++n) {
      const auto v = seq(s, n);
      EXPECT_EQ(count_pair_equation(2, v).total, oracle::pair_equation(2, v)) << s.describe() << n;
    }
    for (std::size_t n = 3; n <= 4; ++n) {
      const auto v = seq(s, n);
      EXPECT_EQ(count_pair_equation(3, v).total, oracle::pair_equation(3, v)) << s.describe() << n;
    }
  }
  const auto two = seq(SequenceSpec::geometric(2), 2);
  EXPECT_EQ(count_pair_equation(2, two).total, 16);
}

TEST(Counting, ContrastMatchesOracle) {
  for (const auto& s : families()) {
    for (std::size_t n = 3; n <= 4; ++n) {
      const auto v = seq(s, n);
      EXPECT_EQ(count_contrast_triple(v).total, oracle::contrast_triple(v)) << s.describe() << n;
    }
  }
}

TEST(Counting, HomogeneousDistinctMatchesOracle) {
  for (const auto& s : families()) {
    for (unsigned r = 2; r <= 4; ++r) {
      for (std::size_t n = r; n <= (r == 4 ? 5u : 6u); ++n) {
        const auto v = seq(s, n);
        const auto res = count_homogeneous(r, v);
        EXPECT_EQ(res.total, oracle::homogeneous(r, v, true).total)
            << s.describe() << " r " << r << " N " << n;
      }
    }
  }
}

TEST(Counting, HomogeneousRepeatedMatchesOracle) {
  const auto two = seq(SequenceSpec::geometric(2), 2);
  const auto small = count_homogeneous(2, two, HomogeneousVariant::repeated);
  EXPECT_EQ(small.total, 8);
  EXPECT_EQ(*small.degenerate, 8);
  EXPECT_EQ(*small.nondegenerate, 0);
  for (const auto& s : families()) {
    for (unsigned r = 2; r <= 4; ++r) {
      for (std::size_t n = 2; n <= (r == 4 ? 4u : 5u); ++n) {
        const auto v = seq(s, n);
        const auto res = count_homogeneous(r, v, HomogeneousVariant::repeated);
        const auto ref = oracle::homogeneous(r, v, false);
        EXPECT_EQ(res.total, ref.total) << s.describe() << " r " << r << " N " << n;
        EXPECT_EQ(*res.degenerate, ref.degenerate) << s.describe() << " r " << r << " N " << n;
        EXPECT_EQ(*res.degenerate + *res.nondegenerate, res.total);
        for (const auto& w : res.degenerate_witnesses) EXPECT_TRUE(is_degenerate(w.y, w.z));
      }
    }
  }
}

TEST(Counting, FingerprintKeysAgreeWithExactKeys) {
  for (const auto& s : families()) {
    const auto v = seq(s, 6);
    EXPECT_EQ(count_pair_equation(2, v, {}, KeyMode::fingerprint).total,
              count_pair_equation(2, v).total);
    EXPECT_EQ(count_pair_equation(3, v, {}, KeyMode::fingerprint).total,
              count_pair_equation(3, v).total);
    EXPECT_EQ(count_contrast_triple(v, {}, KeyMode::fingerprint).total,
              count_contrast_triple(v).total);
    EXPECT_EQ(count_homogeneous(4, v, HomogeneousVariant::distinct, {}, KeyMode::fingerprint).total,
              count_homogeneous(4, v).total);
  }
}

TEST(Counting, SmallPassesGiveTheSameTotal) {
  const auto v = seq(SequenceSpec::geometric(2), 12);
  CountBudget tight;
  tight.max_entries_per_pass = 1000;
  EXPECT_EQ(count_pair_equation(3, v, tight).total, count_pair_equation(3, v).total);
  EXPECT_EQ(count_homogeneous(4, v, HomogeneousVariant::distinct, tight).total,
            count_homogeneous(4, v).total);
}

TEST(Counting, HugeValuesUseExactConfirmation) {
  // a(x) = 2^(40 x): products overflow 64 bits.
  std::vector<BigInt> v;
  for (int x = 1; x <= 5; ++x) v.push_back(BigInt(1) << (40 * x));
  // Only the diagonal and its sign flip (swapped pair, m' = -m) survive.
  EXPECT_EQ(count_pair_equation(2, v).total, 2 * diagonal_solutions(2, 5));
  EXPECT_EQ(count_homogeneous(3, v).total, 0);
}

TEST(Counting, DiagonalSolutions) {
  EXPECT_EQ(diagonal_solutions(2, 5), BigInt(10) * 20);
  EXPECT_EQ(diagonal_solutions(3, 4), BigInt(80) * 24);
  for (std::size_t n = 3; n <= 6; ++n) {
    EXPECT_GE(count_pair_equation(3, seq(SequenceSpec::geometric(2), n)).total,
              diagonal_solutions(3, n));
  }
}

TEST(Counting, OrderErrors) {
  const auto v = seq(SequenceSpec::geometric(2), 5);
  EXPECT_THROW(count_homogeneous(5, v), Error);
  EXPECT_THROW(count_pair_equation(4, v), Error);
  CountBudget tiny;
  tiny.max_work = 10;
  try {
    count_pair_equation(3, v, tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::budget_exceeded);
  }
}

TEST(Sandwich, SmallInstance) {
  const std::vector<BigInt> a{8, 2};
  EXPECT_EQ(count_sandwich(a, 1, Rational(1, 2), 1), 3);
}

TEST(Sandwich, MatchesOracle) {
  const std::vector<std::vector<BigInt>> cases{{7}, {100, 31}, {50, 20, 3}, {97, 40, 11, 2}};
  for (const auto& a : cases) {
    for (long b : {0L, 5L, -13L}) {
      for (const Rational& c : {Rational(1, 3), Rational(1), Rational(5, 2)}) {
        for (std::int64_t n : {1, 3, 5}) {
          if (a.size() == 4 && n > 3) continue;
          EXPECT_EQ(count_sandwich(a, b, c, static_cast<std::size_t>(n)),
                    oracle::sandwich(a, b, c, n))
              << a.size() << " " << b << " " << c << " " << n;
        }
      }
    }
  }
  EXPECT_THROW(count_sandwich(std::vector<BigInt>{2, 8}, 0, Rational(1), 1), Error);
}

TEST(HyperplanePair, DirectAndReducedAgreeWithOracle) {
  const auto v = seq(SequenceSpec::geometric(2), 10);
  const std::vector<std::vector<std::size_t>> zs{{5, 2}, {9, 4, 1}, {8, 6, 3, 2}};
  for (const auto& z : zs) {
    for (long b : {0L, 3L}) {
      for (long d : {0L, 1L}) {
        for (std::int64_t n : {1, 2, 3}) {
          const Rational c(1, 2);
          const auto expected = oracle::hyperplane_pair(v, z, b, d, c, n);
          EXPECT_EQ(count_hyperplane_pair(v, z, b, d, c, static_cast<std::size_t>(n)), expected);
          const auto red = reduce_hyperplane_pair(v, z, b, d, c);
          // The reduction drops y_s; the box on y_s is enforced by the oracle only.
          EXPECT_GE(count_sandwich(red.a, red.b, red.c, static_cast<std::size_t>(n)), expected);
        }
      }
    }
  }
}

TEST(Degenerate, ClassSums) {
  const std::vector<std::int64_t> y{1, -1, 2};
  const std::vector<std::size_t> same{3, 3, 4}, split{3, 4, 4};
  EXPECT_FALSE(is_degenerate(y, same));
  EXPECT_FALSE(is_degenerate(y, split));
  const std::vector<std::int64_t> y2{2, -2, 0};
  EXPECT_TRUE(is_degenerate(y2, same));
}

TEST(GrowthFit, RecoversAPowerLaw) {
  std::vector<GrowthPoint> pts;
  for (double n : {32.0, 64.0, 128.0, 256.0}) {
    pts.push_back({n, 3.0 * n * n * std::pow(std::log(n), 2.0)});
  }
  const auto fit = fit_growth(pts, 2.0);
  EXPECT_NEAR(fit.exponent, 2.0, 1e-12);
  EXPECT_NEAR(fit.intercept, std::log(3.0), 1e-10);
  EXPECT_NEAR(fit.residual, 0.0, 1e-12);
  EXPECT_GT(fit_growth(pts, 0.0).exponent, 2.2);
  EXPECT_THROW(fit_growth(std::span(pts).first(3), 0.0), Error);
  std::vector<GrowthPoint> zeros{{2, 0}, {4, 0}, {8, 0}, {16, 5}};
  EXPECT_TRUE(fit_growth(zeros, 0.0).degenerate);
}

TEST(FrozenFixtures, IndependentOraclesReproduceThem) {
  for (const auto& [n, count] : fixture::kHomogeneous3) {
    EXPECT_EQ(oracle::homogeneous3_lines(seq(SequenceSpec::geometric(2), n)), count) << n;
  }
  for (const auto& [n, count] : fixture::kPairEquation2) {
    EXPECT_EQ(oracle::pair_equation_powers_of_two(static_cast<std::int64_t>(n)), count) << n;
  }
  // The shortcuts agree with full enumeration where that is affordable.
  for (std::size_t n = 3; n <= 8; ++n) {
    const auto v = seq(SequenceSpec::geometric(2), n);
    EXPECT_EQ(oracle::homogeneous3_lines(v), oracle::homogeneous(3, v, true).total) << n;
    EXPECT_EQ(oracle::pair_equation_powers_of_two(static_cast<std::int64_t>(n)),
              oracle::pair_equation(2, v))
        << n;
  }
}

}  // namespace
}  // namespace lacunary
