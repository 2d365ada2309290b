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
#include <numbers>

#include "lacunary/errors.hpp"
#include "lacunary/test_function.hpp"

namespace lacunary {
namespace {

// Midpoint rule over the cube [-r, r]^d.
double grid_integral(const TestFunction& f, int steps) {
  const double r = f.radius(), h = 2.0 * r / steps;
  std::vector<double> y(f.dimension());
  double sum = 0.0;
  std::vector<int> idx(f.dimension(), 0);
  while (true) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = -r + (idx[i] + 0.5) * h;
    sum += f(y);
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == steps) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return sum * std::pow(h, static_cast<double>(y.size()));
}

TEST(TestFunction, Values) {
  const auto box = TestFunction::box(2, 1.0);
  const std::vector<double> in{0.5, -1.0}, out{0.5, 1.01};
  EXPECT_EQ(box(in), 1.0);
  EXPECT_EQ(box(out), 0.0);
  const auto tri = TestFunction::triangle(2, 2.0);
  const std::vector<double> y{1.0, -0.5};
  EXPECT_DOUBLE_EQ(tri(y), 0.5 * 0.75);
  const auto bump = TestFunction::bump(1, 1.0);
  const std::vector<double> zero{0.0}, edge{1.0};
  EXPECT_DOUBLE_EQ(bump(zero), 1.0);
  EXPECT_EQ(bump(edge), 0.0);
}

TEST(TestFunction, IntegralsAgreeWithQuadrature) {
  for (std::size_t d = 1; d <= 3; ++d) {
    for (auto f : {TestFunction::box(d, 1.5), TestFunction::triangle(d, 0.75),
                   TestFunction::bump(d, 1.25)}) {
      const int steps = d == 1 ? 20000 : d == 2 ? 800 : 120;
      const double tol = f.kind() == TestFunctionKind::box ? 1e-12 : 5e-4 * f.integral();
      EXPECT_NEAR(f.integral(), grid_integral(f, steps), tol) << f.digest();
    }
  }
}

TEST(TestFunction, FourierAtZeroIsTheIntegral) {
  const std::vector<double> zero{0.0, 0.0};
  for (auto f : {TestFunction::box(2, 0.7), TestFunction::triangle(2, 1.3)}) {
    EXPECT_NEAR(f.fourier(zero), f.integral(), 1e-14);
  }
  const std::vector<double> xi{0.25};
  // Box of radius 1: sin(pi/2) / (pi/4).
  EXPECT_NEAR(TestFunction::box(1, 1.0).fourier(xi), 4.0 / std::numbers::pi, 1e-15);
  EXPECT_THROW(TestFunction::bump(1, 1.0).fourier(xi), Error);
}

TEST(TestFunction, FourierMatchesNumericalTransform) {
  const auto tri = TestFunction::triangle(1, 1.5);
  for (double xi : {0.1, 0.37, 1.0}) {
    double sum = 0.0;
    const int steps = 200000;
    const double h = 3.0 / steps;
    for (int i = 0; i < steps; ++i) {
      const double y = -1.5 + (i + 0.5) * h;
      const std::vector<double> p{y};
      sum += tri(p) * std::cos(2 * std::numbers::pi * xi * y);
    }
    const std::vector<double> v{xi};
    EXPECT_NEAR(tri.fourier(v), sum * h, 1e-9) << xi;
  }
}

TEST(TestFunction, Validation) {
  EXPECT_THROW(TestFunction(TestFunctionKind::box, 0, 1.0), Error);
  EXPECT_THROW(TestFunction(TestFunctionKind::box, 1, 0.0), Error);
  EXPECT_THROW(TestFunction(TestFunctionKind::box, 1, 1.0, -1.0), Error);
  EXPECT_EQ(parse_test_function_kind("bump"), TestFunctionKind::smooth_bump);
  EXPECT_EQ(parse_test_function_kind("triangle"), TestFunctionKind::triangle);
  EXPECT_THROW(parse_test_function_kind("gauss"), Error);
}

TEST(Periodize, WrapsIntoTheUnitCell) {
  const auto box = TestFunction::box(1, 1.0);
  const std::vector<double> near{0.99}, far{0.5};
  // 0.99 wraps to -0.01 -> N y = -0.1
  EXPECT_EQ(periodize(box, 10, near), 1.0);
  EXPECT_EQ(periodize(box, 10, far), 0.0);
  try {
    periodize(box, 2, near);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::n_too_small);
  }
}

}  // namespace
}  // namespace lacunary
