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
#include <span>

namespace lacunary::poisson {

// Largest level a for which (a-1)! is tabulated.
inline constexpr unsigned kMaxLevel = 20;

// P_a(s) = s^{a-1} e^{-s} / (a-1)!.
double level_spacing_pdf(unsigned a, double s);

// Regularized lower incomplete gamma gamma(a, s) / Gamma(a).
double level_spacing_cdf(unsigned a, double s);

// e^{-lambda} lambda^k / k!, evaluated in log space.
double interval_count_pmf(double lambda, unsigned k);

// prod_i e^{-s_i}.
double joint_spacing_pdf(std::span<const double> s);

// prod_i (1 - e^{-s_i}), the joint cdf of independent unit exponentials.
double joint_spacing_cdf(std::span<const double> s);

// (a-1)! for 1 <= a <= kMaxLevel + 1.
double factorial(unsigned n);

}  // namespace lacunary::poisson
