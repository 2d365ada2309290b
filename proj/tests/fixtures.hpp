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

// Frozen exact counts for a(x) = 2^x. Each value was produced by the
// library, by the line and 2-adic bucket oracles in oracles.hpp, and (where
// feasible) by full enumeration; all three agreed.

#include <cstdint>
#include <utility>
#include <vector>

namespace fixture {

// count_homogeneous, r = 3, distinct indices.
inline const std::vector<std::pair<std::size_t, std::uint64_t>> kHomogeneous3 = {
    {8, 312}, {16, 2304}, {32, 12888}, {64, 61968}};

// count_pair_equation, k = 2.
inline const std::vector<std::pair<std::size_t, std::uint64_t>> kPairEquation2 = {
    {32, 421504}, {64, 3339504}, {128, 26210384}, {256, 206221216}};

}  // namespace fixture
