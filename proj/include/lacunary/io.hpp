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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lacunary/fracparts.hpp"
#include "lacunary/numeric.hpp"

namespace lacunary::io {

// Decimal rendering with `digits` significant digits (17 by default,
// enough to round-trip a double).
std::string format_double(double v, int digits = 17);

// Exact value raw / 2^64 rounded to `digits` significant digits.
std::string format_phase(Phase p, int digits = 30);

// Nearest phase to a decimal string in [0, 1].
Phase parse_phase(std::string_view decimal);

// Writes via a temporary file and rename so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

// Columns: x, theta.
std::string theta_csv(const OrderedPoints& points);
OrderedPoints parse_theta_csv(std::string_view text);
OrderedPoints read_theta_csv(const std::filesystem::path& path);

// Columns: index, value.
std::string sequence_csv(std::span<const BigInt> values);

std::vector<std::string> split(std::string_view text, char sep);

}  // namespace lacunary::io
