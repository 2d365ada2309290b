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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lacunary/sequences.hpp"
#include "lacunary/test_function.hpp"

namespace lacunary {

using Json = nlohmann::json;

enum class ExperimentKind {
  spacing_poisson,
  joint_spacing,
  interval_count,
  r_k_limit,
  mean_check,
  variance_decay,
  stability,
  counting_growth,
  contrast,
  smallparts_census,
};

std::string_view to_string(ExperimentKind kind) noexcept;
ExperimentKind parse_experiment_kind(std::string_view text);

// One executed experiment. `samples` holds the per-sample results and
// `summary` is recomputable from them (plus the config).
struct ExperimentRecord {
  std::string id;
  std::string timestamp;
  ExperimentKind kind = ExperimentKind::spacing_poisson;
  std::string config_digest;
  std::uint64_t master_seed = 0;
  Json config;
  Json samples;
  Json summary;
  Json checks;  // one entry per configured threshold
  bool passed = true;

  Json to_json() const;
  static ExperimentRecord from_json(const Json& j);
};

// SHA-256 of the canonical (sorted-key, compact) serialization.
std::string config_digest(const Json& config);

// Schema check; throws schema_error with the offending key.
void validate_config(const Json& config);

// Parses sequence objects such as {"kind": "geometric", "base": 2}.
SequenceSpec parse_sequence_config(const Json& j);
TestFunction parse_test_function_config(const Json& j, std::size_t dimension);

// Runs the configured experiment. Deterministic given the config: the
// summary depends only on the config (including the master seed).
ExperimentRecord run_experiment(const Json& config);

// Appends a record (assigning its id) to a JSON-lines ledger. Existing
// lines are never rewritten.
ExperimentRecord append_record(const std::filesystem::path& ledger, ExperimentRecord record);

std::vector<ExperimentRecord> read_ledger(const std::filesystem::path& ledger);
ExperimentRecord find_record(const std::filesystem::path& ledger, std::string_view id);

struct Report {
  std::string text;
  std::vector<std::pair<std::string, std::string>> series;  // file name, CSV body
};

Report report(const ExperimentRecord& record);

// Writes every series of `r` into `dir` (atomically) and returns the paths.
std::vector<std::filesystem::path> write_report_series(const Report& r,
                                                       const std::filesystem::path& dir);

}  // namespace lacunary
