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

#include <filesystem>

#include "lacunary/errors.hpp"
#include "lacunary/harness.hpp"
#include "lacunary/io.hpp"
#include "lacunary/parallel.hpp"
#include "oracles.hpp"

namespace lacunary {
namespace {

Json spacing_config() {
  return Json::parse(R"({
    "experiment": "spacing_poisson", "seed": 7,
    "sequence": {"kind": "geometric", "base": 2},
    "n": 300, "samples": 3, "levels": [1, 2],
    "thresholds": {"median_ks_1": {"max": 0.5}, "max_ks_2": {"max": 0.0}}
  })");
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::io_error;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("lacunary_harness_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

TEST(Config, ValidatesKeys) {
  EXPECT_NO_THROW(validate_config(spacing_config()));
  auto bad = spacing_config();
  bad["bins"] = 3;
  EXPECT_EQ(code_of([&] { validate_config(bad); }), Errc::schema_error);
  bad = spacing_config();
  bad.erase("samples");
  EXPECT_EQ(code_of([&] { validate_config(bad); }), Errc::schema_error);
  bad = spacing_config();
  bad["thresholds"]["median_ks_3"] = {{"max", 0.1}};
  EXPECT_EQ(code_of([&] { validate_config(bad); }), Errc::schema_error);
  bad = spacing_config();
  bad["n"] = -4;
  EXPECT_EQ(code_of([&] { validate_config(bad); }), Errc::schema_error);
  bad = spacing_config();
  bad["sequence"] = {{"kind", "geometric"}, {"base", 1}};
  EXPECT_THROW(validate_config(bad), Error);
  bad = spacing_config();
  bad["experiment"] = "nonsense";
  EXPECT_THROW(validate_config(bad), Error);
}

TEST(Config, DigestIgnoresKeyOrder) {
  const auto a = Json::parse(R"({"seed": 1, "experiment": "stability"})");
  const auto b = Json::parse(R"({"experiment": "stability", "seed": 1})");
  EXPECT_EQ(config_digest(a), config_digest(b));
  EXPECT_NE(config_digest(a), config_digest(spacing_config()));
  EXPECT_EQ(config_digest(a).size(), 64u);
}

TEST(Config, SequenceObjects) {
  const auto fib = parse_sequence_config(Json::parse(R"({"kind": "fibonacci_like", "first": 1, "second": 2})"));
  EXPECT_EQ(generate(fib, 5).back(), 8);
  const auto ex = parse_sequence_config(
      Json::parse(R"({"kind": "explicit", "values": [2, 5, 11], "gap_constant": "2", "gap_start": 1})"));
  EXPECT_EQ(generate(ex, 3).back(), 11);
  ASSERT_TRUE(ex.gap_constant);
  EXPECT_EQ(*ex.gap_constant, 2);
  const auto f = parse_test_function_config(Json::parse(R"({"kind": "triangle", "rho": 2})"), 2);
  EXPECT_EQ(f.kind(), TestFunctionKind::triangle);
  EXPECT_EQ(f.dimension(), 2u);
  EXPECT_EQ(f.radius(), 2.0);
}

TEST(Run, DeterministicAndChecked) {
  const auto a = run_experiment(spacing_config());
  const auto b = run_experiment(spacing_config());
  EXPECT_EQ(a.summary, b.summary);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_EQ(a.config_digest, config_digest(spacing_config()));
  ASSERT_EQ(a.checks.size(), 2u);
  // max_ks_2 <= 0 cannot hold.
  EXPECT_FALSE(a.passed);
  EXPECT_GE(a.summary.at("max_ks_1").get<double>(), a.summary.at("median_ks_1").get<double>());
}

TEST(Run, WorkerCountDoesNotChangeSummary) {
  auto c = Json::parse(R"({
    "experiment": "r_k_limit", "seed": 3, "n": 500, "samples": 4, "k": 2,
    "f": {"kind": "box", "rho": 1}
  })");
  setenv(kThreadsEnv, "1", 1);
  const auto one = run_experiment(c);
  setenv(kThreadsEnv, "4", 1);
  const auto four = run_experiment(c);
  unsetenv(kThreadsEnv);
  EXPECT_EQ(one.summary, four.summary);
}

TEST(Run, MeanCheckIdentity) {
  const auto c = Json::parse(R"({
    "experiment": "mean_check", "seed": 1, "n": 32, "samples": 50, "k": 2,
    "f": {"kind": "triangle", "rho": 1}
  })");
  const auto r = run_experiment(c);
  EXPECT_LT(r.summary.at("identity_gap").get<double>(), 1e-9);
  EXPECT_NEAR(r.summary.at("b0_mean").get<double>(), 31.0 / 32.0, 1e-9);
}

TEST(Run, CountingFixtures) {
  auto c = Json::parse(R"({
    "experiment": "counting_growth", "seed": 0, "n_ladder": [3, 4, 5, 6],
    "sequence": {"kind": "geometric", "base": 2},
    "system": "pair_equation", "order": 2, "fixtures": {}
  })");
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto v = generate(SequenceSpec::geometric(2), n);
    c["fixtures"][std::to_string(n)] = std::to_string(oracle::pair_equation(2, v));
  }
  EXPECT_EQ(run_experiment(c).summary.at("fixture_mismatches").get<int>(), 0);
  c["fixtures"]["5"] = "1";
  EXPECT_EQ(run_experiment(c).summary.at("fixture_mismatches").get<int>(), 1);
}

TEST(Ledger, AppendFindReport) {
  TempDir dir;
  const auto ledger = dir.path / "runs.jsonl";
  const auto first = append_record(ledger, run_experiment(spacing_config()));
  const auto second = append_record(ledger, run_experiment(spacing_config()));
  EXPECT_NE(first.id, second.id);
  EXPECT_EQ(first.id.substr(0, 12), first.config_digest.substr(0, 12));
  const auto all = read_ledger(ledger);
  ASSERT_EQ(all.size(), 2u);
  const auto again = find_record(ledger, second.id);
  EXPECT_EQ(again.summary, second.summary);
  EXPECT_EQ(again.to_json(), second.to_json());
  EXPECT_EQ(code_of([&] { find_record(ledger, "nope"); }), Errc::missing_record);

  const auto rep = report(again);
  EXPECT_NE(rep.text.find("median_ks_1"), std::string::npos);
  ASSERT_FALSE(rep.series.empty());
  EXPECT_EQ(rep.series.front().first, "spacing_density.csv");
  const auto paths = write_report_series(rep, dir.path / "series");
  for (const auto& p : paths) EXPECT_TRUE(std::filesystem::exists(p));
  const auto body = io::read_file(paths.front());
  EXPECT_EQ(body.substr(0, body.find('\n')), "s,empirical_density,exp(-s)");
}

TEST(Ledger, RecordRoundTrip) {
  const auto r = run_experiment(spacing_config());
  const auto back = ExperimentRecord::from_json(r.to_json());
  EXPECT_EQ(back.to_json(), r.to_json());
  EXPECT_EQ(back.kind, ExperimentKind::spacing_poisson);
}

}  // namespace
}  // namespace lacunary
