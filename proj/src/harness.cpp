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

#include "lacunary/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "lacunary/correlations.hpp"
#include "lacunary/counting.hpp"
#include "lacunary/digest.hpp"
#include "lacunary/errors.hpp"
#include "lacunary/fracparts.hpp"
#include "lacunary/io.hpp"
#include "lacunary/parallel.hpp"
#include "lacunary/poisson_model.hpp"
#include "lacunary/rng.hpp"
#include "lacunary/smallparts.hpp"
#include "lacunary/spacings.hpp"

namespace lacunary {

namespace {

constexpr ExperimentKind kKinds[] = {
    ExperimentKind::spacing_poisson, ExperimentKind::joint_spacing,
    ExperimentKind::interval_count,  ExperimentKind::r_k_limit,
    ExperimentKind::mean_check,      ExperimentKind::variance_decay,
    ExperimentKind::stability,       ExperimentKind::counting_growth,
    ExperimentKind::contrast,        ExperimentKind::smallparts_census,
};

[[noreturn]] void schema(const std::string& what) { fail(Errc::schema_error, what); }

}  // namespace

std::string_view to_string(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::spacing_poisson: return "spacing_poisson";
    case ExperimentKind::joint_spacing: return "joint_spacing";
    case ExperimentKind::interval_count: return "interval_count";
    case ExperimentKind::r_k_limit: return "r_k_limit";
    case ExperimentKind::mean_check: return "mean_check";
    case ExperimentKind::variance_decay: return "variance_decay";
    case ExperimentKind::stability: return "stability";
    case ExperimentKind::counting_growth: return "counting_growth";
    case ExperimentKind::contrast: return "contrast";
    case ExperimentKind::smallparts_census: return "smallparts_census";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  for (auto k : kKinds) {
    if (text == to_string(k)) return k;
  }
  schema("unknown experiment '" + std::string(text) + "'");
}

Json ExperimentRecord::to_json() const {
  return Json{{"id", id},
              {"timestamp", timestamp},
              {"experiment", to_string(kind)},
              {"config_digest", config_digest},
              {"master_seed", master_seed},
              {"config", config},
              {"samples", samples},
              {"summary", summary},
              {"checks", checks},
              {"passed", passed}};
}

ExperimentRecord ExperimentRecord::from_json(const Json& j) {
  try {
    ExperimentRecord r;
    r.id = j.at("id").get<std::string>();
    r.timestamp = j.at("timestamp").get<std::string>();
    r.kind = parse_experiment_kind(j.at("experiment").get<std::string>());
    r.config_digest = j.at("config_digest").get<std::string>();
    r.master_seed = j.at("master_seed").get<std::uint64_t>();
    r.config = j.at("config");
    r.samples = j.at("samples");
    r.summary = j.at("summary");
    r.checks = j.value("checks", Json::array());
    r.passed = j.value("passed", true);
    return r;
  } catch (const nlohmann::json::exception& e) {
    schema(std::string("malformed record: ") + e.what());
  }
}

std::string config_digest(const Json& config) { return sha256_hex(config.dump()); }

// ---------------------------------------------------------------------------
// Config schema.

namespace {

const std::set<std::string>& allowed_keys(ExperimentKind kind) {
  static const std::map<ExperimentKind, std::set<std::string>> keys = {
      {ExperimentKind::spacing_poisson,
       {"control", "n", "samples", "guard", "levels", "mode", "bin_width", "bin_upper"}},
      {ExperimentKind::joint_spacing, {"control", "n", "samples", "guard", "r", "mode"}},
      {ExperimentKind::interval_count, {"control", "n", "samples", "guard", "lambda", "trials"}},
      {ExperimentKind::r_k_limit, {"control", "n", "samples", "guard", "k", "f"}},
      {ExperimentKind::mean_check, {"n", "samples", "guard", "k", "f", "n_max"}},
      {ExperimentKind::variance_decay, {"control", "n_ladder", "samples", "guard", "k", "f"}},
      {ExperimentKind::stability, {"n", "samples", "guard", "k", "f", "extension", "delta"}},
      {ExperimentKind::counting_growth,
       {"n_ladder", "system", "order", "variant", "q", "fixtures"}},
      {ExperimentKind::contrast, {"n_ladder", "contrast_sequence", "q"}},
      {ExperimentKind::smallparts_census, {"n", "samples", "guard", "delta"}},
  };
  return keys.at(kind);
}

const std::set<std::string>& required_keys(ExperimentKind kind) {
  static const std::map<ExperimentKind, std::set<std::string>> keys = {
      {ExperimentKind::spacing_poisson, {"n", "samples"}},
      {ExperimentKind::joint_spacing, {"n", "samples", "r"}},
      {ExperimentKind::interval_count, {"n", "samples", "lambda", "trials"}},
      {ExperimentKind::r_k_limit, {"n", "samples", "k", "f"}},
      {ExperimentKind::mean_check, {"n", "samples", "k", "f"}},
      {ExperimentKind::variance_decay, {"n_ladder", "samples", "k", "f"}},
      {ExperimentKind::stability, {"n", "samples", "k", "f"}},
      {ExperimentKind::counting_growth, {"n_ladder", "system", "order"}},
      {ExperimentKind::contrast, {"n_ladder"}},
      {ExperimentKind::smallparts_census, {"n", "samples", "delta"}},
  };
  return keys.at(kind);
}

std::vector<unsigned> spacing_levels(const Json& config) {
  return config.value("levels", std::vector<unsigned>{1});
}

// Summary fields a threshold may refer to.
std::set<std::string> summary_keys(const Json& config, ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::spacing_poisson: {
      std::set<std::string> out;
      for (unsigned a : spacing_levels(config)) {
        for (const char* stat : {"median_ks_", "mean_ks_", "max_ks_"}) {
          out.insert(stat + std::to_string(a));
        }
      }
      return out;
    }
    case ExperimentKind::joint_spacing: return {"median_deviation", "max_deviation"};
    case ExperimentKind::interval_count: return {"median_tv", "max_tv", "mean_occupancy"};
    case ExperimentKind::r_k_limit:
      return {"mean", "integral", "mean_abs_deviation", "relative_deviation"};
    case ExperimentKind::mean_check:
      return {"mc_mean", "std_error", "b0_mean", "z_score", "identity_gap"};
    case ExperimentKind::variance_decay: return {"slope", "residual"};
    case ExperimentKind::stability: return {"max_delta", "mean_delta"};
    case ExperimentKind::counting_growth: return {"exponent", "residual", "fixture_mismatches"};
    case ExperimentKind::contrast:
      return {"exponent_contrast", "exponent_lacunary", "separation"};
    case ExperimentKind::smallparts_census:
      return {"fraction", "half_width", "max_g", "median_g"};
  }
  return {};
}

void expect_positive_integer(const Json& config, const char* key) {
  if (!config.contains(key)) return;
  const auto& v = config.at(key);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
    schema(std::string("'") + key + "' must be a positive integer");
  }
}

void expect_number(const Json& config, const char* key) {
  if (config.contains(key) && !config.at(key).is_number()) {
    schema(std::string("'") + key + "' must be a number");
  }
}

}  // namespace

void validate_config(const Json& config) {
  if (!config.is_object()) schema("config must be an object");
  if (!config.contains("experiment") || !config.at("experiment").is_string()) {
    schema("missing 'experiment'");
  }
  const ExperimentKind kind = parse_experiment_kind(config.at("experiment").get<std::string>());
  if (!config.contains("seed") || !config.at("seed").is_number_unsigned()) {
    schema("'seed' must be a non-negative integer");
  }
  const auto& allowed = allowed_keys(kind);
  static const std::set<std::string> common = {"experiment", "seed", "sequence", "thresholds",
                                               "label"};
  for (const auto& [key, value] : config.items()) {
    if (!common.contains(key) && !allowed.contains(key)) {
      schema("unknown key '" + key + "' for " + std::string(to_string(kind)));
    }
  }
  for (const auto& key : required_keys(kind)) {
    if (!config.contains(key)) schema("missing '" + key + "'");
  }
  for (const char* key : {"n", "samples", "guard", "r", "trials", "k", "order", "extension", "n_max"}) {
    expect_positive_integer(config, key);
  }
  for (const char* key : {"lambda", "delta", "q", "bin_width", "bin_upper"}) expect_number(config, key);
  if (config.contains("n_ladder")) {
    const auto& ladder = config.at("n_ladder");
    if (!ladder.is_array() || ladder.empty()) schema("'n_ladder' must be a non-empty array");
    for (const auto& v : ladder) {
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
        schema("'n_ladder' entries must be positive integers");
      }
    }
  }
  if (config.contains("control")) {
    const auto& c = config.at("control");
    if (!c.is_string() || (c != "lacunary" && c != "uniform")) {
      schema("'control' must be \"lacunary\" or \"uniform\"");
    }
  }
  if (config.contains("sequence")) parse_sequence_config(config.at("sequence"));
  if (config.contains("contrast_sequence")) parse_sequence_config(config.at("contrast_sequence"));
  if (config.contains("f")) {
    const std::size_t k = config.value("k", std::size_t{2});
    parse_test_function_config(config.at("f"), k - 1);
  }
  if (config.contains("levels")) {
    const auto& levels = config.at("levels");
    if (!levels.is_array() || levels.empty()) schema("'levels' must be a non-empty array");
    for (const auto& v : levels) {
      if (!v.is_number_unsigned() || v.get<unsigned>() < 1 || v.get<unsigned>() > poisson::kMaxLevel) {
        schema("'levels' entries must be integers in [1, 20]");
      }
    }
  }
  if (config.contains("system")) {
    if (!config.at("system").is_string()) schema("'system' must be a string");
    try {
      const auto system = parse_count_system(config.at("system").get<std::string>());
      if (system != CountSystem::homogeneous && system != CountSystem::pair_equation &&
          system != CountSystem::contrast_triple) {
        schema("counting_growth supports homogeneous, pair_equation and contrast_triple");
      }
    } catch (const Error& e) {
      if (e.code() == Errc::schema_error) throw;
      schema(e.what());
    }
  }
  if (config.contains("thresholds")) {
    const auto& th = config.at("thresholds");
    if (!th.is_object()) schema("'thresholds' must be an object");
    const auto keys = summary_keys(config, kind);
    for (const auto& [key, bound] : th.items()) {
      if (!keys.contains(key)) schema("threshold on unknown summary field '" + key + "'");
      if (!bound.is_object() || bound.size() != 1 ||
          !(bound.contains("max") || bound.contains("min")) || !bound.begin()->is_number()) {
        schema("threshold '" + key + "' must be {\"max\": x} or {\"min\": x}");
      }
    }
  }
}

namespace {

BigInt json_integer(const Json& v, const char* key) {
  if (v.is_number_integer()) return to_big(v.get<std::int64_t>());
  if (v.is_string()) {
    BigInt out;
    if (out.set_str(v.get<std::string>(), 10) == 0) return out;
  }
  schema(std::string("'") + key + "' must be an integer or a decimal string");
}

}  // namespace

SequenceSpec parse_sequence_config(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    schema("sequence needs a 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  SequenceSpec spec;
  try {
    if (kind == "geometric") {
      spec = SequenceSpec::geometric(j.value("base", 2UL));
    } else if (kind == "fibonacci_like") {
      spec = SequenceSpec::fibonacci_like(json_integer(j.value("first", Json(1)), "first"),
                                          json_integer(j.value("second", Json(2)), "second"));
    } else if (kind == "polynomial") {
      spec = SequenceSpec::polynomial(j.value("degree", 2U));
    } else if (kind == "explicit" || kind == "explicit_list") {
      if (!j.contains("values") || !j.at("values").is_array()) schema("explicit sequence needs 'values'");
      std::vector<BigInt> values;
      for (const auto& v : j.at("values")) values.push_back(json_integer(v, "values"));
      spec = SequenceSpec::explicit_list(std::move(values));
    } else {
      schema("unknown sequence kind '" + kind + "'");
    }
    if (j.contains("gap_constant")) {
      spec.gap_constant = parse_rational(j.at("gap_constant").get<std::string>());
    }
    if (j.contains("gap_start")) spec.gap_start = j.at("gap_start").get<std::size_t>();
    spec.validate();
  } catch (const nlohmann::json::exception& e) {
    schema(std::string("sequence: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::schema_error) throw;
    schema(std::string("sequence: ") + e.what());
  }
  return spec;
}

TestFunction parse_test_function_config(const Json& j, std::size_t dimension) {
  if (!j.is_object() || !j.contains("kind")) schema("test function needs a 'kind'");
  try {
    return TestFunction(parse_test_function_kind(j.at("kind").get<std::string>()), dimension,
                        j.value("rho", 1.0), j.value("amplitude", 1.0));
  } catch (const nlohmann::json::exception& e) {
    schema(std::string("test function: ") + e.what());
  } catch (const Error& e) {
    schema(std::string("test function: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Experiments.

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double mean(std::span<const double> v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double max_of(std::span<const double> v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

// Unbiased sample variance.
double variance(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

std::pair<double, double> least_squares(std::span<const double> x, std::span<const double> y) {
  const double mx = mean(x), my = mean(y);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxx == 0.0 ? 0.0 : sxy / sxx;
  return {slope, my - slope * mx};
}

struct Plan {
  const Json& config;
  std::uint64_t seed;
  SequenceSpec sequence;
  bool uniform;
  unsigned guard;

  explicit Plan(const Json& c)
      : config(c),
        seed(c.at("seed").get<std::uint64_t>()),
        sequence(c.contains("sequence") ? parse_sequence_config(c.at("sequence"))
                                        : SequenceSpec::geometric(2)),
        uniform(c.value("control", std::string("lacunary")) == "uniform"),
        guard(c.value("guard", kDefaultGuardBits)) {}

  std::size_t get(const char* key) const { return config.at(key).get<std::size_t>(); }

  std::vector<BigInt> values(std::size_t n) const { return generate(sequence, n); }

  // Phases for sample i; `values` is ignored for the uniform control.
  OrderedPoints points(std::span<const BigInt> values, std::size_t i) const {
    const std::uint64_t s = derive_seed(seed, i);
    return uniform ? uniform_points(values.size(), s) : sample_points(values, s, guard);
  }

  TestFunction f() const {
    return parse_test_function_config(config.at("f"), get("k") - 1);
  }
};

void run_spacing_poisson(const Plan& plan, ExperimentRecord& rec) {
  const std::size_t n = plan.get("n"), m = plan.get("samples");
  const auto levels = spacing_levels(plan.config);
  const auto mode = parse_spacing_mode(plan.config.value("mode", std::string("circular")));
  const double width = plan.config.value("bin_width", 0.1);
  const double upper = plan.config.value("bin_upper", 10.0);
  const auto values = plan.uniform ? std::vector<BigInt>(n) : plan.values(n);

  const auto rows = parallel_map(m, [&](std::size_t i) {
    const auto points = plan.points(values, i);
    Json row{{"index", i}, {"seed", derive_seed(plan.seed, i)}};
    for (std::size_t l = 0; l < levels.size(); ++l) {
      const unsigned a = levels[l];
      const auto sample = normalized_spacings(points, a, mode);
      row["ks_" + std::to_string(a)] =
          ks_distance(sample.deltas, [a](double s) { return poisson::level_spacing_cdf(a, s); });
      if (l == 0) {
        const auto h = spacing_histogram(sample.deltas, width, upper);
        row["histogram"] = h.counts;
        row["overflow"] = h.overflow;
      }
    }
    return row;
  });
  rec.samples = rows;
  for (unsigned a : levels) {
    std::vector<double> ks;
    for (const auto& r : rows) ks.push_back(r.at("ks_" + std::to_string(a)).get<double>());
    const std::string s = std::to_string(a);
    rec.summary["median_ks_" + s] = median(ks);
    rec.summary["mean_ks_" + s] = mean(ks);
    rec.summary["max_ks_" + s] = max_of(ks);
  }
  rec.summary["level"] = levels.front();
  rec.summary["bin_width"] = width;
  rec.summary["bin_upper"] = upper;
}

void run_joint_spacing(const Plan& plan, ExperimentRecord& rec) {
  const std::size_t n = plan.get("n"), m = plan.get("samples"), r = plan.get("r");
  require(r <= 4, Errc::schema_error, "joint_spacing supports r <= 4");
  const auto mode = parse_spacing_mode(plan.config.value("mode", std::string("circular")));
  const auto values = plan.uniform ? std::vector<BigInt>(n) : plan.values(n);
  static constexpr double grid[] = {0.25, 0.5, 1.0, 2.0, 4.0};
  const auto rows = parallel_map(m, [&](std::size_t i) {
    const auto windows = joint_spacings(plan.points(values, i), r, mode);
    // Largest gap between the empirical and product cdf over grid^r.
    double worst = 0.0;
    std::vector<std::size_t> idx(r, 0);
    std::vector<double> s(r);
    while (true) {
      for (std::size_t d = 0; d < r; ++d) s[d] = grid[idx[d]];
      std::size_t below = 0;
      for (const auto& w : windows) {
        bool in = true;
        for (std::size_t d = 0; d < r && in; ++d) in = w[d] <= s[d];
        below += in ? 1 : 0;
      }
      const double emp = static_cast<double>(below) / static_cast<double>(windows.size());
      worst = std::max(worst, std::abs(emp - poisson::joint_spacing_cdf(s)));
      std::size_t d = 0;
      while (d < r && idx[d] == std::size(grid) - 1) idx[d++] = 0;
      if (d == r) break;
      ++idx[d];
    }
    return Json{{"index", i}, {"seed", derive_seed(plan.seed, i)}, {"deviation", worst}};
  });
  rec.samples = rows;
  std::vector<double> dev;
  for (const auto& row : rows) dev.push_back(row.at("deviation").get<double>());
  rec.summary["median_deviation"] = median(dev);
  rec.summary["max_deviation"] = max_of(dev);
}

void run_interval_count(const Plan& plan, ExperimentRecord& rec) {
  const std::size_t n = plan.get("n"), m = plan.get("samples"), trials = plan.get("trials");
  const double lambda = plan.config.at("lambda").get<double>();
  const auto values = plan.uniform ? std::vector<BigInt>(n) : plan.values(n);
  const auto rows = parallel_map(m, [&](std::size_t i) {
    const auto points = plan.points(values, i);
    const auto h = interval_counts(points, lambda, trials, derive_seed(derive_seed(plan.seed, i), 1));
    // Total variation against Poisson(lambda), including the unseen tail.
    double tv = 0.0, covered = 0.0;
    for (std::size_t k = 0; k < h.counts.size(); ++k) {
      const double p = poisson::interval_count_pmf(lambda, static_cast<unsigned>(k));
      tv += std::abs(h.frequency(k) - p);
      covered += p;
    }
    tv = 0.5 * (tv + std::max(0.0, 1.0 - covered));
    return Json{{"index", i}, {"seed", derive_seed(plan.seed, i)}, {"counts", h.counts},
                {"tv", tv}, {"mean", h.mean()}};
  });
  rec.samples = rows;
  std::vector<double> tv, occ;
  for (const auto& row : rows) {
    tv.push_back(row.at("tv").get<double>());
    occ.push_back(row.at("mean").get<double>());
  }
  rec.summary["median_tv"] = median(tv);
  rec.summary["max_tv"] = max_of(tv);
  rec.summary["mean_occupancy"] = mean(occ);
  rec.summary["lambda"] = lambda;
}

std::vector<double> correlation_samples(const Plan& plan, std::size_t n, std::size_t m,
                                        std::size_t offset = 0) {
  const auto f = plan.f();
  const unsigned k = static_cast<unsigned>(plan.get("k"));
  const auto values = plan.uniform ? std::vector<BigInt>(n) : plan.values(n);
  return parallel_map(m, [&](std::size_t i) {
    return correlation_direct(plan.points(values, offset + i), k, f).value;
  });
}

Json value_rows(const Plan& plan, std::span<const double> values, std::size_t offset = 0) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < values.size(); ++i) {
    rows.push_back({{"index", offset + i}, {"seed", derive_seed(plan.seed, offset + i)},
                    {"value", values[i]}});
  }
  return rows;
}

void run_r_k_limit(const Plan& plan, ExperimentRecord& rec) {
  const std::size_t n = plan.get("n"), m = plan.get("samples");
  const auto r = correlation_samples(plan, n, m);
  rec.samples = value_rows(plan, r);
  const double integral = plan.f().integral();
  std::vector<double> dev;
  for (double v : r) dev.push_back(std::abs(v - integral));
  rec.summary["mean"] = mean(r);
  rec.summary["integral"] = integral;
  rec.summary["mean_abs_deviation"] = mean(dev);
  rec.summary["relative_deviation"] = mean(dev) / integral;
}

void run_mean_check(const Plan& plan, ExperimentRecord& rec) {
  const std::size_t n = plan.get("n"), m = plan.get("samples");
  const unsigned k = static_cast<unsigned>(plan.get("k"));
  const auto r = correlation_samples(plan, n, m);
  rec.samples = value_rows(plan, r);
  const auto f = plan.f();
  const auto values = plan.values(n);
  std::optional<std::int64_t> n_max;
  if (plan.config.contains("n_max")) n_max = plan.config.at("n_max").get<std::int64_t>();
  const double b0 = mean_via_b0(k, f, values, n_max);
  const double mc = mean(r);
  const double se = std::sqrt(variance(r) / static_cast<double>(m));
  const double nn = static_cast<double>(n);
  // The n = 0 term alone; for k = 2 and distinct values it is all of b(0, N).
  double trivial = f.integral();
  for (unsigned i = 1; i < k; ++i) trivial *= 1.0 - i / nn;
  rec.summary["mc_mean"] = mc;
  rec.summary["std_error"] = se;
  rec.summary["b0_mean"] = b0;
  rec.summary["z_score"] = se > 0 ? std::abs(mc - b0) / se : 0.0;
  rec.summary["identity_gap"] = std::abs(b0 - trivial);
}

void run_variance_decay(const Plan& plan, ExperimentRecord& rec) {
  const auto ladder = plan.config.at("n_ladder").get<std::vector<std::size_t>>();
  const std::size_t m = plan.get("samples");
  Json rows = Json::array();
  std::vector<double> logn, logv, vars;
  for (std::size_t idx = 0; idx < ladder.size(); ++idx) {
    const std::size_t n = ladder[idx];
    // Every rung draws fresh alphas.
    const auto r = correlation_samples(plan, n, m, idx * m);
    const double v = variance(r);
    rows.push_back({{"n", n}, {"values", r}, {"variance", v}});
    vars.push_back(v);
    logn.push_back(std::log(static_cast<double>(n)));
    logv.push_back(std::log(v));
  }
  rec.samples = rows;
  const auto [slope, intercept] = least_squares(logn, logv);
  double rss = 0.0;
  for (std::size_t i = 0; i < logn.size(); ++i) {
    const double e = logv[i] - intercept - slope * logn[i];
    rss += e * e;
  }
  rec.summary["slope"] = slope;
  rec.summary["intercept"] = intercept;
  rec.summary["residual"] = std::sqrt(rss / static_cast<double>(logn.size()));
  rec.summary["variances"] = vars;
}

void run_stability(const Plan& plan, ExperimentRecord& rec) {
  const std::size_t n = plan.get("n"), m = plan.get("samples");
  const unsigned k = static_cast<unsigned>(plan.get("k"));
  const double delta = plan.config.value("delta", 0.3);
  const std::size_t extension = plan.config.value(
      "extension", static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), 1.0 - delta))));
  const auto f = plan.f();
  const auto values = plan.values(n + extension);
  const auto d = parallel_map(m, [&](std::size_t i) {
    const auto longer = sample_points(values, derive_seed(plan.seed, i), plan.guard);
    return stability_delta(longer.head(n), longer, k, f, delta);
  });
  rec.samples = value_rows(plan, d);
  rec.summary["max_delta"] = max_of(d);
  rec.summary["mean_delta"] = mean(d);
  rec.summary["extension"] = extension;
}

CountResult run_count(CountSystem system, unsigned order, HomogeneousVariant variant,
                      std::span<const BigInt> values) {
  switch (system) {
    case CountSystem::homogeneous: return count_homogeneous(order, values, variant);
    case CountSystem::pair_equation: return count_pair_equation(order, values);
    case CountSystem::contrast_triple: return count_contrast_triple(values);
    default: schema("unsupported counting system");
  }
}

double log_model(double n, const GrowthFit& fit, double q) {
  return fit.intercept + fit.exponent * std::log(n) + q * std::log(std::log(n));
}

void run_counting_growth(const Plan& plan, ExperimentRecord& rec) {
  const auto ladder = plan.config.at("n_ladder").get<std::vector<std::size_t>>();
  const auto system = parse_count_system(plan.config.at("system").get<std::string>());
  const unsigned order = static_cast<unsigned>(plan.get("order"));
  const auto variant = parse_homogeneous_variant(plan.config.value("variant", std::string("distinct")));
  const double q = plan.config.value("q", 0.0);
  const Json fixtures = plan.config.value("fixtures", Json::object());
  Json rows = Json::array();
  std::vector<GrowthPoint> points;
  int mismatches = 0;
  for (std::size_t n : ladder) {
    const auto result = run_count(system, order, variant, plan.values(n));
    const std::string count = result.total.get_str();
    Json row{{"n", n}, {"count", count}};
    if (result.degenerate) row["degenerate"] = result.degenerate->get_str();
    if (const auto key = std::to_string(n); fixtures.contains(key)) {
      const bool match = fixtures.at(key).get<std::string>() == count;
      row["fixture_match"] = match;
      mismatches += match ? 0 : 1;
    }
    rows.push_back(row);
    points.push_back({static_cast<double>(n), result.total.get_d()});
  }
  rec.samples = rows;
  const auto fit = fit_growth(points, q);
  rec.summary["exponent"] = fit.exponent;
  rec.summary["intercept"] = fit.intercept;
  rec.summary["residual"] = fit.residual;
  rec.summary["degenerate_fit"] = fit.degenerate;
  rec.summary["q"] = q;
  rec.summary["fixture_mismatches"] = mismatches;
}

void run_contrast(const Plan& plan, ExperimentRecord& rec) {
  const auto ladder = plan.config.at("n_ladder").get<std::vector<std::size_t>>();
  const SequenceSpec other = plan.config.contains("contrast_sequence")
                                 ? parse_sequence_config(plan.config.at("contrast_sequence"))
                                 : SequenceSpec::polynomial(2);
  const double q = plan.config.value("q", 0.0);
  Json rows = Json::array();
  std::vector<GrowthPoint> lac, con;
  for (std::size_t n : ladder) {
    const auto a = count_contrast_triple(generate(other, n)).total;
    const auto b = count_contrast_triple(plan.values(n)).total;
    rows.push_back({{"n", n}, {"count_contrast", a.get_str()}, {"count_lacunary", b.get_str()}});
    con.push_back({static_cast<double>(n), a.get_d()});
    lac.push_back({static_cast<double>(n), b.get_d()});
  }
  rec.samples = rows;
  const auto fc = fit_growth(con, q), fl = fit_growth(lac, q);
  rec.summary["exponent_contrast"] = fc.exponent;
  rec.summary["exponent_lacunary"] = fl.exponent;
  rec.summary["intercept_contrast"] = fc.intercept;
  rec.summary["intercept_lacunary"] = fl.intercept;
  rec.summary["separation"] = fc.exponent - fl.exponent;
  rec.summary["q"] = q;
}

void run_smallparts_census(const Plan& plan, ExperimentRecord& rec) {
  const std::size_t n = plan.get("n"), m = plan.get("samples");
  const double delta = plan.config.at("delta").get<double>();
  const auto census = exceptional_fraction(delta, plan.values(n), m, plan.seed, plan.guard);
  Json rows = Json::array();
  std::vector<double> g;
  for (std::size_t i = 0; i < census.g_max_values.size(); ++i) {
    rows.push_back({{"index", i}, {"seed", derive_seed(plan.seed, i)}, {"g_max", census.g_max_values[i]}});
    g.push_back(static_cast<double>(census.g_max_values[i]));
  }
  rec.samples = rows;
  rec.summary["fraction"] = census.fraction;
  rec.summary["half_width"] = census.half_width;
  rec.summary["threshold"] = census.threshold;
  rec.summary["max_g"] = max_of(g);
  rec.summary["median_g"] = median(g);
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ExperimentRecord run_experiment(const Json& config) {
  validate_config(config);
  ExperimentRecord rec;
  rec.kind = parse_experiment_kind(config.at("experiment").get<std::string>());
  rec.config = config;
  rec.config_digest = config_digest(config);
  rec.master_seed = config.at("seed").get<std::uint64_t>();
  rec.timestamp = utc_now();
  rec.summary = Json::object();
  const Plan plan(config);
  switch (rec.kind) {
    case ExperimentKind::spacing_poisson: run_spacing_poisson(plan, rec); break;
    case ExperimentKind::joint_spacing: run_joint_spacing(plan, rec); break;
    case ExperimentKind::interval_count: run_interval_count(plan, rec); break;
    case ExperimentKind::r_k_limit: run_r_k_limit(plan, rec); break;
    case ExperimentKind::mean_check: run_mean_check(plan, rec); break;
    case ExperimentKind::variance_decay: run_variance_decay(plan, rec); break;
    case ExperimentKind::stability: run_stability(plan, rec); break;
    case ExperimentKind::counting_growth: run_counting_growth(plan, rec); break;
    case ExperimentKind::contrast: run_contrast(plan, rec); break;
    case ExperimentKind::smallparts_census: run_smallparts_census(plan, rec); break;
  }
  rec.checks = Json::array();
  rec.passed = true;
  const Json thresholds = config.value("thresholds", Json::object());
  for (const auto& [key, bound] : thresholds.items()) {
    const double observed = rec.summary.at(key).get<double>();
    const bool is_max = bound.contains("max");
    const double limit = is_max ? bound.at("max").get<double>() : bound.at("min").get<double>();
    const bool pass = is_max ? observed <= limit : observed >= limit;
    rec.checks.push_back({{"field", key}, {is_max ? "max" : "min", limit}, {"observed", observed},
                          {"pass", pass}});
    rec.passed = rec.passed && pass;
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Ledger.

std::vector<ExperimentRecord> read_ledger(const std::filesystem::path& ledger) {
  std::vector<ExperimentRecord> out;
  if (!std::filesystem::exists(ledger)) return out;
  std::ifstream in(ledger);
  require(static_cast<bool>(in), Errc::io_error, "cannot read " + ledger.string());
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      schema(ledger.string() + ":" + std::to_string(number) + ": " + e.what());
    }
    out.push_back(ExperimentRecord::from_json(j));
  }
  return out;
}

ExperimentRecord append_record(const std::filesystem::path& ledger, ExperimentRecord record) {
  const std::size_t index = read_ledger(ledger).size();
  record.id = record.config_digest.substr(0, 12) + "-" + std::to_string(index);
  if (ledger.has_parent_path()) std::filesystem::create_directories(ledger.parent_path());
  std::ofstream out(ledger, std::ios::app);
  require(static_cast<bool>(out), Errc::io_error, "cannot append to " + ledger.string());
  out << record.to_json().dump() << '\n';
  out.flush();
  require(static_cast<bool>(out), Errc::io_error, "short write to " + ledger.string());
  return record;
}

ExperimentRecord find_record(const std::filesystem::path& ledger, std::string_view id) {
  for (auto& r : read_ledger(ledger)) {
    if (r.id == id) return r;
  }
  fail(Errc::missing_record, "no record '" + std::string(id) + "' in " + ledger.string());
}

// ---------------------------------------------------------------------------
// Reports.

namespace {

using io::format_double;

std::string describe_check(const Json& check) {
  const bool is_max = check.contains("max");
  std::ostringstream s;
  s << "  " << check.at("field").get<std::string>() << " = "
    << format_double(check.at("observed").get<double>(), 6) << (is_max ? " <= " : " >= ")
    << format_double(check.at(is_max ? "max" : "min").get<double>(), 6) << ": "
    << (check.at("pass").get<bool>() ? "pass" : "FAIL") << '\n';
  return s.str();
}

std::string headline(const ExperimentRecord& r) {
  const Json& s = r.summary;
  auto num = [&](const char* key) { return format_double(s.at(key).get<double>(), 6); };
  switch (r.kind) {
    case ExperimentKind::spacing_poisson: {
      const std::string a = std::to_string(s.at("level").get<unsigned>());
      return "median Kolmogorov-Smirnov distance of level-" + a +
             " spacings to the Poisson-model cdf: " + format_double(s.at("median_ks_" + a).get<double>(), 6);
    }
    case ExperimentKind::joint_spacing:
      return "median sup-gap between joint spacing cdf and product of exponentials: " +
             num("median_deviation");
    case ExperimentKind::interval_count:
      return "median total variation between arc occupancy and Poisson(" + num("lambda") + "): " +
             num("median_tv");
    case ExperimentKind::r_k_limit:
      return "mean correlation sum " + num("mean") + " against the integral of f " + num("integral") +
             " (mean relative deviation " + num("relative_deviation") + ")";
    case ExperimentKind::mean_check:
      return "Monte Carlo mean " + num("mc_mean") + " +- " + num("std_error") +
             " against b(0,N)/N^k = " + num("b0_mean") + " (z = " + num("z_score") + ")";
    case ExperimentKind::variance_decay:
      return "log-log slope of the variance of the correlation sum in N: " + num("slope");
    case ExperimentKind::stability:
      return "largest |R_k(f,N+K) - R_k(f,N)| over samples: " + num("max_delta");
    case ExperimentKind::counting_growth:
      return "fitted growth exponent p in count ~ A N^p (log N)^" + num("q") + ": " + num("exponent");
    case ExperimentKind::contrast:
      return "growth exponents: contrast sequence " + num("exponent_contrast") + ", lacunary " +
             num("exponent_lacunary") + " (separation " + num("separation") + ")";
    case ExperimentKind::smallparts_census:
      return "fraction of alphas with G(N, alpha) > N^delta: " + num("fraction") + " +- " +
             num("half_width");
  }
  return {};
}

std::string csv(const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i];
    out += '\n';
  }
  return out;
}

std::string sample_values_csv(const ExperimentRecord& r, const char* field) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : r.samples) {
    rows.push_back({std::to_string(s.at("index").get<std::size_t>()),
                    format_double(s.at(field).get<double>())});
  }
  return csv({"sample", field}, rows);
}

}  // namespace

Report report(const ExperimentRecord& r) {
  Report out;
  std::ostringstream text;
  text << r.id << "  " << to_string(r.kind) << "  seed " << r.master_seed << "  " << r.timestamp
       << '\n'
       << "  config " << r.config_digest.substr(0, 16) << '\n'
       << "  " << headline(r) << '\n';
  for (const auto& c : r.checks) text << describe_check(c);
  text << "  overall: " << (r.passed ? "pass" : "FAIL") << '\n';
  out.text = text.str();

  const Json& s = r.summary;
  switch (r.kind) {
    case ExperimentKind::spacing_poisson: {
      const double width = s.at("bin_width").get<double>();
      const unsigned a = s.at("level").get<unsigned>();
      std::vector<std::uint64_t> pooled;
      std::uint64_t total = 0;
      for (const auto& row : r.samples) {
        const auto h = row.at("histogram").get<std::vector<std::uint64_t>>();
        pooled.resize(std::max(pooled.size(), h.size()), 0);
        for (std::size_t i = 0; i < h.size(); ++i) pooled[i] += h[i];
        total += std::accumulate(h.begin(), h.end(), std::uint64_t{0}) +
                 row.at("overflow").get<std::uint64_t>();
      }
      std::vector<std::vector<std::string>> rows;
      for (std::size_t i = 0; i < pooled.size(); ++i) {
        const double mid = (static_cast<double>(i) + 0.5) * width;
        const double density = total == 0 ? 0.0 : static_cast<double>(pooled[i]) / (static_cast<double>(total) * width);
        rows.push_back({format_double(mid), format_double(density),
                        format_double(poisson::level_spacing_pdf(a, mid))});
      }
      out.series.emplace_back("spacing_density.csv",
                              csv({"s", "empirical_density", a == 1 ? "exp(-s)" : "poisson_density"}, rows));
      break;
    }
    case ExperimentKind::joint_spacing:
      out.series.emplace_back("joint_deviation.csv", sample_values_csv(r, "deviation"));
      break;
    case ExperimentKind::interval_count: {
      const double lambda = s.at("lambda").get<double>();
      std::vector<double> pooled;
      for (const auto& row : r.samples) {
        const auto c = row.at("counts").get<std::vector<std::uint64_t>>();
        pooled.resize(std::max(pooled.size(), c.size()), 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) pooled[i] += static_cast<double>(c[i]);
      }
      const double total = std::accumulate(pooled.begin(), pooled.end(), 0.0);
      std::vector<std::vector<std::string>> rows;
      for (std::size_t k = 0; k < pooled.size(); ++k) {
        rows.push_back({std::to_string(k), format_double(pooled[k] / total),
                        format_double(poisson::interval_count_pmf(lambda, static_cast<unsigned>(k)))});
      }
      out.series.emplace_back("occupancy.csv", csv({"k", "empirical", "poisson"}, rows));
      break;
    }
    case ExperimentKind::r_k_limit:
    case ExperimentKind::mean_check:
    case ExperimentKind::stability:
      out.series.emplace_back("samples.csv", sample_values_csv(r, "value"));
      break;
    case ExperimentKind::variance_decay: {
      const double slope = s.at("slope").get<double>(), icpt = s.at("intercept").get<double>();
      std::vector<std::vector<std::string>> rows;
      for (const auto& row : r.samples) {
        const double n = row.at("n").get<double>();
        rows.push_back({std::to_string(row.at("n").get<std::size_t>()),
                        format_double(row.at("variance").get<double>()),
                        format_double(std::exp(icpt + slope * std::log(n)))});
      }
      out.series.emplace_back("variance.csv", csv({"N", "variance", "fitted"}, rows));
      break;
    }
    case ExperimentKind::counting_growth: {
      GrowthFit fit;
      fit.exponent = s.at("exponent").get<double>();
      fit.intercept = s.at("intercept").get<double>();
      const double q = s.at("q").get<double>();
      std::vector<std::vector<std::string>> rows;
      for (const auto& row : r.samples) {
        const double n = row.at("n").get<double>();
        rows.push_back({std::to_string(row.at("n").get<std::size_t>()), row.at("count").get<std::string>(),
                        format_double(std::exp(log_model(n, fit, q)))});
      }
      out.series.emplace_back("growth.csv", csv({"N", "count", "model"}, rows));
      break;
    }
    case ExperimentKind::contrast: {
      std::vector<std::vector<std::string>> rows;
      for (const auto& row : r.samples) {
        rows.push_back({std::to_string(row.at("n").get<std::size_t>()),
                        row.at("count_contrast").get<std::string>(),
                        row.at("count_lacunary").get<std::string>()});
      }
      out.series.emplace_back("contrast.csv", csv({"N", "count_contrast", "count_lacunary"}, rows));
      break;
    }
    case ExperimentKind::smallparts_census: {
      std::vector<std::vector<std::string>> rows;
      for (const auto& row : r.samples) {
        rows.push_back({std::to_string(row.at("index").get<std::size_t>()),
                        std::to_string(row.at("g_max").get<std::size_t>())});
      }
      out.series.emplace_back("gmax.csv", csv({"sample", "g_max"}, rows));
      break;
    }
  }
  return out;
}

std::vector<std::filesystem::path> write_report_series(const Report& r,
                                                       const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> out;
  for (const auto& [name, body] : r.series) {
    out.push_back(dir / name);
    io::write_file_atomic(out.back(), body);
  }
  return out;
}

}  // namespace lacunary
