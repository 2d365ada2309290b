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

// Command-line front end for the lacunary library.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lacunary/correlations.hpp"
#include "lacunary/counting.hpp"
#include "lacunary/errors.hpp"
#include "lacunary/fracparts.hpp"
#include "lacunary/harness.hpp"
#include "lacunary/io.hpp"
#include "lacunary/poisson_model.hpp"
#include "lacunary/sequences.hpp"
#include "lacunary/smallparts.hpp"
#include "lacunary/spacings.hpp"

namespace {

using lacunary::BigInt;
using lacunary::Json;
namespace io = lacunary::io;

struct SequenceOptions {
  std::string kind = "geometric";
  unsigned long base = 2;
  std::string first = "1";
  std::string second = "2";
  unsigned degree = 2;
  std::string values;

  void add(CLI::App* app) {
    app->add_option("--kind", kind, "geometric | fibonacci_like | polynomial | explicit")
        ->capture_default_str();
    app->add_option("--base", base, "geometric base")->capture_default_str();
    app->add_option("--first", first, "fibonacci-like a(1)");
    app->add_option("--second", second, "fibonacci-like a(2)");
    app->add_option("--degree", degree, "polynomial degree");
    app->add_option("--values", values, "explicit values, comma separated");
  }

  lacunary::SequenceSpec spec() const {
    Json j{{"kind", kind}, {"base", base}, {"first", first}, {"second", second}, {"degree", degree}};
    if (!values.empty()) {
      Json list = Json::array();
      for (const auto& v : io::split(values, ',')) list.push_back(v);
      j["values"] = list;
    }
    return lacunary::parse_sequence_config(j);
  }
};

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    io::write_file_atomic(out, text);
  }
}

std::vector<BigInt> parse_integer_list(const std::string& text) {
  std::vector<BigInt> out;
  for (const auto& v : io::split(text, ',')) {
    BigInt x;
    if (x.set_str(v, 10) != 0) lacunary::fail(lacunary::Errc::invalid_argument, "bad integer '" + v + "'");
    out.push_back(x);
  }
  return out;
}

// a:b:h -> a, a+h, ..., <= b
std::vector<double> parse_grid(const std::string& text) {
  const auto parts = io::split(text, ':');
  lacunary::require(parts.size() == 3, lacunary::Errc::invalid_argument, "grid must be a:b:h");
  const double a = std::stod(parts[0]), b = std::stod(parts[1]), h = std::stod(parts[2]);
  lacunary::require(h > 0 && b >= a, lacunary::Errc::invalid_argument, "grid needs h > 0, b >= a");
  std::vector<double> out;
  for (std::size_t i = 0; a + static_cast<double>(i) * h <= b + h * 1e-9; ++i) {
    out.push_back(a + static_cast<double>(i) * h);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional parts of lacunary sequences: spacings, correlations and counts"};
  app.require_subcommand(1);

  // gen-sequence
  SequenceOptions gen_seq;
  std::size_t gen_n = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-sequence", "write a(1..N) as CSV");
  gen_seq.add(gen);
  gen->add_option("--n", gen_n, "number of terms")->required();
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // fracparts
  SequenceOptions fp_seq;
  std::size_t fp_n = 0;
  std::uint64_t fp_seed = 1;
  unsigned fp_guard = lacunary::kDefaultGuardBits;
  std::string fp_rational, fp_out;
  auto* fp = app.add_subcommand("fracparts", "theta_x = {alpha a(x)} for a seeded or rational alpha");
  fp_seq.add(fp);
  fp->add_option("--n", fp_n, "number of terms")->required();
  fp->add_option("--seed", fp_seed, "alpha seed")->capture_default_str();
  fp->add_option("--guard", fp_guard, "guard bits")->capture_default_str();
  fp->add_option("--rational", fp_rational, "use alpha = p/q instead of a seeded alpha");
  fp->add_option("--out", fp_out, "output CSV (default stdout)");

  // spacings
  std::string sp_theta, sp_mode = "circular", sp_out, sp_bins;
  std::size_t sp_level = 1;
  double sp_width = 0.1, sp_upper = 10.0;
  auto* sp = app.add_subcommand("spacings", "normalized level spacings and their KS distance");
  sp->add_option("--theta", sp_theta, "theta CSV")->required();
  sp->add_option("--level", sp_level, "neighbour level a")->capture_default_str();
  sp->add_option("--mode", sp_mode, "circular | linear")->capture_default_str();
  sp->add_option("--bin-width", sp_width, "histogram bin width")->capture_default_str();
  sp->add_option("--bin-upper", sp_upper, "histogram upper edge")->capture_default_str();
  sp->add_option("--bins", sp_bins, "width:upper, overrides --bin-width and --bin-upper");
  sp->add_option("--out", sp_out, "*.csv gets the spacings (summary JSON to stdout); else JSON");

  // intervals
  std::string iv_theta, iv_out;
  double iv_lambda = 1.0;
  std::size_t iv_trials = 10000;
  std::uint64_t iv_seed = 1;
  auto* iv = app.add_subcommand("intervals", "occupancy of random arcs of length lambda/N");
  iv_theta = "theta.csv";
  iv->add_option("--theta", iv_theta, "theta CSV")->capture_default_str();
  iv->add_option("--lambda", iv_lambda, "arc length times N")->capture_default_str();
  iv->add_option("--trials", iv_trials, "number of arcs")->capture_default_str();
  iv->add_option("--seed", iv_seed, "arc seed")->capture_default_str();
  iv->add_option("--out", iv_out, "output JSON (default stdout)");

  // poisson
  std::string ps_grid = "0:5:0.5", ps_out;
  unsigned ps_level = 1;
  double ps_lambda = 1.0;
  bool ps_pdf = false, ps_cdf = false, ps_pmf = false;
  auto* ps = app.add_subcommand("poisson", "tabulate the Poisson-model reference laws");
  auto* ps_which = ps->add_option_group("which")->require_option(1);
  ps_which->add_flag("--pdf", ps_pdf, "level spacing density");
  ps_which->add_flag("--cdf", ps_cdf, "level spacing cdf");
  ps_which->add_flag("--pmf", ps_pmf, "interval count pmf (grid over k)");
  ps->add_option("--level", ps_level, "level a")->capture_default_str();
  ps->add_option("--lambda", ps_lambda, "pmf mean")->capture_default_str();
  ps->add_option("--grid", ps_grid, "a:b:h")->capture_default_str();
  ps->add_option("--out", ps_out, "output CSV (default stdout)");

  // correlate
  std::string co_theta, co_f = "bump", co_method = "windowed", co_out;
  unsigned co_k = 2;
  double co_rho = 1.0;
  auto* co = app.add_subcommand("correlate", "k-level correlation sum R_k(f, N)");
  co->add_option("--theta", co_theta, "theta CSV")->required();
  co->add_option("--k", co_k, "order 2..4")->capture_default_str();
  co->add_option("--f", co_f, "bump | box | triangle")->capture_default_str();
  co->add_option("--rho", co_rho, "support radius")->capture_default_str();
  co->add_option("--method", co_method, "windowed | naive")->capture_default_str();
  co->add_option("--out", co_out, "output JSON (default stdout)");

  // count
  SequenceOptions ct_seq;
  std::string ct_system = "homogeneous", ct_variant = "distinct", ct_out;
  unsigned ct_r = 3;
  std::size_t ct_n = 8;
  auto* ct = app.add_subcommand("count", "exact solution counts; appends a JSON line");
  ct_seq.add(ct);
  ct->add_option("--system", ct_system, "homogeneous | pair_equation | contrast_triple")
      ->capture_default_str();
  ct->add_option("--r,--k", ct_r, "r (homogeneous) or k (pair_equation)")->capture_default_str();
  ct->add_option("--variant", ct_variant, "distinct | repeated")->capture_default_str();
  ct->add_option("--n", ct_n, "bound N")->capture_default_str();
  ct->add_option("--out", ct_out, "JSON-lines file to append to (default stdout)");

  // fit
  std::string fit_in;
  double fit_q = 0.0;
  auto* fit = app.add_subcommand("fit", "fit count ~ A N^p (log N)^q to a counts JSON-lines file");
  fit->add_option("--counts", fit_in, "JSON lines written by 'count'")->required();
  fit->add_option("--q", fit_q, "log power q")->capture_default_str();

  // smallparts
  auto* sm = app.add_subcommand("smallparts", "window census and Lambda measures");
  sm->require_subcommand(1);
  std::string gm_theta;
  auto* gm = sm->add_subcommand("gmax", "G(N, alpha) and a maximizing beta");
  gm->add_option("--theta", gm_theta, "theta CSV")->required();
  std::string la_a, la_out;
  std::string la_n;
  auto* la = sm->add_subcommand("lambda", "exact measure of Lambda(a, N)");
  la->add_option("--a", la_a, "comma-separated a_1, ..., a_k")->required();
  la->add_option("--n", la_n, "N")->required();
  la->add_option("--out", la_out, "output JSON (default stdout)");

  // experiment
  auto* ex = app.add_subcommand("experiment", "seeded experiment campaigns");
  ex->require_subcommand(1);
  std::string ex_config, ex_ledger = "runs.jsonl", ex_data;
  auto* ex_run = ex->add_subcommand("run", "run a config and append the record to the ledger");
  ex_run->add_option("--config", ex_config, "JSON config")->required();
  ex_run->add_option("--ledger", ex_ledger, "JSON-lines ledger")->capture_default_str();
  ex_run->add_option("--data", ex_data, "directory for CSV series (default <ledger>.d/<id>)");
  std::string rp_id, rp_ledger = "runs.jsonl", rp_data;
  auto* ex_report = ex->add_subcommand("report", "summarize a ledger record");
  ex_report->add_option("--id", rp_id, "record id")->required();
  ex_report->add_option("--ledger", rp_ledger, "JSON-lines ledger")->capture_default_str();
  ex_report->add_option("--data", rp_data, "also write the CSV series here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      emit(gen_out, io::sequence_csv(lacunary::generate(gen_seq.spec(), gen_n)));
    } else if (fp->parsed()) {
      const auto values = lacunary::generate(fp_seq.spec(), fp_n);
      const std::size_t bits = lacunary::required_precision(values, fp_guard);
      const auto alpha =
          fp_rational.empty()
              ? lacunary::sample_alpha(fp_seed, bits)
              : [&] {
                  const auto q = lacunary::parse_rational(fp_rational);
                  return lacunary::FixedPointAlpha::from_rational(q.get_num(), q.get_den(), bits);
                }();
      emit(fp_out, io::theta_csv(lacunary::frac_parts(alpha, values, fp_guard)));
    } else if (sp->parsed()) {
      const auto points = io::read_theta_csv(sp_theta);
      const auto sample =
          lacunary::normalized_spacings(points, sp_level, lacunary::parse_spacing_mode(sp_mode));
      const unsigned a = static_cast<unsigned>(sp_level);
      const double ks = lacunary::ks_distance(
          sample.deltas, [a](double s) { return lacunary::poisson::level_spacing_cdf(a, s); });
      if (!sp_bins.empty()) {
        const auto parts = io::split(sp_bins, ':');
        lacunary::require(parts.size() == 2, lacunary::Errc::invalid_argument, "--bins must be width:upper");
        sp_width = std::stod(parts[0]);
        sp_upper = std::stod(parts[1]);
      }
      const auto h = lacunary::spacing_histogram(sample.deltas, sp_width, sp_upper);
      Json j{{"level", sp_level}, {"mode", sp_mode}, {"N", points.size()}, {"ks", ks},
             {"bin_width", sp_width}, {"bin_upper", sp_upper}, {"histogram", h.counts},
             {"overflow", h.overflow}};
      if (sp_out.size() > 4 && sp_out.ends_with(".csv")) {
        std::ostringstream csv;
        csv << "i,delta\n";
        for (std::size_t i = 0; i < sample.deltas.size(); ++i) {
          csv << i + 1 << ',' << io::format_double(sample.deltas[i]) << '\n';
        }
        io::write_file_atomic(sp_out, csv.str());
        std::cout << j.dump(2) << '\n';
      } else {
        j["spacings"] = sample.deltas;
        emit(sp_out, j.dump(2) + "\n");
      }
    } else if (iv->parsed()) {
      const auto points = io::read_theta_csv(iv_theta);
      const auto h = lacunary::interval_counts(points, iv_lambda, iv_trials, iv_seed);
      Json j{{"lambda", iv_lambda}, {"trials", iv_trials}, {"N", points.size()},
             {"counts", h.counts}, {"mean", h.mean()}};
      emit(iv_out, j.dump(2) + "\n");
    } else if (ps->parsed()) {
      namespace pm = lacunary::poisson;
      std::ostringstream csv;
      if (ps_pmf) {
        csv << "k,pmf\n";
        for (double k : parse_grid(ps_grid)) {
          const unsigned kk = static_cast<unsigned>(k);
          csv << kk << ',' << io::format_double(pm::interval_count_pmf(ps_lambda, kk)) << '\n';
        }
      } else {
        csv << (ps_pdf ? "s,pdf\n" : "s,cdf\n");
        for (double s : parse_grid(ps_grid)) {
          const double v = ps_pdf ? pm::level_spacing_pdf(ps_level, s) : pm::level_spacing_cdf(ps_level, s);
          csv << io::format_double(s, 12) << ',' << io::format_double(v) << '\n';
        }
      }
      emit(ps_out, csv.str());
    } else if (co->parsed()) {
      const auto points = io::read_theta_csv(co_theta);
      const lacunary::TestFunction f(lacunary::parse_test_function_kind(co_f), co_k - 1, co_rho);
      const auto method = lacunary::parse_correlation_method(co_method);
      const auto r = method == lacunary::CorrelationMethod::naive
                         ? lacunary::correlation_naive(points, co_k, f)
                         : lacunary::correlation_direct(points, co_k, f);
      Json j{{"k", r.order}, {"N", r.n}, {"value", r.value}, {"tuple_count", r.tuple_count},
             {"method", lacunary::to_string(r.method)}, {"f", r.f_digest}};
      emit(co_out, j.dump(2) + "\n");
    } else if (ct->parsed()) {
      const auto spec = ct_seq.spec();
      const auto values = lacunary::generate(spec, ct_n);
      const auto system = lacunary::parse_count_system(ct_system);
      lacunary::CountResult r;
      if (system == lacunary::CountSystem::homogeneous) {
        r = lacunary::count_homogeneous(ct_r, values, lacunary::parse_homogeneous_variant(ct_variant));
      } else if (system == lacunary::CountSystem::pair_equation) {
        r = lacunary::count_pair_equation(ct_r, values);
      } else if (system == lacunary::CountSystem::contrast_triple) {
        r = lacunary::count_contrast_triple(values);
      } else {
        lacunary::fail(lacunary::Errc::invalid_argument,
                       "the count command supports homogeneous, pair_equation and contrast_triple");
      }
      Json j{{"system", ct_system}, {"order", r.order}, {"N", r.n}, {"sequence", spec.describe()},
             {"count", r.total.get_str()}, {"elapsed", r.elapsed_seconds}};
      if (system == lacunary::CountSystem::homogeneous) j["variant"] = ct_variant;
      if (r.degenerate) {
        j["degenerate"] = r.degenerate->get_str();
        j["nondegenerate"] = r.nondegenerate->get_str();
      }
      if (ct_out.empty() || ct_out == "-") {
        std::cout << j.dump() << '\n';
      } else {
        std::ofstream out(ct_out, std::ios::app);
        lacunary::require(static_cast<bool>(out), lacunary::Errc::io_error, "cannot append to " + ct_out);
        out << j.dump() << '\n';
      }
    } else if (fit->parsed()) {
      std::vector<lacunary::GrowthPoint> points;
      std::istringstream in(io::read_file(fit_in));
      for (std::string line; std::getline(in, line);) {
        if (line.empty()) continue;
        const auto j = Json::parse(line);
        points.push_back({j.at("N").get<double>(), BigInt(j.at("count").get<std::string>(), 10).get_d()});
      }
      const auto g = lacunary::fit_growth(points, fit_q);
      Json j{{"exponent", g.exponent}, {"intercept", g.intercept}, {"residual", g.residual},
             {"degenerate", g.degenerate}, {"q", fit_q}, {"points", points.size()}};
      std::cout << j.dump(2) << '\n';
    } else if (gm->parsed()) {
      const auto points = io::read_theta_csv(gm_theta);
      const auto c = lacunary::g_max(points);
      Json j{{"N", c.n}, {"g_max", c.g_max}, {"beta", io::format_phase(c.argmax_beta)}};
      std::cout << j.dump(2) << '\n';
    } else if (la->parsed()) {
      const auto a = parse_integer_list(la_a);
      const BigInt n(la_n, 10);
      const auto set = lacunary::lambda_set(a, n);
      const auto measure = set.measure();
      const auto bound = lacunary::lambda_bound(a.size(), n);
      Json j{{"a", la_a}, {"N", la_n}, {"intervals", set.intervals().size()},
             {"measure", lacunary::to_fraction_string(measure)},
             {"bound", lacunary::to_fraction_string(bound)}, {"within_bound", measure <= bound}};
      emit(la_out, j.dump(2) + "\n");
    } else if (ex_run->parsed()) {
      const Json config = Json::parse(io::read_file(ex_config));
      auto record = lacunary::append_record(ex_ledger, lacunary::run_experiment(config));
      const auto rep = lacunary::report(record);
      const std::filesystem::path dir =
          ex_data.empty() ? std::filesystem::path(ex_ledger + ".d") / record.id : std::filesystem::path(ex_data);
      lacunary::write_report_series(rep, dir);
      std::cout << rep.text;
      return record.passed ? 0 : 1;
    } else if (ex_report->parsed()) {
      const auto record = lacunary::find_record(rp_ledger, rp_id);
      const auto rep = lacunary::report(record);
      if (!rp_data.empty()) {
        for (const auto& p : lacunary::write_report_series(rep, rp_data)) std::cout << "wrote " << p.string() << '\n';
      }
      std::cout << rep.text;
      return record.passed ? 0 : 1;
    }
  } catch (const lacunary::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
