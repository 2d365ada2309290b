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

#include "lacunary/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "lacunary/errors.hpp"

namespace lacunary::io {

std::string format_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string format_phase(Phase p, int digits) {
  if (p.raw() == 0) return "0";
  const BigInt raw = to_big_u(p.raw());
  const BigInt one = BigInt(1) << 64;
  // Leading zeros after the point do not count as significant digits.
  int zeros = 0;
  BigInt ten = 10;
  while (raw * ten < one) {
    ++zeros;
    ten *= 10;
  }
  const int decimals = digits + zeros;
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
  BigInt scaled = raw * scale + (one >> 1);
  mpz_fdiv_q_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 64);
  if (scaled == scale) return "1";
  std::string body = scaled.get_str();
  return "0." + std::string(static_cast<std::size_t>(decimals) - body.size(), '0') + body;
}

Phase parse_phase(std::string_view decimal) {
  const Rational q = parse_rational(std::string(decimal));
  require(q >= 0 && q <= 1, Errc::invalid_argument,
          "phase outside [0, 1]: '" + std::string(decimal) + "'");
  // round(q 2^64) = floor((2 p 2^64 + q) / (2 q))
  BigInt num = q.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), 65);
  num += q.get_den();
  BigInt den = 2 * q.get_den();
  BigInt raw;
  mpz_fdiv_q(raw.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return Phase(low_word(raw));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), Errc::io_error, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    require(static_cast<bool>(out), Errc::io_error, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), Errc::io_error, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string theta_csv(const OrderedPoints& points) {
  std::string out = "x,theta\n";
  const auto theta = points.by_index();
  for (std::size_t i = 0; i < theta.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += format_phase(theta[i]);
    out += '\n';
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

OrderedPoints parse_theta_csv(std::string_view text) {
  std::map<std::size_t, Phase> rows;
  std::size_t line_no = 0;
  for (const auto& raw_line : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw_line);
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    require(fields.size() >= 2, Errc::io_error, "theta csv line " + std::to_string(line_no));
    const auto x_text = trim(fields[0]);
    std::size_t x = 0;
    const auto [ptr, ec] = std::from_chars(x_text.data(), x_text.data() + x_text.size(), x);
    if (ec != std::errc{} || ptr != x_text.data() + x_text.size()) {
      require(line_no == 1, Errc::io_error, "bad index on theta csv line " + std::to_string(line_no));
      continue;  // header
    }
    rows[x] = parse_phase(trim(fields[1]));
  }
  std::vector<Phase> phases;
  phases.reserve(rows.size());
  std::size_t expected = 1;
  for (const auto& [x, phase] : rows) {
    require(x == expected++, Errc::io_error, "theta csv indices must be 1..N without gaps");
    phases.push_back(phase);
  }
  return OrderedPoints(std::move(phases));
}

OrderedPoints read_theta_csv(const std::filesystem::path& path) {
  return parse_theta_csv(read_file(path));
}

std::string sequence_csv(std::span<const BigInt> values) {
  std::string out = "index,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += values[i].get_str();
    out += '\n';
  }
  return out;
}

}  // namespace lacunary::io
