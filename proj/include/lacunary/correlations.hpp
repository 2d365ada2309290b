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

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lacunary/errors.hpp"
#include "lacunary/fracparts.hpp"
#include "lacunary/numeric.hpp"
#include "lacunary/parallel.hpp"
#include "lacunary/test_function.hpp"

namespace lacunary {

// Anything that can stand in for f in R_k(f, N).
template <class F>
concept CorrelationKernel = requires(const F& f, std::span<const double> y) {
  { f(y) } -> std::convertible_to<double>;
  { f.radius() } -> std::convertible_to<double>;
  { f.dimension() } -> std::convertible_to<std::size_t>;
};

enum class CorrelationMethod { windowed, naive };

std::string_view to_string(CorrelationMethod method) noexcept;
CorrelationMethod parse_correlation_method(std::string_view text);

inline constexpr unsigned kMaxCorrelationOrder = 4;

struct CorrelationResult {
  unsigned order = 2;
  std::size_t n = 0;
  double value = 0.0;
  std::uint64_t tuple_count = 0;  // tuples with f(y) != 0
  CorrelationMethod method = CorrelationMethod::windowed;
  std::string f_digest;
};

// Per sorted position, how many circular neighbours lie within `reach`
// (raw units) going forward and backward. forward + backward <= N - 1.
struct NeighborWindow {
  std::size_t forward = 0;
  std::size_t backward = 0;
};

std::vector<NeighborWindow> neighbor_windows(std::span<const Phase> sorted, std::uint64_t reach);

namespace detail {

inline constexpr std::size_t kAnchorBlock = 2048;

void check_correlation_args(std::size_t n, unsigned k, double radius, std::size_t dimension);
void check_naive_guard(std::size_t n, unsigned k);

// Raw-unit reach covering every difference d with N |d| <= rho, padded
// so that rounding in the argument computation cannot drop a tuple.
std::uint64_t support_reach(double radius, std::size_t n);

template <class F>
std::string kernel_digest(const F& f) {
  if constexpr (requires { f.digest(); }) {
    return f.digest();
  } else {
    return "custom";
  }
}

// y_i = N * wrap(theta_{x_i} - theta_{x_{i+1}}).
inline double scaled_difference(Phase from, Phase to, double scale) noexcept {
  return static_cast<double>(signed_difference(to, from)) * scale;
}

}  // namespace detail

// R_k(f, N) = (1/N) sum over ordered k-tuples of distinct indices of
// F_N(theta_{x_1} - theta_{x_2}, ..., theta_{x_{k-1}} - theta_{x_k}),
// enumerating only chains whose consecutive circle distances are within
// rho / N of each other.
template <CorrelationKernel F>
CorrelationResult correlation_direct(const OrderedPoints& points, unsigned k, const F& f) {
  const std::size_t n = points.size();
  detail::check_correlation_args(n, k, f.radius(), f.dimension());
  const auto sorted = points.sorted();
  const auto windows = neighbor_windows(sorted, detail::support_reach(f.radius(), n));
  const double scale = static_cast<double>(n) * 0x1p-64;

  struct Partial {
    double total = 0.0;
    std::uint64_t contributing = 0;
  };
  // Anchors are split into fixed blocks; partial sums are reduced in block
  // order so the result does not depend on the worker count.
  const std::size_t blocks = (n + detail::kAnchorBlock - 1) / detail::kAnchorBlock;
  const auto partials = parallel_map(blocks, [&](std::size_t block) {
    std::array<std::size_t, kMaxCorrelationOrder> chain{};
    std::array<double, kMaxCorrelationOrder - 1> y{};
    const std::span<const double> args(y.data(), k - 1);
    Partial out;

    auto visit = [&](auto&& self, unsigned depth) -> void {
      const std::size_t from = chain[depth - 1];
      const auto& w = windows[from];
      auto step = [&](std::size_t to) {
        for (unsigned d = 0; d + 1 < depth; ++d) {
          if (chain[d] == to) return;
        }
        chain[depth] = to;
        y[depth - 1] = detail::scaled_difference(sorted[from], sorted[to], scale);
        if (depth + 1 == k) {
          const double v = f(args);
          if (v != 0.0) {
            out.total += v;
            ++out.contributing;
          }
        } else {
          self(self, depth + 1);
        }
      };
      for (std::size_t s = 1; s <= w.forward; ++s) step((from + s) % n);
      for (std::size_t s = 1; s <= w.backward; ++s) step((from + n - s) % n);
    };

    const std::size_t last = std::min(n, (block + 1) * detail::kAnchorBlock);
    for (std::size_t anchor = block * detail::kAnchorBlock; anchor < last; ++anchor) {
      chain[0] = anchor;
      visit(visit, 1);
    }
    return out;
  });

  double total = 0.0;
  std::uint64_t contributing = 0;
  for (const auto& p : partials) {
    total += p.total;
    contributing += p.contributing;
  }
  return {k, n, total / static_cast<double>(n), contributing, CorrelationMethod::windowed,
          detail::kernel_digest(f)};
}

// Full O(N^k) enumeration of R_k(f, N); the reference for correlation_direct.
// Guarded to N <= 128 (k <= 3) and N <= 48 (k = 4).
template <CorrelationKernel F>
CorrelationResult correlation_naive(const OrderedPoints& points, unsigned k, const F& f) {
  const std::size_t n = points.size();
  detail::check_correlation_args(n, k, f.radius(), f.dimension());
  detail::check_naive_guard(n, k);
  const auto theta = points.by_index();
  const double scale = static_cast<double>(n) * 0x1p-64;

  std::array<std::size_t, kMaxCorrelationOrder> tuple{};
  std::array<double, kMaxCorrelationOrder - 1> y{};
  const std::span<const double> args(y.data(), k - 1);
  double total = 0.0;
  std::uint64_t contributing = 0;

  auto visit = [&](auto&& self, unsigned depth) -> void {
    for (std::size_t x = 0; x < n; ++x) {
      bool repeated = false;
      for (unsigned d = 0; d < depth; ++d) repeated = repeated || tuple[d] == x;
      if (repeated) continue;
      tuple[depth] = x;
      if (depth > 0) y[depth - 1] = detail::scaled_difference(theta[tuple[depth - 1]], theta[x], scale);
      if (depth + 1 == k) {
        const double v = f(args);
        if (v != 0.0) {
          total += v;
          ++contributing;
        }
      } else {
        self(self, depth + 1);
      }
    }
  };
  visit(visit, 0);
  return {k, n, total / static_cast<double>(n), contributing, CorrelationMethod::naive,
          detail::kernel_digest(f)};
}

struct FourierCoefficient {
  double value = 0.0;       // truncated sum over |n|_inf <= n_max
  double tail_bound = 0.0;  // bound on |omitted terms|
  std::uint64_t terms = 0;  // (n, x) pairs summed
};

// b(l, N) = sum_{n in Z^{k-1}} sum*_{x, n.Delta(x) = l} fhat(n / N) for
// k in {2, 3}, with N = values.size(). Terms with |n|_inf > n_max are
// omitted and bounded using the decay of fhat. n_max defaults to 64 N.
FourierCoefficient fourier_b(std::int64_t l, unsigned k, const TestFunction& f,
                             std::span<const BigInt> values,
                             std::optional<std::int64_t> n_max = std::nullopt,
                             std::optional<double> tail_tolerance = std::nullopt);

// E_alpha R_k(f, N) = b(0, N) / N^k.
double mean_via_b0(unsigned k, const TestFunction& f, std::span<const BigInt> values,
                   std::optional<std::int64_t> n_max = std::nullopt);

// |R_k(f, N + K) - R_k(f, N)| for two point sets of the same alpha, where
// `points_n` is the length-N prefix of `points_nk` and K <= N^{1 - delta}.
double stability_delta(const OrderedPoints& points_n, const OrderedPoints& points_nk, unsigned k,
                       const TestFunction& f, double delta = 0.3);

}  // namespace lacunary
