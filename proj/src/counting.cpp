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

#include "lacunary/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "lacunary/errors.hpp"
#include "lacunary/rng.hpp"

namespace lacunary {

std::string_view to_string(CountSystem system) noexcept {
  switch (system) {
    case CountSystem::sandwich: return "sandwich";
    case CountSystem::hyperplane_pair: return "hyperplane_pair";
    case CountSystem::homogeneous: return "homogeneous";
    case CountSystem::pair_equation: return "pair_equation";
    case CountSystem::contrast_triple: return "contrast_triple";
  }
  return "?";
}

CountSystem parse_count_system(std::string_view text) {
  for (auto s : {CountSystem::sandwich, CountSystem::hyperplane_pair, CountSystem::homogeneous,
                 CountSystem::pair_equation, CountSystem::contrast_triple}) {
    if (text == to_string(s)) return s;
  }
  fail(Errc::invalid_argument, "unknown counting system '" + std::string(text) + "'");
}

std::string_view to_string(HomogeneousVariant variant) noexcept {
  return variant == HomogeneousVariant::distinct ? "distinct" : "repeated";
}

HomogeneousVariant parse_homogeneous_variant(std::string_view text) {
  if (text == "distinct") return HomogeneousVariant::distinct;
  if (text == "repeated") return HomogeneousVariant::repeated;
  fail(Errc::invalid_argument, "unknown homogeneous variant '" + std::string(text) + "'");
}

namespace {

using u128 = unsigned __int128;

BigInt from_u128(u128 v) {
  BigInt hi = to_big_u(static_cast<std::uint64_t>(v >> 64));
  return (hi << 64) + to_big_u(static_cast<std::uint64_t>(v));
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void charge(u128 work, const CountBudget& budget, const std::string& what) {
  if (work > budget.max_work) {
    fail(Errc::budget_exceeded, what + " needs ~" + from_u128(work).get_str() +
                                    " steps, budget is " + std::to_string(budget.max_work));
  }
}

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t out = 1;
  while (e-- > 0) out *= base;
  return out;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ---------------------------------------------------------------------------
// Self-join engine.
//
// A side is the set of values sum_i m_i d_i(tau) over index tuples tau and
// coefficient vectors m in [-N, N]^c. Negating m negates the value, so only
// lexicographically positive m are stored and values are keyed up to sign.
// Entries are grouped by exact |value| and handed to a callback.

struct Side {
  std::size_t dim = 0;  // c
  std::int64_t bound = 0;
  std::vector<std::vector<std::size_t>> tuples;
  std::vector<BigInt> basis;  // tuples.size() * dim, row-major
  std::vector<std::int64_t> coeffs;  // lex-positive m, dim per row

  std::size_t tuple_count() const { return tuples.size(); }
  std::size_t coeff_count() const { return dim == 0 ? 0 : coeffs.size() / dim; }
  u128 entry_count() const { return static_cast<u128>(tuple_count()) * coeff_count(); }

  BigInt exact(std::uint64_t id) const {
    const std::size_t tau = id / coeff_count();
    const std::size_t h = id % coeff_count();
    BigInt v = 0;
    for (std::size_t i = 0; i < dim; ++i) v += coeffs[h * dim + i] * basis[tau * dim + i];
    return v;
  }
};

void fill_coefficients(Side& side) {
  const std::int64_t width = 2 * side.bound + 1;
  const std::uint64_t total = ipow(static_cast<std::uint64_t>(width), static_cast<unsigned>(side.dim));
  // Base-(2N+1) digits, most significant first: numeric order is
  // lexicographic order, so the lex-positive vectors are those past the
  // midpoint (the zero vector).
  side.coeffs.clear();
  side.coeffs.reserve((total - 1) / 2 * side.dim);
  std::vector<std::int64_t> m(side.dim);
  for (std::uint64_t mu = (total - 1) / 2 + 1; mu < total; ++mu) {
    std::uint64_t rest = mu;
    for (std::size_t i = side.dim; i-- > 0;) {
      m[i] = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(width)) - side.bound;
      rest /= static_cast<std::uint64_t>(width);
    }
    side.coeffs.insert(side.coeffs.end(), m.begin(), m.end());
  }
}

struct Entry {
  std::uint64_t hi;
  std::uint64_t lo;
  std::uint64_t id;
  bool operator<(const Entry& o) const { return hi != o.hi ? hi < o.hi : lo < o.lo; }
  bool same_key(const Entry& o) const { return hi == o.hi && lo == o.lo; }
};

// Exact 64-bit values; the key is |v|.
class Int64Arith {
 public:
  explicit Int64Arith(const Side& side) : dim_(side.dim) {
    basis_.reserve(side.basis.size());
    for (const auto& b : side.basis) basis_.push_back(b.get_si());
  }
  static bool applicable(const Side& side) {
    BigInt largest = 0;
    for (const auto& b : side.basis) largest = std::max(largest, BigInt(abs(b)));
    return largest * side.bound * static_cast<long>(side.dim) < BigInt(1) << 62;
  }
  static constexpr bool exact = true;

  Entry key(const Side& side, std::size_t tau, std::size_t h, std::uint64_t id) const {
    std::int64_t v = 0;
    for (std::size_t i = 0; i < dim_; ++i) v += side.coeffs[h * dim_ + i] * basis_[tau * dim_ + i];
    return {0, static_cast<std::uint64_t>(v < 0 ? -v : v), id};
  }

 private:
  std::size_t dim_;
  std::vector<std::int64_t> basis_;
};

// Residues modulo two primes near 2^61; the key is the smaller of the
// fingerprints of v and -v. Groups are confirmed with exact arithmetic.
class ResidueArith {
 public:
  static constexpr std::uint64_t p1 = (std::uint64_t{1} << 61) - 1;
  static std::uint64_t second_prime() {
    static const std::uint64_t p = [] {
      BigInt start = BigInt(3) << 59, out;
      mpz_nextprime(out.get_mpz_t(), start.get_mpz_t());
      return low_word(out);
    }();
    return p;
  }
  static constexpr bool exact = false;

  explicit ResidueArith(const Side& side) : dim_(side.dim), p2_(second_prime()) {
    for (const auto& b : side.basis) {
      r1_.push_back(reduce(b, p1));
      r2_.push_back(reduce(b, p2_));
    }
    for (std::int64_t m : side.coeffs) {
      m1_.push_back(reduce(to_big(m), p1));
      m2_.push_back(reduce(to_big(m), p2_));
    }
  }

  Entry key(const Side&, std::size_t tau, std::size_t h, std::uint64_t id) const {
    std::uint64_t a = 0, b = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      a = static_cast<std::uint64_t>((static_cast<u128>(m1_[h * dim_ + i]) * r1_[tau * dim_ + i] + a) % p1);
      b = static_cast<std::uint64_t>((static_cast<u128>(m2_[h * dim_ + i]) * r2_[tau * dim_ + i] + b) % p2_);
    }
    const std::uint64_t na = a == 0 ? 0 : p1 - a;
    const std::uint64_t nb = b == 0 ? 0 : p2_ - b;
    if (std::pair(na, nb) < std::pair(a, b)) return {na, nb, id};
    return {a, b, id};
  }

 private:
  static std::uint64_t reduce(const BigInt& v, std::uint64_t p) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), to_big_u(p).get_mpz_t());
    return low_word(r);
  }

  std::size_t dim_;
  std::uint64_t p2_;
  std::vector<std::uint64_t> r1_, r2_, m1_, m2_;
};

std::size_t pass_of(const Entry& e, std::size_t passes) {
  return passes == 1 ? 0 : mix64(e.hi * kGoldenGamma ^ e.lo) % passes;
}

// callback(bool zero, std::span<const std::uint64_t> ids) once per exact |value|.
template <class Arith, class Callback>
void join_groups(const Side& side, const CountBudget& budget, const std::string& what,
                 Callback&& callback) {
  const u128 held = side.entry_count();
  const std::size_t passes =
      std::max<std::size_t>(1, static_cast<std::size_t>((held + budget.max_entries_per_pass - 1) /
                                                        budget.max_entries_per_pass));
  charge(held * passes, budget, what);
  const Arith arith(side);
  std::vector<Entry> entries;
  std::vector<std::uint64_t> ids;
  for (std::size_t pass = 0; pass < passes; ++pass) {
    entries.clear();
    entries.reserve(static_cast<std::size_t>(held / passes + held / (8 * passes) + 16));
    std::uint64_t id = 0;
    for (std::size_t tau = 0; tau < side.tuple_count(); ++tau) {
      for (std::size_t h = 0; h < side.coeff_count(); ++h, ++id) {
        const Entry e = arith.key(side, tau, h, id);
        if (pass_of(e, passes) == pass) entries.push_back(e);
      }
    }
    std::sort(entries.begin(), entries.end());
    for (std::size_t i = 0; i < entries.size();) {
      std::size_t j = i + 1;
      while (j < entries.size() && entries[j].same_key(entries[i])) ++j;
      if constexpr (Arith::exact) {
        ids.clear();
        for (std::size_t t = i; t < j; ++t) ids.push_back(entries[t].id);
        callback(entries[i].lo == 0, std::span<const std::uint64_t>(ids));
      } else {
        // Regroup the fingerprint class by exact |value|.
        std::vector<std::pair<BigInt, std::uint64_t>> exact;
        exact.reserve(j - i);
        for (std::size_t t = i; t < j; ++t) {
          exact.emplace_back(abs(side.exact(entries[t].id)), entries[t].id);
        }
        if (j - i > 1) std::sort(exact.begin(), exact.end());
        for (std::size_t a = 0; a < exact.size();) {
          std::size_t b = a + 1;
          while (b < exact.size() && exact[b].first == exact[a].first) ++b;
          ids.clear();
          for (std::size_t t = a; t < b; ++t) ids.push_back(exact[t].second);
          callback(exact[a].first == 0, std::span<const std::uint64_t>(ids));
          a = b;
        }
      }
      i = j;
    }
  }
}

template <class Callback>
void join_groups(const Side& side, const CountBudget& budget, KeyMode mode, const std::string& what,
                 Callback&& callback) {
  if (mode == KeyMode::automatic && Int64Arith::applicable(side)) {
    join_groups<Int64Arith>(side, budget, what, callback);
  } else {
    join_groups<ResidueArith>(side, budget, what, callback);
  }
}

// Ordered tuples of `length` distinct 0-based indices below n.
std::vector<std::vector<std::size_t>> distinct_tuples(std::size_t n, std::size_t length) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> t(length);
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == length) {
      out.push_back(t);
      return;
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (std::find(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(depth), x) !=
          t.begin() + static_cast<std::ptrdiff_t>(depth)) {
        continue;
      }
      t[depth] = x;
      self(self, depth + 1);
    }
  };
  rec(rec, 0);
  return out;
}

BigInt falling(std::size_t n, std::size_t k) {
  BigInt out = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (n < i) return 0;
    out *= static_cast<unsigned long>(n - i);
  }
  return out;
}

// Side for sum_{i<k} m_i (a(n_i) - a(n_{i+1})).
Side difference_side(unsigned k, std::span<const BigInt> values) {
  Side side;
  side.dim = k - 1;
  side.bound = static_cast<std::int64_t>(values.size());
  side.tuples = distinct_tuples(values.size(), k);
  for (const auto& t : side.tuples) {
    for (unsigned i = 0; i + 1 < k; ++i) side.basis.push_back(values[t[i]] - values[t[i + 1]]);
  }
  fill_coefficients(side);
  return side;
}

void check_diagonal(const CountResult& result, unsigned k) {
  if (result.total < diagonal_solutions(k, result.n)) {
    throw std::logic_error("count below the diagonal lower bound");
  }
}

void require_increasing(std::span<const BigInt> values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    require(values[i] > values[i - 1], Errc::invalid_argument,
            "sequence values must be strictly increasing");
  }
}

// w(m, u) = #{y in [-N, N]^m : sum y = u} for m = 0..4, offset by m N.
class SumWays {
 public:
  explicit SumWays(std::int64_t n) : n_(n), table_(5) {
    table_[0] = {1};
    for (std::size_t m = 1; m <= 4; ++m) {
      const auto& prev = table_[m - 1];
      auto& cur = table_[m];
      cur.assign(prev.size() + static_cast<std::size_t>(2 * n), 0);
      for (std::size_t i = 0; i < prev.size(); ++i) {
        for (std::int64_t y = 0; y <= 2 * n; ++y) cur[i + static_cast<std::size_t>(y)] += prev[i];
      }
    }
  }
  std::uint64_t operator()(std::size_t m, std::int64_t u) const {
    const std::int64_t offset = static_cast<std::int64_t>(m) * n_;
    if (u < -offset || u > offset) return 0;
    return table_[m][static_cast<std::size_t>(u + offset)];
  }

 private:
  std::int64_t n_;
  std::vector<std::vector<std::uint64_t>> table_;
};

// Nonzero t with |t s_i| <= limit_i for all i: 2 * min floor(limit_i / |s_i|).
std::int64_t line_reach(std::span<const BigInt> steps, std::span<const std::int64_t> limits) {
  std::int64_t reach = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i] == 0) continue;
    const BigInt q = to_big(limits[i]) / abs(steps[i]);
    reach = std::min(reach, q.get_si());
  }
  return reach;
}

// Distinct-z homogeneous count for r = 3 from the solution line.
BigInt homogeneous_distinct3(std::span<const BigInt> values, const CountBudget& budget) {
  const std::size_t n = values.size();
  charge(static_cast<u128>(n) * n * n, budget, "homogeneous r=3");
  const std::int64_t bound = static_cast<std::int64_t>(n);
  u128 total = 0;
  BigInt g;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t m = 0; m < n; ++m) {
        if (m == i || m == j) continue;
        // y1 D1 + y2 D2 = 0 with y3 = -y1 - y2.
        const BigInt d1 = values[i] - values[m], d2 = values[j] - values[m];
        mpz_gcd(g.get_mpz_t(), d1.get_mpz_t(), d2.get_mpz_t());
        const BigInt steps[3] = {d2 / g, d1 / g, (d1 - d2) / g};
        const std::int64_t limits[3] = {bound, bound, bound};
        total += 2 * static_cast<u128>(line_reach(steps, limits));
      }
    }
  }
  return from_u128(total);
}

// Distinct-z homogeneous count for r = 4: both equations folded into one
// via b(z) = a(z) + B, then a join of (y1, y2, z1, z2) against
// (y3, y4, z3, z4) on opposite values with disjoint z.
BigInt homogeneous_distinct4(std::span<const BigInt> values, const CountBudget& budget,
                             KeyMode mode) {
  const std::size_t n = values.size();
  Side side;
  side.dim = 2;
  side.bound = static_cast<std::int64_t>(n);
  BigInt a_max = 0;
  for (const auto& v : values) a_max = std::max(a_max, BigInt(abs(v)));
  const BigInt fold = 4 * static_cast<long>(n) * a_max + 1;
  side.tuples = distinct_tuples(n, 2);
  for (const auto& t : side.tuples) {
    side.basis.push_back(values[t[0]] + fold);
    side.basis.push_back(values[t[1]] + fold);
  }
  fill_coefficients(side);

  u128 total = 0;
  const std::size_t per_tuple = side.coeff_count();
  std::vector<std::size_t> singles;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  auto squares = [](auto& keys) {
    std::sort(keys.begin(), keys.end());
    u128 s = 0;
    for (std::size_t i = 0; i < keys.size();) {
      std::size_t j = i;
      while (j < keys.size() && keys[j] == keys[i]) ++j;
      s += static_cast<u128>(j - i) * (j - i);
      i = j;
    }
    return s;
  };
  join_groups(side, budget, mode, "homogeneous r=4", [&](bool zero, std::span<const std::uint64_t> ids) {
    if (zero) return;  // a nonzero half cannot vanish: it would solve the r = 2 system
    // Ordered pairs (e, f) of the group with disjoint z-sets, by
    // inclusion-exclusion over shared indices.
    singles.clear();
    pairs.clear();
    for (std::uint64_t id : ids) {
      const auto& t = side.tuples[id / per_tuple];
      singles.push_back(t[0]);
      singles.push_back(t[1]);
      pairs.emplace_back(std::min(t[0], t[1]), std::max(t[0], t[1]));
    }
    const u128 c = ids.size();
    const u128 disjoint = c * c - squares(singles) + squares(pairs);
    total += 2 * disjoint;
  });
  return from_u128(total);
}

BigInt homogeneous_distinct(unsigned r, std::span<const BigInt> values, const CountBudget& budget,
                            KeyMode mode) {
  if (r == 2) return 0;
  if (r == 3) return homogeneous_distinct3(values, budget);
  return homogeneous_distinct4(values, budget, mode);
}

constexpr std::size_t kMaxWitnesses = 32;

}  // namespace

BigInt count_sandwich(std::span<const BigInt> a, const BigInt& b, const Rational& c, std::size_t n,
                      const CountBudget& budget) {
  const std::size_t s = a.size();
  require(s >= 1 && s <= 4, Errc::invalid_argument, "sandwich needs 1 <= s <= 4 coefficients");
  require(a[s - 1] > 0, Errc::invalid_argument, "sandwich coefficients must be positive");
  for (std::size_t i = 1; i < s; ++i) {
    require(a[i] < a[i - 1], Errc::invalid_argument, "sandwich coefficients must be decreasing");
  }
  require(c > 0, Errc::invalid_argument, "sandwich constant C must be positive");
  const std::int64_t bound = static_cast<std::int64_t>(n);
  const std::uint64_t width = 2 * n + 1;
  charge(static_cast<u128>(ipow(width, static_cast<unsigned>(s - 1))), budget, "sandwich");

  // |S + y_s A_s + b| <= (p/q) A_1  <=>  -p A_1 <= q (S + b) + q y_s A_s <= p A_1.
  const BigInt p = c.get_num(), q = c.get_den();
  const BigInt reach = p * a[0];
  const BigInt step = q * a[s - 1];
  BigInt total = 0;
  std::vector<std::int64_t> y(s - 1, -bound);
  while (true) {
    BigInt partial = b;
    for (std::size_t i = 0; i + 1 < s; ++i) partial += y[i] * a[i];
    partial *= q;
    BigInt lo = ceil_div(-reach - partial, step);
    BigInt hi = floor_div(reach - partial, step);
    lo = std::max(lo, to_big(-bound));
    hi = std::min(hi, to_big(bound));
    if (hi >= lo) total += hi - lo + 1;
    std::size_t i = 0;
    while (i < y.size() && y[i] == bound) y[i++] = -bound;
    if (i == y.size()) break;
    ++y[i];
  }
  return total;
}

SandwichInstance reduce_hyperplane_pair(std::span<const BigInt> values,
                                        std::span<const std::size_t> z, const BigInt& b,
                                        const BigInt& d, const Rational& c) {
  const std::size_t s = z.size();
  require(s >= 2, Errc::invalid_argument, "hyperplane pair needs s >= 2");
  for (std::size_t i = 0; i < s; ++i) {
    require(z[i] >= 1 && z[i] <= values.size(), Errc::invalid_argument, "index out of range");
    if (i > 0) require(z[i] < z[i - 1], Errc::invalid_argument, "indices must be decreasing");
  }
  const BigInt& last = values[z[s - 1] - 1];
  const BigInt& first = values[z[0] - 1];
  SandwichInstance out;
  for (std::size_t i = 0; i + 1 < s; ++i) out.a.push_back(values[z[i] - 1] - last);
  out.b = b - d * last;
  out.c = c * Rational(first) / Rational(first - last);
  out.c.canonicalize();
  return out;
}

BigInt count_hyperplane_pair(std::span<const BigInt> values, std::span<const std::size_t> z,
                             const BigInt& b, const BigInt& d, const Rational& c, std::size_t n,
                             const CountBudget& budget) {
  const std::size_t s = z.size();
  require(s >= 2 && s <= 5, Errc::invalid_argument, "hyperplane pair needs 2 <= s <= 5");
  for (std::size_t i = 0; i < s; ++i) {
    require(z[i] >= 1 && z[i] <= values.size(), Errc::invalid_argument, "index out of range");
  }
  const std::int64_t bound = static_cast<std::int64_t>(n);
  charge(static_cast<u128>(ipow(2 * n + 1, static_cast<unsigned>(s - 1))), budget, "hyperplane pair");
  const Rational limit = c * Rational(values[z[0] - 1]);
  BigInt total = 0;
  std::vector<std::int64_t> y(s - 1, -bound);
  while (true) {
    // y_s from the linear condition.
    const BigInt last = -d - std::accumulate(y.begin(), y.end(), BigInt(0),
                                             [](const BigInt& acc, std::int64_t v) { return acc + v; });
    if (abs(last) <= bound) {
      BigInt sum = b + last * values[z[s - 1] - 1];
      for (std::size_t i = 0; i + 1 < s; ++i) sum += y[i] * values[z[i] - 1];
      if (Rational(abs(sum)) <= limit) ++total;
    }
    std::size_t i = 0;
    while (i < y.size() && y[i] == bound) y[i++] = -bound;
    if (i == y.size()) break;
    ++y[i];
  }
  return total;
}

CountResult count_homogeneous(unsigned r, std::span<const BigInt> values,
                              HomogeneousVariant variant, const CountBudget& budget, KeyMode mode) {
  const Stopwatch clock;
  if (r < 2 || r > 4) fail(Errc::order_out_of_range, "homogeneous system needs r in {2, 3, 4}");
  require_increasing(values);
  const std::size_t n = values.size();
  CountResult out;
  out.system = CountSystem::homogeneous;
  out.n = n;
  out.order = r;
  const BigInt distinct = homogeneous_distinct(r, values, budget, mode);
  if (variant == HomogeneousVariant::distinct) {
    out.total = distinct;
    out.elapsed_seconds = clock.seconds();
    return out;
  }

  // Tuples with a repeated index. Writing u_s for the y-sum over class s,
  // the classes behave like a distinct system in u, weighted by the number
  // of ways w(m_s, u_s) to split each u_s.
  charge(static_cast<u128>(ipow(n, r)), budget, "homogeneous repeated variant");
  const std::int64_t bound = static_cast<std::int64_t>(n);
  const SumWays ways(bound);
  u128 degenerate = 0, nondegenerate = 0;
  std::vector<std::size_t> z(r, 0);
  std::vector<std::size_t> cls;
  std::vector<std::size_t> mult;
  BigInt g;
  while (true) {
    cls.assign(z.begin(), z.end());
    std::sort(cls.begin(), cls.end());
    mult.clear();
    std::vector<std::size_t> distinct_z;
    for (std::size_t i = 0; i < r;) {
      std::size_t j = i;
      while (j < r && cls[j] == cls[i]) ++j;
      distinct_z.push_back(cls[i]);
      mult.push_back(j - i);
      i = j;
    }
    const std::size_t l = distinct_z.size();
    if (l < r) {
      u128 zero_ways = 1;
      for (std::size_t m : mult) zero_ways *= ways(m, 0);
      degenerate += zero_ways - 1;
      if (out.degenerate_witnesses.size() < kMaxWitnesses) {
        HomogeneousSolution w;
        w.y.assign(r, 0);
        for (std::size_t i = 0; i < r; ++i) w.z.push_back(z[i] + 1);
        // +1 / -1 on the first repeated class.
        for (std::size_t s = 0; s < l; ++s) {
          if (mult[s] < 2) continue;
          bool first = true;
          for (std::size_t i = 0; i < r; ++i) {
            if (z[i] != distinct_z[s]) continue;
            w.y[i] = first ? 1 : -1;
            if (!first) break;
            first = false;
          }
          break;
        }
        out.degenerate_witnesses.push_back(std::move(w));
      }
      if (l == 3) {
        const BigInt& a1 = values[distinct_z[0]];
        const BigInt& a2 = values[distinct_z[1]];
        const BigInt& a3 = values[distinct_z[2]];
        const BigInt d1 = a1 - a3, d2 = a2 - a3;
        mpz_gcd(g.get_mpz_t(), d1.get_mpz_t(), d2.get_mpz_t());
        const BigInt steps[3] = {d2 / g, -d1 / g, (d1 - d2) / g};
        const std::int64_t limits[3] = {static_cast<std::int64_t>(mult[0]) * bound,
                                        static_cast<std::int64_t>(mult[1]) * bound,
                                        static_cast<std::int64_t>(mult[2]) * bound};
        const std::int64_t reach = line_reach(steps, limits);
        if (reach > 0) {
          const std::int64_t s0 = steps[0].get_si(), s1 = steps[1].get_si(), s2 = steps[2].get_si();
          for (std::int64_t t = -reach; t <= reach; ++t) {
            if (t == 0) continue;
            nondegenerate += static_cast<u128>(ways(mult[0], t * s0)) * ways(mult[1], t * s1) *
                             ways(mult[2], t * s2);
          }
        }
      }
    }
    std::size_t i = 0;
    while (i < r && z[i] == n - 1) z[i++] = 0;
    if (i == r) break;
    ++z[i];
  }
  out.degenerate = from_u128(degenerate);
  out.nondegenerate = distinct + from_u128(nondegenerate);
  out.total = *out.degenerate + *out.nondegenerate;
  out.elapsed_seconds = clock.seconds();
  return out;
}

CountResult count_pair_equation(unsigned k, std::span<const BigInt> values,
                                const CountBudget& budget, KeyMode mode) {
  const Stopwatch clock;
  if (k != 2 && k != 3) fail(Errc::order_out_of_range, "pair equation needs k in {2, 3}");
  require_increasing(values);
  const std::size_t n = values.size();
  CountResult out;
  out.system = CountSystem::pair_equation;
  out.n = n;
  out.order = k;
  if (n < k) {
    out.total = 0;
    return out;
  }
  const Side side = difference_side(k, values);
  // C_v = #{(m, n) : L = v}. For v != 0 the halved count c equals C_v = C_{-v};
  // C_0 = T + 2 H0 with T distinct tuples (m = 0) and H0 halved zero entries.
  u128 squares = 0, zero_half = 0;
  join_groups(side, budget, mode, "pair equation", [&](bool zero, std::span<const std::uint64_t> ids) {
    if (zero) {
      zero_half += ids.size();
    } else {
      squares += 2 * static_cast<u128>(ids.size()) * ids.size();
    }
  });
  const BigInt t = side.tuple_count();
  const BigInt c0 = t + 2 * from_u128(zero_half);
  out.total = from_u128(squares) + c0 * c0 - t * t;
  check_diagonal(out, k);
  out.elapsed_seconds = clock.seconds();
  return out;
}

CountResult count_contrast_triple(std::span<const BigInt> values, const CountBudget& budget,
                                  KeyMode mode) {
  const Stopwatch clock;
  require_increasing(values);
  const std::size_t n = values.size();
  CountResult out;
  out.system = CountSystem::contrast_triple;
  out.n = n;
  out.order = 3;
  if (n < 3) {
    out.total = 0;
    return out;
  }
  const Side side = difference_side(3, values);
  u128 squares = 0, zero_half = 0;
  join_groups(side, budget, mode, "contrast triple", [&](bool zero, std::span<const std::uint64_t> ids) {
    if (zero) {
      zero_half += ids.size();
    } else {
      squares += 2 * static_cast<u128>(ids.size()) * ids.size();
    }
  });
  const BigInt c0 = 2 * from_u128(zero_half);
  out.total = from_u128(squares) + c0 * c0;
  check_diagonal(out, 3);
  out.elapsed_seconds = clock.seconds();
  return out;
}

BigInt diagonal_solutions(unsigned k, std::size_t n) {
  BigInt width = 2 * static_cast<unsigned long>(n) + 1;
  BigInt coeffs;
  mpz_pow_ui(coeffs.get_mpz_t(), width.get_mpz_t(), k - 1);
  return (coeffs - 1) * falling(n, k);
}

bool is_degenerate(std::span<const std::int64_t> y, std::span<const std::size_t> z) {
  require(y.size() == z.size(), Errc::invalid_argument, "y and z lengths differ");
  for (std::size_t i = 0; i < z.size(); ++i) {
    std::int64_t sum = 0;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (z[j] == z[i]) sum += y[j];
    }
    if (sum != 0) return false;
  }
  return true;
}

GrowthFit fit_growth(std::span<const GrowthPoint> points, double q) {
  require(points.size() >= 4, Errc::invalid_argument, "growth fit needs at least four points");
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : points) {
    require(p.n > 1.0, Errc::invalid_argument, "growth fit needs N > 1");
    if (p.count <= 0.0) continue;
    xy.emplace_back(std::log(p.n), std::log(p.count) - q * std::log(std::log(p.n)));
  }
  GrowthFit fit;
  if (xy.size() < 2) {
    fit.degenerate = true;
    return fit;
  }
  double mx = 0, my = 0;
  for (auto [x, y] : xy) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(xy.size());
  my /= static_cast<double>(xy.size());
  double sxx = 0, sxy = 0;
  for (auto [x, y] : xy) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0) {
    fit.degenerate = true;
    return fit;
  }
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double rss = 0;
  for (auto [x, y] : xy) {
    const double e = y - fit.intercept - fit.exponent * x;
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / static_cast<double>(xy.size()));
  return fit;
}

}  // namespace lacunary
