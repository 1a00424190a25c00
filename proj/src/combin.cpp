// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#include "sidelobe/combin.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gray.hpp"
#include "sidelobe/errors.hpp"

namespace sidelobe::combin {

namespace {

constexpr int kMaxTupleLength = 16;
constexpr int kMaxAlphabet = 64;

// Per-tuple summary of (z_1, ..., z_L) drawn from [0, range): the XOR mask of
// the values z_i and z_i + shift, whether the z_i alone are even, and the
// number of disjoint equal pairs among the z_i.
struct TupleClass {
  std::uint64_t mask;
  bool even;
  int pairs;
};

template <class Fn>
void for_each_tuple(int range, int length, int shift, Fn&& fn) {
  std::array<int, kMaxTupleLength> digits{};
  std::array<int, kMaxAlphabet> mult{};
  while (true) {
    std::uint64_t mask = 0;
    std::uint64_t own = 0;
    mult.fill(0);
    for (int i = 0; i < length; ++i) {
      const int z = digits[i];
      own ^= std::uint64_t{1} << z;
      mask ^= (std::uint64_t{1} << z) ^ (std::uint64_t{1} << (z + shift));
      ++mult[z];
    }
    int pairs = 0;
    for (int z = 0; z < range; ++z) pairs += mult[z] / 2;
    fn(TupleClass{mask, own == 0, pairs});

    int i = 0;
    while (i < length && ++digits[i] == range) digits[i++] = 0;
    if (i == length) return;
  }
}

double power(double base, int exp) { return std::pow(base, exp); }

void check_space(double size, double budget, const std::string& what) {
  if (size > budget) {
    throw BudgetExceeded(what + ": tuple space of " + std::to_string(size) + " exceeds budget " +
                         std::to_string(budget));
  }
}

void check_shifts(int n, int u, int v) {
  if (n < 2 || n > kMaxAlphabet) throw std::invalid_argument("n must lie in [2, 64]");
  if (u <= 0 || v <= 0 || u >= n || v >= n) throw std::invalid_argument("shifts must satisfy 0 < u, v < n");
  if (u == v) throw std::invalid_argument("shifts must differ");
}

void check_ordered(int n, int u, int v) {
  check_shifts(n, u, v);
  if (u > v) throw std::invalid_argument("shifts must satisfy u < v");
}

double log_double_factorial(int k) {
  // log((2k)! / (k! 2^k))
  return std::lgamma(2.0 * k + 1.0) - std::lgamma(k + 1.0) - k * std::log(2.0);
}

// Counts per mask for x-side and y-side tuple classes.
struct ClassCounts {
  std::uint64_t total = 0;
  std::uint64_t even = 0;      // even (hence has every smaller even sub-tuple)
  std::uint64_t has_sub = 0;   // has an even sub-tuple of the target size, not even
  std::uint64_t no_sub = 0;    // no even sub-tuple of the target size
};

std::unordered_map<std::uint64_t, ClassCounts> classify(int range, int length, int shift,
                                                        int needed_pairs) {
  std::unordered_map<std::uint64_t, ClassCounts> out;
  for_each_tuple(range, length, shift, [&](const TupleClass& c) {
    auto& e = out[c.mask];
    ++e.total;
    if (c.even) {
      ++e.even;
    } else if (c.pairs >= needed_pairs) {
      ++e.has_sub;
    } else {
      ++e.no_sub;
    }
  });
  return out;
}

}  // namespace

BigInt double_factorial(int k) {
  if (k < 1) throw std::invalid_argument("double factorial requires k >= 1");
  BigInt out = 1;
  for (int f = 2 * k - 1; f > 1; f -= 2) out *= f;
  return out;
}

bool is_even(std::span<const std::int64_t> tuple) {
  if (tuple.size() % 2 != 0) return false;
  std::unordered_map<std::int64_t, std::size_t> mult;
  for (auto x : tuple) ++mult[x];
  for (const auto& [value, count] : mult) {
    if (count % 2 != 0) return false;
  }
  return true;
}

BigInt count_even_tuples(int m, int q, double budget) {
  if (m < 1 || q < 1) throw std::invalid_argument("count_even_tuples requires m, q >= 1");
  if (m > kMaxAlphabet || 2 * q > kMaxTupleLength) throw std::invalid_argument("m or q too large");
  check_space(power(m, 2 * q), budget, "count_even_tuples");
  std::uint64_t count = 0;
  for_each_tuple(m, 2 * q, 0, [&](const TupleClass& c) { count += c.even ? 1 : 0; });
  return count;
}

BigInt bound_even_single_exact(int m, int q) {
  if (m < 1 || q < 1) throw std::invalid_argument("bound_even_single requires m, q >= 1");
  BigInt out = double_factorial(q);
  for (int i = 0; i < q; ++i) out *= m;
  return out;
}

double bound_even_single(int m, int q) { return to_double(bound_even_single_exact(m, q)); }

BigInt count_S(int n, int u, int v, int q, int t, double budget) {
  check_shifts(n, u, v);
  if (q < 1 || 2 * q > kMaxTupleLength) throw std::invalid_argument("q out of range");
  if (t < 0 || t >= q) throw std::invalid_argument("t must satisfy 0 <= t < q");
  check_space(power(n - u, 2 * q) * power(n - v, 2 * q), budget, "count_S");

  std::unordered_map<std::uint64_t, std::uint64_t> ys;
  for_each_tuple(n - v, 2 * q, v, [&](const TupleClass& c) { ++ys[c.mask]; });

  // No even sub-tuple of size 2q-2t means fewer than q-t equal pairs.
  std::uint64_t count = 0;
  for_each_tuple(n - u, 2 * q, u, [&](const TupleClass& c) {
    if (c.pairs >= q - t) return;
    auto it = ys.find(c.mask);
    if (it != ys.end()) count += it->second;
  });
  return count;
}

double bound_S(int n, int q, int t) {
  if (n < 1 || q < 1 || t < 0) throw std::invalid_argument("bound_S requires n, q >= 1 and t >= 0");
  const double exponent = 2.0 * q - (t + 1.0) / 3.0;
  return std::exp(log_double_factorial(4 * q) + exponent * std::log(static_cast<double>(n)));
}

BigInt exact_moment_tuples(int n, int u, int v, int p, double budget) {
  check_ordered(n, u, v);
  if (p < 1 || 2 * p > kMaxTupleLength) throw std::invalid_argument("p out of range");
  check_space(power(n - u, 2 * p) * power(n - v, 2 * p), budget, "exact_moment_tuples");

  std::unordered_map<std::uint64_t, std::uint64_t> ys;
  for_each_tuple(n - v, 2 * p, v, [&](const TupleClass& c) { ++ys[c.mask]; });
  BigInt count = 0;
  std::unordered_map<std::uint64_t, std::uint64_t> xs;
  for_each_tuple(n - u, 2 * p, u, [&](const TupleClass& c) { ++xs[c.mask]; });
  for (const auto& [mask, cx] : xs) {
    auto it = ys.find(mask);
    if (it != ys.end()) count += BigInt(cx) * it->second;
  }
  return count;
}

Rational exact_moment_sequences(int n, int u, int v, int p, int max_n) {
  check_ordered(n, u, v);
  if (p < 1) throw std::invalid_argument("p must be positive");
  if (n > max_n) {
    throw BudgetExceeded("exact_moment_sequences: 2^" + std::to_string(n) + " sequences exceeds limit 2^" +
                         std::to_string(max_n));
  }
  const auto side = static_cast<std::size_t>(n + 1);
  using Hist = std::vector<std::uint64_t>;
  const std::array<std::size_t, 2> shifts{static_cast<std::size_t>(u), static_cast<std::size_t>(v)};
  const auto hist = detail::gray_parallel<Hist>(
      static_cast<std::size_t>(n), 1, [&] { return Hist(side * side, 0); },
      [&](std::size_t fixed, std::uint64_t prefix, Hist& h) {
        detail::gray_walk_block(static_cast<std::size_t>(n), shifts, fixed, prefix,
                                [&](std::span<const std::int64_t> c, std::uint64_t) {
                                  ++h[static_cast<std::size_t>(std::abs(c[0])) * side +
                                      static_cast<std::size_t>(std::abs(c[1]))];
                                });
      },
      [](Hist& into, const Hist& from) {
        for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
      });

  BigInt sum = 0;
  for (std::size_t a = 0; a < side; ++a) {
    for (std::size_t b = 0; b < side; ++b) {
      const auto c = hist[a * side + b];
      if (c == 0) continue;
      BigInt term = BigInt(a * b);
      term = boost::multiprecision::pow(term, static_cast<unsigned>(2 * p));
      sum += term * c;
    }
  }
  return Rational(sum, BigInt(1) << n);
}

TuplePartition partition_T(int n, int u, int v, int p, int h, double budget) {
  check_ordered(n, u, v);
  if (p < 1 || 2 * p > kMaxTupleLength) throw std::invalid_argument("p out of range");
  if (h < 0 || h >= p) throw std::invalid_argument("h must satisfy 0 <= h < p");
  check_space(power(n - u, 2 * p) * power(n - v, 2 * p), budget, "partition_T");

  const int needed = p - h;  // pairs for an even sub-tuple of size 2p-2h
  const auto xs = classify(n - u, 2 * p, u, needed);
  const auto ys = classify(n - v, 2 * p, v, needed);
  TuplePartition out{0, 0, 0};
  for (const auto& [mask, x] : xs) {
    auto it = ys.find(mask);
    if (it == ys.end()) continue;
    const auto& y = it->second;
    const BigInt x_sub = BigInt(x.even) + x.has_sub;
    const BigInt y_sub = BigInt(y.even) + y.has_sub;
    const BigInt t1 = BigInt(x.even) * y.even;
    const BigInt both_sub = x_sub * y_sub;
    out.t1 += t1;
    out.t2 += both_sub - t1;
    out.t3 += BigInt(x.total) * y.total - both_sub;
  }
  return out;
}

double bound_moment(int n, int u, int v, int p, int h) {
  if (!(0 < u && u < v && v < n)) throw std::invalid_argument("shifts must satisfy 0 < u < v < n");
  if (p < 1) throw std::invalid_argument("p must be positive");
  if (h < 0 || h >= p) throw std::invalid_argument("h must satisfy 0 <= h < p");
  const double log_n = std::log(static_cast<double>(n));
  const double log_lead = 2.0 * p * log_n + 2.0 * log_double_factorial(p);
  const double log_h_term = h == 0 ? 0.0 : 2.0 * h * std::log(static_cast<double>(p)) + 4.0 * h * std::log(8.0 * h);
  const double k1 = std::exp(log_h_term - log_n / 3.0);
  const double k2 = std::exp(3.0 * p * std::log(8.0 * p) - (h + 1.0) * log_n / 3.0);
  return std::exp(log_lead) * (1.0 + k1 + k2);
}

BigInt MomentReport::moment() const {
  if (tuple_count) return *tuple_count;
  if (exact) return boost::multiprecision::numerator(*exact) / boost::multiprecision::denominator(*exact);
  throw std::logic_error("moment report has no oracle result");
}

bool MomentReport::identity_holds() const {
  if (exact && boost::multiprecision::denominator(*exact) != 1) return false;
  if (exact && tuple_count) return *exact == Rational(*tuple_count);
  return true;
}

bool MomentReport::partition_holds() const {
  if (partition && tuple_count) return partition->total() == *tuple_count;
  return true;
}

MomentReport moment_report(int n, int u, int v, int p, int h, double budget, int max_n) {
  MomentReport r;
  r.n = n;
  r.u = u;
  r.v = v;
  r.p = p;
  r.h = h;
  r.bound = bound_moment(n, u, v, p, h);
  if (n <= max_n) r.exact = exact_moment_sequences(n, u, v, p, max_n);
  if (power(n - u, 2 * p) * power(n - v, 2 * p) <= budget) {
    r.tuple_count = exact_moment_tuples(n, u, v, p, budget);
    r.partition = partition_T(n, u, v, p, h, budget);
  }
  if (!r.exact && !r.tuple_count) {
    throw BudgetExceeded("moment report: both oracles exceed their budgets");
  }
  return r;
}

}  // namespace sidelobe::combin
