// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#include "sidelobe/correlation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "fft.hpp"
#include "sidelobe/errors.hpp"

namespace sidelobe {

namespace {

constexpr std::size_t kBits = BinarySequence::kWordBits;

// Lengths above this use the FFT path in psl().
constexpr std::size_t kFftCrossover = std::size_t{1} << 12;

void finish_profile(CorrelationProfile& p) {
  if (p.n > 1) {
    std::int64_t m = 0;
    for (std::size_t u = 1; u < p.n; ++u) m = std::max(m, std::abs(p.values[u]));
    p.psl = m;
  }
}

std::vector<std::int8_t> to_int8(const BinarySequence& seq) {
  std::vector<std::int8_t> a(seq.size());
  for (std::size_t j = 0; j < seq.size(); ++j) a[j] = static_cast<std::int8_t>(seq[j]);
  return a;
}

std::int64_t exact_shift(const BinarySequence& seq, std::size_t u) {
  const auto w = seq.words();
  const std::size_t overlap = seq.size() - u;
  const std::size_t q = u / kBits;
  const unsigned r = static_cast<unsigned>(u % kBits);
  const std::size_t full = overlap / kBits;
  const std::size_t rem = overlap % kBits;

  auto shifted = [&](std::size_t k) {
    std::uint64_t lo = w[k + q] >> r;
    if (r != 0 && k + q + 1 < w.size()) lo |= w[k + q + 1] << (kBits - r);
    return lo;
  };

  std::int64_t disagree = 0;
  for (std::size_t k = 0; k < full; ++k) disagree += std::popcount(w[k] ^ shifted(k));
  if (rem != 0) {
    const std::uint64_t mask = (std::uint64_t{1} << rem) - 1;
    disagree += std::popcount((w[full] ^ shifted(full)) & mask);
  }
  return static_cast<std::int64_t>(overlap) - 2 * disagree;
}

double binomial(std::size_t n, int r) {
  if (r < 0 || static_cast<std::size_t>(r) > n) return 0.0;
  double c = 1.0;
  for (int i = 0; i < r; ++i) c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return c;
}

struct MeasureSearch {
  const std::vector<std::int8_t>& a;
  std::size_t n;
  int r;
  std::vector<std::size_t> shifts;
  // products[level][j] = a_{j+u_1} ... a_{j+u_level}
  std::vector<std::vector<std::int8_t>> products;
  CorrelationMeasureResult best;

  void descend(int level, std::size_t from) {
    for (std::size_t u = from; u + static_cast<std::size_t>(r - level - 1) < n; ++u) {
      shifts[level] = u;
      const std::size_t len = n - u;
      auto& cur = products[level];
      if (level == 0) {
        for (std::size_t j = 0; j < len; ++j) cur[j] = a[j + u];
      } else {
        const auto& prev = products[level - 1];
        for (std::size_t j = 0; j < len; ++j) cur[j] = static_cast<std::int8_t>(prev[j] * a[j + u]);
      }
      if (level + 1 < r) {
        descend(level + 1, u + 1);
        continue;
      }
      std::int64_t sum = 0;
      for (std::size_t k = 1; k <= len; ++k) {
        sum += cur[k - 1];
        if (std::abs(sum) > best.value) {
          best.value = std::abs(sum);
          best.shifts = shifts;
          best.prefix = k;
        }
      }
    }
  }
};

}  // namespace

CorrelationProfile acf_naive(const BinarySequence& seq) {
  const std::size_t n = seq.size();
  const auto a = to_int8(seq);
  CorrelationProfile p;
  p.n = n;
  p.values.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    std::int32_t s = 0;
    const std::int8_t* x = a.data();
    const std::int8_t* y = a.data() + u;
    const std::size_t len = n - u;
    for (std::size_t j = 0; j < len; ++j) s += x[j] * y[j];
    p.values[u] = s;
  }
  finish_profile(p);
  return p;
}

CorrelationProfile acf_bitparallel(const BinarySequence& seq) {
  CorrelationProfile p;
  p.n = seq.size();
  p.values.resize(p.n);
  for (std::size_t u = 0; u < p.n; ++u) p.values[u] = exact_shift(seq, u);
  finish_profile(p);
  return p;
}

namespace detail {

CorrelationProfile repair_profile(const BinarySequence& seq, std::span<const double> raw) {
  const std::size_t n = seq.size();
  if (raw.size() != n) throw std::invalid_argument("raw correlation length mismatch");
  CorrelationProfile p;
  p.n = n;
  p.values.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    const double v = raw[u];
    const double rounded = std::nearbyint(v);
    const auto overlap = static_cast<std::int64_t>(n - u);
    bool ok = std::isfinite(v) && std::abs(v - rounded) <= 0.25;
    std::int64_t c = ok ? static_cast<std::int64_t>(rounded) : 0;
    ok = ok && std::abs(c) <= overlap && ((c - overlap) % 2 == 0);
    if (!ok) {
      c = exact_shift(seq, u);
      ++p.corrected_shifts;
    }
    p.values[u] = c;
  }
  finish_profile(p);
  return p;
}

}  // namespace detail

CorrelationProfile acf_fft(const BinarySequence& seq) {
  std::vector<double> x(seq.size());
  for (std::size_t j = 0; j < seq.size(); ++j) x[j] = seq[j];
  const auto raw = detail::real_autocorrelation(x);
  return detail::repair_profile(seq, raw);
}

CorrelationProfile acf(const BinarySequence& seq, AcfMethod method) {
  switch (method) {
    case AcfMethod::naive:
      return acf_naive(seq);
    case AcfMethod::bitparallel:
      return acf_bitparallel(seq);
    case AcfMethod::fft:
      return acf_fft(seq);
  }
  throw std::invalid_argument("unknown acf method");
}

std::int64_t correlation_at(const BinarySequence& seq, std::size_t u) {
  if (u >= seq.size()) throw std::out_of_range("shift must be smaller than the sequence length");
  return exact_shift(seq, u);
}

std::int64_t psl(const BinarySequence& seq) {
  if (seq.size() <= 1) throw std::domain_error("peak sidelobe level is undefined for n <= 1");
  const auto p = seq.size() > kFftCrossover ? acf_fft(seq) : acf_bitparallel(seq);
  return *p.psl;
}

double correlation_measure_work(std::size_t n, int r) {
  return binomial(n, r) * static_cast<double>(n);
}

CorrelationMeasureResult correlation_measure(const BinarySequence& seq, int r, double budget) {
  const std::size_t n = seq.size();
  if (r < 2 || static_cast<std::size_t>(r) > n) {
    throw std::invalid_argument("correlation measure requires 2 <= r <= n");
  }
  const double work = correlation_measure_work(n, r);
  if (work > budget) {
    char msg[160];
    std::snprintf(msg, sizeof msg, "correlation measure S_%d at n=%zu needs ~%.3g operations, budget is %.3g", r, n,
                  work, budget);
    throw BudgetExceeded(msg);
  }
  const auto a = to_int8(seq);
  MeasureSearch search{a, n, r, std::vector<std::size_t>(r), {}, {}};
  search.products.assign(r, std::vector<std::int8_t>(n));
  search.best.r = r;
  search.best.value = 0;
  search.best.shifts.resize(r);
  for (int i = 0; i < r; ++i) search.best.shifts[i] = static_cast<std::size_t>(i);
  search.best.prefix = 0;
  search.descend(0, 0);
  return search.best;
}

std::int64_t partial_product_sum(const BinarySequence& seq, std::span<const std::size_t> shifts,
                                 std::size_t prefix) {
  std::int64_t sum = 0;
  for (std::size_t j = 0; j < prefix; ++j) {
    int prod = 1;
    for (std::size_t u : shifts) {
      if (j + u >= seq.size()) throw std::out_of_range("witness exceeds sequence length");
      prod *= seq[j + u];
    }
    sum += prod;
  }
  return std::abs(sum);
}

}  // namespace sidelobe
