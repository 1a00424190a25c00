// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "sidelobe/correlation.hpp"
#include "sidelobe/errors.hpp"
#include "sidelobe/rng.hpp"

using sidelobe::AcfMethod;
using sidelobe::BinarySequence;
using sidelobe::Encoding;

namespace {

BinarySequence seq(const char* text) { return sidelobe::parse_sequence(text, Encoding::plusminus); }

std::vector<std::int64_t> oracle_values(const BinarySequence& s) {
  const auto c = oracle::autocorrelation(s.signs());
  return {c.begin(), c.end()};
}

// Largest |partial product sum| over every r-subset of shifts and prefix.
std::int64_t brute_measure(const BinarySequence& s, int r) {
  const int n = static_cast<int>(s.size());
  std::int64_t best = 0;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + r, true);
  do {
    std::vector<int> u;
    for (int i = 0; i < n; ++i)
      if (pick[i]) u.push_back(i);
    const int span = n - u.back();
    std::int64_t sum = 0;
    for (int k = 1; k <= span; ++k) {
      std::int64_t prod = 1;
      for (int x : u) prod *= s[k - 1 + x];
      sum += prod;
      best = std::max(best, std::abs(sum));
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

}  // namespace

TEST(Correlation, SmallExamples) {
  const auto p = sidelobe::acf_naive(seq("+-+"));
  EXPECT_EQ(p.values, (std::vector<std::int64_t>{3, -2, 1}));
  EXPECT_EQ(p.psl, 2);
  const auto q = sidelobe::acf_fft(seq("++-"));
  EXPECT_EQ(q.values, (std::vector<std::int64_t>{3, 0, -1}));
  EXPECT_EQ(q.psl, 1);
  EXPECT_EQ(sidelobe::acf_bitparallel(seq("+-")).values, (std::vector<std::int64_t>{2, -1}));
  EXPECT_EQ(sidelobe::correlation_measure(seq("+-"), 2).value, 1);

  EXPECT_EQ(sidelobe::acf_bitparallel(BinarySequence::ones(5)).values,
            (std::vector<std::int64_t>{5, 4, 3, 2, 1}));
  EXPECT_EQ(sidelobe::psl(seq("+++--+-")), 1);                  // Barker 7
  EXPECT_EQ(sidelobe::psl(seq("+++++--++-+-+")), 1);            // Barker 13
  EXPECT_FALSE(sidelobe::acf_naive(seq("+")).psl.has_value());
  EXPECT_THROW(sidelobe::psl(seq("-")), std::domain_error);
}

TEST(Correlation, MethodsAgreeWithOracle) {
  std::mt19937_64 gen(12345);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 700)(gen);
    const auto s = sidelobe::CounterRng::sequence(77, trial, n);
    const auto want = oracle_values(s);
    for (auto m : {AcfMethod::naive, AcfMethod::bitparallel, AcfMethod::fft}) {
      const auto got = sidelobe::acf(s, m);
      ASSERT_EQ(got.values, want) << "n=" << n;
    }
    for (std::size_t u : {std::size_t{0}, n / 2, n - 1}) EXPECT_EQ(sidelobe::correlation_at(s, u), want[u]);
  }
}

TEST(Correlation, FftMatchesAtLargeLength) {
  for (std::size_t n : {4096U, 10007U, 65536U}) {
    const auto s = sidelobe::CounterRng::sequence(5, n, n);
    const auto b = sidelobe::acf_bitparallel(s);
    const auto f = sidelobe::acf_fft(s);
    EXPECT_EQ(b, f);
    EXPECT_EQ(sidelobe::psl(s), *b.psl);
  }
}

TEST(Correlation, ProfileInvariants) {
  for (std::size_t n = 1; n < 150; n += 7) {
    const auto s = sidelobe::CounterRng::sequence(21, n, n);
    const auto p = sidelobe::acf_bitparallel(s);
    ASSERT_EQ(p.values[0], static_cast<std::int64_t>(n));
    for (std::size_t u = 0; u < n; ++u) {
      const auto room = static_cast<std::int64_t>(n - u);
      EXPECT_LE(std::abs(p.values[u]), room);
      EXPECT_EQ((p.values[u] - room) % 2, 0);
    }
    // Negation and reversal keep every C_u; alternation flips odd shifts.
    EXPECT_EQ(sidelobe::acf_bitparallel(s.negated()).values, p.values);
    EXPECT_EQ(sidelobe::acf_bitparallel(s.reversed()).values, p.values);
    const auto alt = sidelobe::acf_bitparallel(s.alternated()).values;
    for (std::size_t u = 0; u < n; ++u) EXPECT_EQ(alt[u], u % 2 ? -p.values[u] : p.values[u]);
  }
}

TEST(Correlation, RepairFixesPerturbedValues) {
  const auto s = sidelobe::CounterRng::sequence(8, 0, 300);
  const auto truth = sidelobe::acf_naive(s);
  std::vector<double> raw(truth.values.begin(), truth.values.end());
  raw[3] += 0.4;    // far from an integer
  raw[10] += 1.0;   // wrong parity
  raw[299] = 7.0;   // out of range
  raw[50] += 0.1;   // harmless noise
  const auto fixed = sidelobe::detail::repair_profile(s, raw);
  EXPECT_EQ(fixed.values, truth.values);
  EXPECT_EQ(fixed.psl, truth.psl);
  EXPECT_EQ(fixed.corrected_shifts, 3U);
}

TEST(Correlation, MeasureExamples) {
  const auto r = sidelobe::correlation_measure(seq("+++"), 2);
  EXPECT_EQ(r.value, 2);
  EXPECT_EQ(r.shifts, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.prefix, 2U);
  EXPECT_THROW(sidelobe::correlation_measure(seq("+++"), 1), std::invalid_argument);
  EXPECT_THROW(sidelobe::correlation_measure(seq("+++"), 4), std::invalid_argument);
  const auto big = sidelobe::CounterRng::sequence(1, 0, 4000);
  EXPECT_THROW(sidelobe::correlation_measure(big, 5), sidelobe::BudgetExceeded);
}

TEST(Correlation, MeasureMatchesBruteForce) {
  for (int n = 2; n <= 11; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto s = sidelobe::CounterRng::sequence(99, 100 * n + trial, n);
      for (int r = 2; r <= std::min(n, 4); ++r) {
        const auto got = sidelobe::correlation_measure(s, r);
        ASSERT_EQ(got.value, brute_measure(s, r)) << "n=" << n << " r=" << r;
        EXPECT_EQ(sidelobe::partial_product_sum(s, got.shifts, got.prefix), got.value);
      }
    }
  }
}

TEST(Correlation, PslAtMostSecondMeasure) {
  for (int n = 2; n <= 60; n += 3) {
    const auto s = sidelobe::CounterRng::sequence(4, n, n);
    EXPECT_LE(sidelobe::psl(s), sidelobe::correlation_measure(s, 2).value);
  }
}
