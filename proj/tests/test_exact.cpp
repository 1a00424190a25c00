// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "sidelobe/bounds.hpp"
#include "sidelobe/errors.hpp"
#include "sidelobe/exact.hpp"

namespace exact = sidelobe::exact;
using sidelobe::Rational;

namespace {

std::map<std::int64_t, std::uint64_t> brute_distribution(int n) {
  std::map<std::int64_t, std::uint64_t> d;
  for (std::uint64_t b = 0; b < (1ULL << n); ++b) ++d[oracle::peak_sidelobe(oracle::signs_from_bits(n, b))];
  return d;
}

using Dist = std::map<std::int64_t, std::uint64_t>;

}  // namespace

TEST(Exact, DistributionFixedValues) {
  const auto d3 = exact::exact_psl_distribution(3);
  EXPECT_EQ(d3.distribution, (Dist{{1, 4}, {2, 4}}));
  EXPECT_EQ(d3.expectation, Rational(3, 2));
  const auto d6 = exact::exact_psl_distribution(6);
  EXPECT_EQ(d6.distribution, (Dist{{2, 28}, {3, 28}, {4, 4}, {5, 4}}));
  EXPECT_EQ(d6.expectation, Rational(11, 4));
  EXPECT_EQ(d6.min_psl, 2);
  const auto d8 = exact::exact_psl_distribution(8);
  EXPECT_EQ(d8.distribution, (Dist{{2, 64}, {3, 84}, {4, 60}, {5, 40}, {6, 4}, {7, 4}}));
  EXPECT_EQ(d8.expectation, Rational(109, 32));
}

TEST(Exact, DistributionMatchesBruteForce) {
  for (int n = 2; n <= 14; ++n) {
    const auto want = brute_distribution(n);
    for (unsigned workers : {1U, 3U}) {
      const auto got = exact::exact_psl_distribution(n, workers);
      ASSERT_EQ(got.distribution, want) << "n=" << n << " workers=" << workers;
      EXPECT_EQ(got.total(), 1ULL << n);
      EXPECT_EQ(got.min_psl, want.begin()->first);
      EXPECT_EQ(got.witness.size(), static_cast<std::size_t>(n));
    }
  }
  EXPECT_THROW(exact::exact_psl_distribution(21), sidelobe::BudgetExceeded);
}

TEST(Exact, MinPslBarkerAndKnownValues) {
  const std::map<int, std::int64_t> known{{2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 2}, {7, 1}, {8, 2},
                                          {9, 2}, {10, 2}, {11, 1}, {12, 2}, {13, 1}, {14, 2}, {21, 2},
                                          {22, 3}, {25, 2}};
  for (const auto& [n, m] : known) {
    const auto r = exact::min_psl(n);
    EXPECT_EQ(r.value, m) << "n=" << n;
    EXPECT_EQ(oracle::peak_sidelobe(r.witness.signs()), m);
  }
  EXPECT_THROW(exact::min_psl(29), sidelobe::BudgetExceeded);
  EXPECT_THROW(exact::min_psl(1), std::invalid_argument);
}

TEST(Exact, MinPslMatchesExhaustive) {
  for (int n = 2; n <= 16; ++n) {
    const auto fast = exact::min_psl(n);
    const auto slow = exact::min_psl_exhaustive(n);
    EXPECT_EQ(fast.value, slow.value) << n;
    EXPECT_EQ(fast.witness, slow.witness) << n;
  }
}

TEST(Exact, SingleTail) {
  EXPECT_EQ(exact::exact_tail_single(16, 1, sidelobe::bounds::lambda_n(16)), Rational(242, 32768));
  for (int n = 3; n <= 12; ++n) {
    const double lambda = 0.5 * n;
    const auto table = exact::joint_tail_table(n, lambda);
    for (int u = 1; u < n; ++u) EXPECT_EQ(table.single_probability(u), exact::exact_tail_single(n, u, lambda));
  }
}

TEST(Exact, JointTailMatchesBruteForce) {
  const int n = 10;
  const double lambda = 3.0;
  const auto table = exact::joint_tail_table(n, lambda, 2);
  for (int u = 1; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      std::uint64_t hits = 0;
      for (std::uint64_t b = 0; b < (1ULL << n); ++b) {
        const auto c = oracle::autocorrelation(oracle::signs_from_bits(n, b));
        hits += std::labs(c[u]) >= lambda && std::labs(c[v]) >= lambda;
      }
      const Rational want(hits, 1ULL << n);
      EXPECT_EQ(table.joint_probability(u, v), want) << u << "," << v;
      EXPECT_EQ(exact::exact_tail_joint(n, u, v, lambda), want);
    }
  }
}

TEST(Exact, IndependenceOfShiftedProducts) {
  for (int n = 2; n <= 14; ++n) {
    for (int u = 1; u < n; ++u) {
      const auto r = exact::independence_check(n, u);
      EXPECT_TRUE(r.uniform) << n << "," << u;
      EXPECT_EQ(r.min_hits, 1ULL << u);
      EXPECT_EQ(r.max_hits, 1ULL << u);
    }
  }
}

TEST(Exact, ConcentrationAndGrid) {
  const auto grid = exact::theta_grid(10, 6);
  EXPECT_EQ(grid, (std::vector<double>{0, 2, 4, 6, 8, 10}));
  const auto d = exact::exact_psl_distribution(10);
  for (const auto& row : exact::concentration_check(d, grid)) EXPECT_TRUE(row.holds) << row.theta;
  // theta = 0 covers everything.
  EXPECT_EQ(d.deviation_probability(0), Rational(1));
  EXPECT_EQ(d.upper_tail(0), Rational(1));
  EXPECT_EQ(d.upper_tail(100), Rational(0));
}

TEST(Exact, Bonferroni) {
  for (int n : {8, 12, 16}) {
    const auto r = exact::bonferroni_check(n, sidelobe::bounds::lambda_n(n) / 2);
    EXPECT_TRUE(r.holds()) << n;
    EXPECT_EQ(static_cast<std::int64_t>(r.shifts.size()), sidelobe::bounds::max_small_shift(n));
  }
}
