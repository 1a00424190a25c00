// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sidelobe/bounds.hpp"

namespace bounds = sidelobe::bounds;

namespace {

// Two-sided binomial tail by direct summation in long double.
double direct_tail(int n, double t) {
  long double p = 0;
  for (int k = 0; k <= n; ++k) {
    if (std::abs(2 * k - n) + 1e-9 < t) continue;
    p += std::exp(std::lgamma(n + 1.0L) - std::lgamma(k + 1.0L) - std::lgamma(n - k + 1.0L) - n * std::log(2.0L));
  }
  return static_cast<double>(p);
}

}  // namespace

TEST(Bounds, Thresholds) {
  EXPECT_NEAR(bounds::lambda_n(16), std::sqrt(32 * std::log(16.0)), 1e-12);
  EXPECT_NEAR(bounds::xi_n(16, 1), std::sqrt(32 * std::log(16.0) / 15), 1e-12);
  EXPECT_NEAR(bounds::phi_tail(0), 0.5, 1e-15);
  EXPECT_NEAR(bounds::phi_tail(2), 0.022750131948179195, 1e-15);
  EXPECT_NEAR(bounds::lower_bound_single(100), 9.32e-4, 5e-6);
  EXPECT_NEAR(bounds::upper_bound_joint(10), 0.23, 1e-15);
  EXPECT_NEAR(bounds::mcdiarmid_bound(50, 10), 2 / std::numbers::e, 1e-12);
  EXPECT_THROW(bounds::xi_n(4, 4), std::domain_error);
  EXPECT_THROW(bounds::lower_bound_single(2), std::domain_error);
}

TEST(Bounds, GaussianSandwich) {
  for (int i = 1; i <= 80; ++i) EXPECT_TRUE(bounds::gaussian_sandwich_check(0.1 * i).holds()) << 0.1 * i;
  for (double z = 8; z <= 30; z += 0.5) EXPECT_TRUE(bounds::gaussian_sandwich_check(z).holds()) << z;
  EXPECT_LT(bounds::gaussian_sandwich_check(0.5).lower, 0.0);
  const auto s8 = bounds::gaussian_sandwich_check(8);
  EXPECT_LT((s8.upper - s8.lower) / s8.value, 1.0 / 60);
  // The cubic correction is not a valid lower bound.
  const auto s2 = bounds::gaussian_sandwich_check(2);
  EXPECT_GT(s2.upper * (1 - 1.0 / 8), s2.value);
  EXPECT_THROW(bounds::gaussian_sandwich_check(0), std::domain_error);
}

TEST(Bounds, Stirling) {
  for (int k = 1; k <= 2000; ++k) ASSERT_TRUE(bounds::stirling_check(k).holds()) << k;
}

TEST(Bounds, BinomialTailMatchesDirectSum) {
  for (int n : {1, 2, 7, 16, 50, 301, 1000}) {
    for (double t : {0.0, 1.0, 2.5, std::sqrt(n), 2 * std::sqrt(n), static_cast<double>(n)}) {
      const double want = direct_tail(n, t);
      EXPECT_NEAR(bounds::binomial_two_sided_tail(n, t), want, 1e-13 + 1e-11 * want) << n << " " << t;
    }
  }
  // 242 / 32768 over 15 trials at the n = 16 threshold.
  EXPECT_NEAR(bounds::binomial_two_sided_tail(15, bounds::lambda_n(16)), 242.0 / 32768, 1e-15);
}

TEST(Bounds, CramerRatio) {
  EXPECT_NEAR(bounds::cramer_ratio(4, 1), 1.9697, 1e-4);
  EXPECT_NEAR(bounds::cramer_ratio(100000, 2), 1.0, 0.01);
  EXPECT_THROW(bounds::cramer_ratio(4, 3), std::domain_error);
}

TEST(Bounds, MarkovBound) {
  const auto b = bounds::markov_joint_bound(1000, 2, 1);
  const double L = std::log(1000.0);
  EXPECT_NEAR(b.leading, 9 / std::pow(2 * L, 4), 1e-15);
  EXPECT_NEAR(b.k1, 4 * std::pow(8.0, 4) / 10, 1e-9);
  EXPECT_NEAR(b.k2, std::pow(16.0, 6) / 100, 1e-6);
  EXPECT_NEAR(b.value, b.leading * (1 + b.k1 + b.k2), 1e-12 * b.value);
  EXPECT_THROW(bounds::markov_joint_bound(1000, 2, 2), std::domain_error);
  // The default parameters have h >= p at every practical length.
  EXPECT_THROW(bounds::markov_joint_bound_default(1e6), std::domain_error);
  // Log-space margin agrees with the direct bound where both are finite.
  EXPECT_NEAR(bounds::markov_log_margin(L, 2, 1), std::log(b.value) - std::log(23 / 1e6), 1e-9);
  const auto cross = bounds::markov_default_crossover(3, 1e6, 1.01);
  ASSERT_TRUE(cross.has_value());
  EXPECT_GT(*cross, 1e4);
  EXPECT_LT(*cross, 1e5);
}

TEST(Bounds, ExpectationAndTailLower) {
  EXPECT_NEAR(bounds::psl_tail_lower(std::exp(4.0)), 1 / 80.0, 1e-15);
  const double n = 1e6;
  const double L = std::log(n);
  EXPECT_NEAR(bounds::expectation_lower(n), std::sqrt(2) - std::sqrt((3 * std::log(L) + 2 * std::log(20.0)) / L),
              1e-14);
}

TEST(Bounds, SingleTailCrossover) {
  EXPECT_EQ(bounds::max_small_shift(16), 5);
  EXPECT_EQ(bounds::max_small_shift(4096), 492);
  const std::vector<std::int64_t> ns{1 << 8, 1 << 12};
  const auto c = bounds::single_tail_crossover(ns);
  ASSERT_EQ(c.rows.size(), 2U);
  EXPECT_EQ(c.rows[1].worst_u, 492);
  EXPECT_NEAR(c.rows[1].gaussian, 2 * bounds::phi_tail(bounds::xi_n(4096, 492)), 1e-15);
  for (const auto& r : c.rows) EXPECT_EQ(r.holds, r.gaussian >= r.bound);
}
