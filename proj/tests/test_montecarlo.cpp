// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "sidelobe/bounds.hpp"
#include "sidelobe/correlation.hpp"
#include "sidelobe/exact.hpp"
#include "sidelobe/montecarlo.hpp"
#include "sidelobe/rng.hpp"

namespace mc = sidelobe::mc;
using sidelobe::CounterRng;

TEST(CounterRng, KnownWords) {
  // SplitMix64 finalizer reference values.
  EXPECT_EQ(CounterRng::mix(0), 0U);
  EXPECT_EQ(CounterRng::mix(1), 0x5692161d100b05e5ULL);
  EXPECT_EQ(CounterRng::sequence(3, 4, 70).words()[1], CounterRng::word(3, 4, 1) & 0x3f);
}

TEST(CounterRng, SmallLengthsAreUniform) {
  // Chi-square over all 2^n patterns; 99.9% critical values for 15 and 63 dof.
  const std::vector<std::pair<std::size_t, double>> cases{{4, 37.70}, {6, 103.44}};
  for (const auto& [n, crit] : cases) {
    const std::uint64_t cells = 1ULL << n;
    const std::uint64_t draws = 4000 * cells;
    std::vector<std::uint64_t> count(cells, 0);
    for (std::uint64_t i = 0; i < draws; ++i) ++count[CounterRng::sequence(2024, i, n).words()[0]];
    double chi = 0;
    for (auto c : count) chi += (c - 4000.0) * (c - 4000.0) / 4000.0;
    EXPECT_LT(chi, crit) << "n=" << n;
  }
}

TEST(MonteCarlo, Wilson) {
  const auto w = mc::wilson(0, 100);
  EXPECT_EQ(w.ci_lo, 0.0);
  EXPECT_GT(w.ci_hi, 0.0);
  const auto h = mc::wilson(50, 100);
  EXPECT_NEAR(h.estimate, 0.5, 1e-15);
  EXPECT_NEAR(h.ci_lo + h.ci_hi, 1.0, 1e-12);
  // Textbook value: 81 of 263 at 95%.
  const auto t = mc::wilson(81, 263);
  EXPECT_NEAR(t.ci_lo, 0.2553, 1e-4);
  EXPECT_NEAR(t.ci_hi, 0.3662, 1e-4);
}

TEST(MonteCarlo, WorkerCountDoesNotChangeResults) {
  const mc::SampleConfig one{257, 3000, 11, 1};
  auto eight = one;
  eight.workers = 8;
  EXPECT_EQ(mc::sample_psl(one), mc::sample_psl(eight));
  const auto a = mc::trend_report(std::vector<std::size_t>{64, 100}, 500, 3, 1);
  const auto b = mc::trend_report(std::vector<std::size_t>{64, 100}, 500, 3, 8);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].mean, b[i].mean);
    EXPECT_EQ(a[i].std_error, b[i].std_error);
  }
}

TEST(MonteCarlo, SamplesAreTrialSequences) {
  const mc::SampleConfig cfg{40, 50, 5, 2};
  const auto v = mc::sample_psl(cfg);
  for (std::uint64_t i = 0; i < cfg.trials; ++i) EXPECT_EQ(v[i], sidelobe::psl(CounterRng::sequence(5, i, 40)));
}

TEST(MonteCarlo, SingleTailCoversExactValue) {
  // 20 seeds at 99%: a handful of misses would already be suspicious.
  const auto exact = sidelobe::exact::exact_tail_single(16, 1, sidelobe::bounds::lambda_n(16));
  const double p = sidelobe::to_double(exact);
  int misses = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto est = mc::estimate_tail_single({16, 20000, seed, 1}, 1, sidelobe::bounds::lambda_n(16), mc::kZ99);
    misses += !est.contains(p);
  }
  EXPECT_LE(misses, 2);
}

TEST(MonteCarlo, TailCurveIsMonotone) {
  const std::vector<double> lambdas{0, 2, 4, 6, 8, 10, 12};
  const auto curve = mc::estimate_tail_single_curve({64, 4000, 9, 2}, 3, lambdas);
  ASSERT_EQ(curve.size(), lambdas.size());
  EXPECT_EQ(curve[0].estimate, 1.0);
  for (std::size_t i = 1; i < curve.size(); ++i) EXPECT_LE(curve[i].hits, curve[i - 1].hits);
  // Same seed, single threshold: the same sample set.
  EXPECT_EQ(mc::estimate_tail_single({64, 4000, 9, 1}, 3, 6).hits, curve[3].hits);
}

TEST(MonteCarlo, JointTailAgainstExact) {
  const int n = 12;
  const double lambda = 4;
  const auto table = sidelobe::exact::joint_tail_table(n, lambda);
  const double p = sidelobe::to_double(table.joint_probability(2, 5));
  const auto est = mc::estimate_tail_joint({12, 40000, 17, 2}, 2, 5, lambda, mc::kZ99);
  EXPECT_TRUE(est.contains(p)) << est.estimate << " vs " << p;
  EXPECT_EQ(mc::classify_joint(mc::wilson(0, 100), 0.5), mc::JointFinding::zero_hits);
  EXPECT_EQ(mc::classify_joint(mc::wilson(90, 100), 0.5), mc::JointFinding::above_bound);
  EXPECT_EQ(mc::classify_joint(mc::wilson(10, 100), 0.5), mc::JointFinding::below_bound);
  EXPECT_EQ(mc::classify_joint(mc::wilson(50, 100), 0.5), mc::JointFinding::consistent);
}

TEST(MonteCarlo, RatioDistributionSummary) {
  const mc::SampleConfig cfg{128, 2000, 1, 2};
  const auto d = mc::sample_psl_ratio(cfg);
  EXPECT_EQ(d.count, 2000U);
  std::uint64_t total = 0;
  for (auto c : d.histogram.counts) total += c;
  EXPECT_EQ(total, 2000U);
  EXPECT_EQ(d.histogram.edges.size(), d.histogram.counts.size() + 1);
  ASSERT_EQ(d.quantiles.size(), 7U);
  for (std::size_t i = 1; i < d.quantiles.size(); ++i) EXPECT_LE(d.quantiles[i - 1].second, d.quantiles[i].second);
  EXPECT_GT(d.mean, 0.5);
  EXPECT_LT(d.mean, 2.0);
  EXPECT_NEAR(d.std_error, std::sqrt(d.variance / 2000), 1e-15);
}

TEST(MonteCarlo, ConcentrationProfileAgainstExact) {
  const int n = 14;
  const auto thetas = sidelobe::exact::theta_grid(n, 8);
  const auto rows = mc::concentration_profile({14, 20000, 6, 2}, thetas);
  for (const auto& r : rows) {
    EXPECT_FALSE(r.flag) << r.theta;
    EXPECT_NEAR(r.bound, sidelobe::bounds::mcdiarmid_bound(n, r.theta), 1e-15);
  }
}

TEST(MonteCarlo, EventRateLowerBound) {
  const auto r = mc::psl_lower_event_rate({64, 3000, 4, 2});
  EXPECT_EQ(r.trials, 3000U);
  EXPECT_GE(r.estimate, 0.0);
  EXPECT_LE(r.estimate, 1.0);
}
