// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Monte Carlo estimates over uniform random sequences. Every result is a
// pure function of (n, trials, seed); `workers` only changes scheduling.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sidelobe::mc {

struct SampleConfig {
  std::size_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;
/// Two-sided 99% normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

struct Histogram {
  std::vector<double> edges;  // size counts.size() + 1
  std::vector<std::uint64_t> counts;
};

struct EmpiricalDistribution {
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  Histogram histogram;
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  double std_error = 0.0;
  std::vector<std::pair<double, double>> quantiles;  // (level, value)
};

struct TailEstimate {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double estimate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double z = kZ95;

  bool contains(double p) const { return ci_lo <= p && p <= ci_hi; }
};

/// Wilson score interval for hits/trials at normal quantile z.
TailEstimate wilson(std::uint64_t hits, std::uint64_t trials, double z = kZ95);

/// Runs `trials` independent draws and returns M(A) for each, in trial order.
std::vector<std::int64_t> sample_psl(const SampleConfig& cfg);

/// Summary of a sample of ratio values; quantiles at 1,5,25,50,75,95,99%.
/// The histogram has unit-width bins in M, expressed in ratio units via `scale`.
EmpiricalDistribution summarize_psl(std::span<const std::int64_t> psl_values, double scale, std::uint64_t seed);

/// Distribution of M(A_n) / sqrt(n log n).
EmpiricalDistribution sample_psl_ratio(const SampleConfig& cfg);

/// Pr[|C_u| >= lambda], computing only shift u per trial.
TailEstimate estimate_tail_single(const SampleConfig& cfg, std::size_t u, double lambda, double z = kZ95);

/// One sample set evaluated at several thresholds.
std::vector<TailEstimate> estimate_tail_single_curve(const SampleConfig& cfg, std::size_t u,
                                                     std::span<const double> lambdas, double z = kZ95);

/// Pr[|C_u| >= lambda and |C_v| >= lambda]. Requires 0 < u < v < n.
TailEstimate estimate_tail_joint(const SampleConfig& cfg, std::size_t u, std::size_t v, double lambda,
                                 double z = kZ95);

enum class JointFinding {
  zero_hits,         // no hits; the bound is not contradicted
  below_bound,       // upper confidence limit at or below the bound
  consistent,        // interval straddles the bound
  above_bound,       // lower confidence limit above the bound
};

JointFinding classify_joint(const TailEstimate& est, double bound);
std::string to_string(JointFinding f);

struct ConcentrationRow {
  double theta = 0.0;
  double empirical = 0.0;  // fraction with |M - mean| >= theta
  double std_error = 0.0;
  double bound = 0.0;      // 2 exp(-theta^2 / (2n))
  bool flag = false;       // empirical exceeds bound by more than 3 standard errors
};

/// The sample mean stands in for E[M].
std::vector<ConcentrationRow> concentration_profile(const SampleConfig& cfg, std::span<const double> thetas);
std::vector<ConcentrationRow> concentration_profile(std::span<const std::int64_t> psl_values, std::size_t n,
                                                    std::span<const double> thetas);

struct TrendRow {
  std::size_t n = 0;
  double mean = 0.0;  // of M / sqrt(n log n)
  double std_error = 0.0;
  double lower_bound = 0.0;  // expectation_lower(n); NaN for n < 3
  double sqrt2 = 0.0;
};

std::vector<TrendRow> trend_report(std::span<const std::size_t> ns, std::uint64_t trials, std::uint64_t seed,
                                   unsigned workers = 1);

/// Pr[M(A_n) >= lambda]; the single-argument form uses lambda_n.
TailEstimate psl_lower_event_rate(const SampleConfig& cfg, double z = kZ95);
TailEstimate psl_event_rate(const SampleConfig& cfg, double lambda, double z = kZ95);

}  // namespace sidelobe::mc
