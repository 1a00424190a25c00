// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#include "sidelobe/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "sidelobe/bounds.hpp"
#include "sidelobe/correlation.hpp"
#include "sidelobe/rng.hpp"

namespace sidelobe::mc {

namespace {

void check_config(const SampleConfig& cfg) {
  if (cfg.trials == 0) throw std::invalid_argument("trials must be positive");
  if (cfg.n < 1) throw std::invalid_argument("sequence length must be positive");
}

// Evaluates fn(trial) for every trial; each worker owns a contiguous slice of
// the output, so the result is identical for any worker count.
template <class T, class Fn>
std::vector<T> run_trials(const SampleConfig& cfg, Fn fn) {
  std::vector<T> out(cfg.trials);
  const auto workers = static_cast<std::uint64_t>(std::max(1U, cfg.workers));
  const std::uint64_t chunk = (cfg.trials + workers - 1) / workers;
  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) out[i] = fn(i);
  };
  if (workers == 1) {
    work(0, cfg.trials);
    return out;
  }
  std::vector<std::jthread> pool;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t begin = w * chunk;
    const std::uint64_t end = std::min(cfg.trials, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(work, begin, end);
  }
  pool.clear();
  return out;
}

double ratio_scale(std::size_t n) {
  const auto dn = static_cast<double>(n);
  return std::sqrt(dn * std::log(dn));
}

double quantile_sorted(const std::vector<double>& sorted, double level) {
  if (sorted.size() == 1) return sorted.front();
  const double pos = level * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

TailEstimate wilson(std::uint64_t hits, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("wilson interval needs trials > 0");
  if (hits > trials) throw std::invalid_argument("hits exceed trials");
  const auto n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  TailEstimate t;
  t.trials = trials;
  t.hits = hits;
  t.estimate = p;
  t.z = z;
  t.ci_lo = hits == 0 ? 0.0 : std::max(0.0, centre - half);
  t.ci_hi = hits == trials ? 1.0 : std::min(1.0, centre + half);
  t.ci_lo = std::min(t.ci_lo, p);
  t.ci_hi = std::max(t.ci_hi, p);
  return t;
}

std::vector<std::int64_t> sample_psl(const SampleConfig& cfg) {
  check_config(cfg);
  if (cfg.n < 2) throw std::invalid_argument("peak sidelobe level needs n >= 2");
  return run_trials<std::int64_t>(cfg, [&](std::uint64_t i) {
    return psl(CounterRng::sequence(cfg.seed, i, cfg.n));
  });
}

EmpiricalDistribution summarize_psl(std::span<const std::int64_t> psl_values, double scale, std::uint64_t seed) {
  if (psl_values.empty()) throw std::invalid_argument("empty sample");
  EmpiricalDistribution d;
  d.count = psl_values.size();
  d.seed = seed;
  std::vector<double> ratios(psl_values.size());
  for (std::size_t i = 0; i < ratios.size(); ++i) ratios[i] = static_cast<double>(psl_values[i]) / scale;

  double sum = 0.0;
  for (double r : ratios) sum += r;
  d.mean = sum / static_cast<double>(d.count);
  double ss = 0.0;
  for (double r : ratios) ss += (r - d.mean) * (r - d.mean);
  d.variance = d.count > 1 ? ss / static_cast<double>(d.count - 1) : 0.0;
  d.std_error = std::sqrt(d.variance / static_cast<double>(d.count));

  const auto [lo, hi] = std::minmax_element(psl_values.begin(), psl_values.end());
  const std::size_t bins = static_cast<std::size_t>(*hi - *lo + 1);
  d.histogram.counts.assign(bins, 0);
  d.histogram.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) {
    d.histogram.edges[b] = (static_cast<double>(*lo) - 0.5 + static_cast<double>(b)) / scale;
  }
  for (auto m : psl_values) ++d.histogram.counts[static_cast<std::size_t>(m - *lo)];

  std::sort(ratios.begin(), ratios.end());
  for (double level : {0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99}) {
    d.quantiles.emplace_back(level, quantile_sorted(ratios, level));
  }
  return d;
}

EmpiricalDistribution sample_psl_ratio(const SampleConfig& cfg) {
  const auto values = sample_psl(cfg);
  return summarize_psl(values, ratio_scale(cfg.n), cfg.seed);
}

std::vector<TailEstimate> estimate_tail_single_curve(const SampleConfig& cfg, std::size_t u,
                                                     std::span<const double> lambdas, double z) {
  check_config(cfg);
  if (u == 0 || u >= cfg.n) throw std::invalid_argument("shift must satisfy 0 < u < n");
  const auto values = run_trials<std::int64_t>(cfg, [&](std::uint64_t i) {
    return std::abs(correlation_at(CounterRng::sequence(cfg.seed, i, cfg.n), u));
  });
  std::vector<TailEstimate> out;
  for (double lambda : lambdas) {
    std::uint64_t hits = 0;
    for (auto c : values) hits += static_cast<double>(c) >= lambda ? 1 : 0;
    out.push_back(wilson(hits, cfg.trials, z));
  }
  return out;
}

TailEstimate estimate_tail_single(const SampleConfig& cfg, std::size_t u, double lambda, double z) {
  const double l[] = {lambda};
  return estimate_tail_single_curve(cfg, u, l, z).front();
}

TailEstimate estimate_tail_joint(const SampleConfig& cfg, std::size_t u, std::size_t v, double lambda, double z) {
  check_config(cfg);
  if (!(0 < u && u < v && v < cfg.n)) throw std::invalid_argument("shifts must satisfy 0 < u < v < n");
  const auto hit = run_trials<std::uint8_t>(cfg, [&](std::uint64_t i) -> std::uint8_t {
    const auto seq = CounterRng::sequence(cfg.seed, i, cfg.n);
    return static_cast<double>(std::abs(correlation_at(seq, u))) >= lambda &&
           static_cast<double>(std::abs(correlation_at(seq, v))) >= lambda;
  });
  std::uint64_t hits = 0;
  for (auto h : hit) hits += h;
  return wilson(hits, cfg.trials, z);
}

JointFinding classify_joint(const TailEstimate& est, double bound) {
  if (est.hits == 0) return JointFinding::zero_hits;
  if (est.ci_hi <= bound) return JointFinding::below_bound;
  if (est.ci_lo > bound) return JointFinding::above_bound;
  return JointFinding::consistent;
}

std::string to_string(JointFinding f) {
  switch (f) {
    case JointFinding::zero_hits:
      return "zero_hits_bound_not_contradicted";
    case JointFinding::below_bound:
      return "estimate_below_bound";
    case JointFinding::consistent:
      return "consistent_with_bound";
    case JointFinding::above_bound:
      return "estimate_above_bound";
  }
  return "unknown";
}

std::vector<ConcentrationRow> concentration_profile(std::span<const std::int64_t> psl_values, std::size_t n,
                                                    std::span<const double> thetas) {
  if (thetas.empty()) throw std::invalid_argument("theta grid is empty");
  if (psl_values.empty()) throw std::invalid_argument("empty sample");
  const auto trials = static_cast<double>(psl_values.size());
  double sum = 0.0;
  for (auto m : psl_values) sum += static_cast<double>(m);
  const double mean = sum / trials;
  std::vector<ConcentrationRow> rows;
  for (double theta : thetas) {
    std::uint64_t hits = 0;
    for (auto m : psl_values) hits += std::abs(static_cast<double>(m) - mean) >= theta ? 1 : 0;
    ConcentrationRow row;
    row.theta = theta;
    row.empirical = static_cast<double>(hits) / trials;
    row.std_error = std::sqrt(row.empirical * (1.0 - row.empirical) / trials);
    row.bound = bounds::mcdiarmid_bound(static_cast<double>(n), theta);
    row.flag = row.empirical - row.bound > 3.0 * row.std_error;
    rows.push_back(row);
  }
  return rows;
}

std::vector<ConcentrationRow> concentration_profile(const SampleConfig& cfg, std::span<const double> thetas) {
  if (thetas.empty()) throw std::invalid_argument("theta grid is empty");
  const auto values = sample_psl(cfg);
  return concentration_profile(values, cfg.n, thetas);
}

std::vector<TrendRow> trend_report(std::span<const std::size_t> ns, std::uint64_t trials, std::uint64_t seed,
                                   unsigned workers) {
  if (ns.empty()) throw std::invalid_argument("trend needs at least one length");
  std::vector<TrendRow> rows;
  for (std::size_t n : ns) {
    if (n < 2) throw std::invalid_argument("trend lengths must be >= 2");
    // Each length draws from its own stream so rows are independent.
    const SampleConfig cfg{n, trials, CounterRng::mix(seed + CounterRng::kGamma * n), workers};
    const auto dist = sample_psl_ratio(cfg);
    TrendRow row;
    row.n = n;
    row.mean = dist.mean;
    row.std_error = dist.std_error;
    row.lower_bound = n >= 3 ? bounds::expectation_lower(static_cast<double>(n))
                             : std::numeric_limits<double>::quiet_NaN();
    row.sqrt2 = std::numbers::sqrt2;
    rows.push_back(row);
  }
  return rows;
}

TailEstimate psl_event_rate(const SampleConfig& cfg, double lambda, double z) {
  const auto values = sample_psl(cfg);
  std::uint64_t hits = 0;
  for (auto m : values) hits += static_cast<double>(m) >= lambda ? 1 : 0;
  return wilson(hits, cfg.trials, z);
}

TailEstimate psl_lower_event_rate(const SampleConfig& cfg, double z) {
  if (cfg.n <= 2) throw std::invalid_argument("psl_lower_event_rate requires n > 2");
  return psl_event_rate(cfg, bounds::lambda_n(static_cast<double>(cfg.n)), z);
}

}  // namespace sidelobe::mc
