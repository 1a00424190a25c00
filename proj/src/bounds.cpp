// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#include "sidelobe/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sidelobe::bounds {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2 pi))

double log_double_factorial(int k) {
  return std::lgamma(2.0 * k + 1.0) - std::lgamma(k + 1.0) - k * std::numbers::ln2;
}

// log(n!) - log(sqrt(2 pi n) (n/e)^n), Loader's Stirling remainder.
double stirlerr(double n) {
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  if (n <= 15.0) return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - kLogSqrt2Pi;
  const double nn = n * n;
  if (n > 500) return (s0 - s1 / nn) / n;
  if (n > 80) return (s0 - (s1 - s2 / nn) / nn) / n;
  if (n > 35) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// x log(x/m) + m - x without cancellation near x = m.
double deviance(double x, double m) {
  if (std::abs(x - m) < 0.1 * (x + m)) {
    double v = (x - m) / (x + m);
    double s = (x - m) * v;
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double next = s + ej / (2 * j + 1);
      if (next == s) return next;
      s = next;
    }
    return s;
  }
  return x * std::log(x / m) + m - x;
}

// Pr[K = k] for K ~ Binomial(n, 1/2).
double binomial_half_pmf(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0.0;
  const auto dn = static_cast<double>(n);
  if (k == 0 || k == n) return std::exp(-dn * std::numbers::ln2);
  const auto dk = static_cast<double>(k);
  const double half = 0.5 * dn;
  const double lc = stirlerr(dn) - stirlerr(dk) - stirlerr(dn - dk) - deviance(dk, half) - deviance(dn - dk, half);
  const double lf = 2.0 * kLogSqrt2Pi + std::log(dk) + std::log1p(-dk / dn);
  return std::exp(lc - 0.5 * lf);
}

double log_sum_exp(std::initializer_list<double> xs) {
  const double m = std::max(xs);
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace

double lambda_n(double n) {
  if (n < 1) throw std::domain_error("lambda_n requires n >= 1");
  return std::sqrt(2.0 * n * std::log(n));
}

double xi_n(double n, double u) {
  if (!(u >= 0 && u < n)) throw std::domain_error("xi_n requires 0 <= u < n");
  return std::sqrt(2.0 * n * std::log(n) / (n - u));
}

double phi_tail(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

Sandwich gaussian_sandwich_check(double z) {
  if (!(z > 0)) throw std::domain_error("gaussian sandwich requires z > 0");
  const double upper = std::exp(-0.5 * z * z) / (std::sqrt(2.0 * std::numbers::pi) * z);
  // Mills-ratio lower bound. With 1/z^3 in place of 1/z^2 it would exceed
  // Phi(-z) for every z >= 1.8.
  return Sandwich{upper * (1.0 - 1.0 / (z * z)), phi_tail(z), upper};
}

double lower_bound_single(double n) {
  if (!(n > 2)) throw std::domain_error("lower_bound_single requires n > 2");
  return 1.0 / (5.0 * n * std::sqrt(std::log(n)));
}

double upper_bound_joint(double n) {
  if (!(n >= 1)) throw std::domain_error("upper_bound_joint requires n >= 1");
  return 23.0 / (n * n);
}

MarkovBound markov_joint_bound(double n, int p, int h) {
  if (!(n >= 3)) throw std::domain_error("markov bound requires n >= 3");
  if (p < 1) throw std::domain_error("markov bound requires p >= 1");
  if (h < 0 || h >= p) throw std::domain_error("markov bound requires 0 <= h < p");
  const double log_n = std::log(n);
  MarkovBound b;
  b.p = p;
  b.h = h;
  b.leading = std::exp(2.0 * log_double_factorial(p) - 2.0 * p * std::log(2.0 * log_n));
  const double log_h_term = h == 0 ? 0.0 : 2.0 * h * std::log(static_cast<double>(p)) + 4.0 * h * std::log(8.0 * h);
  b.k1 = std::exp(log_h_term - log_n / 3.0);
  b.k2 = std::exp(3.0 * p * std::log(8.0 * p) - (h + 1.0) * log_n / 3.0);
  b.value = b.leading * (1.0 + b.k1 + b.k2);
  return b;
}

MarkovBound markov_joint_bound_default(double n) {
  if (!(n >= 3)) throw std::domain_error("markov bound requires n >= 3");
  const double log_n = std::log(n);
  const int p = static_cast<int>(std::floor(log_n));
  const int h = static_cast<int>(std::floor(14.0 * std::log(log_n)));
  if (h >= p) {
    throw std::domain_error("default parameters p = " + std::to_string(p) + ", h = " + std::to_string(h) +
                            " violate h < p at this n");
  }
  return markov_joint_bound(n, p, h);
}

double markov_log_margin(double log_n, int p, int h) {
  if (p < 1 || h < 0 || h >= p) throw std::domain_error("markov bound requires 0 <= h < p");
  const double log_leading = 2.0 * log_double_factorial(p) - 2.0 * p * std::log(2.0 * log_n);
  const double log_h_term = h == 0 ? 0.0 : 2.0 * h * std::log(static_cast<double>(p)) + 4.0 * h * std::log(8.0 * h);
  const double log_k1 = log_h_term - log_n / 3.0;
  const double log_k2 = 3.0 * p * std::log(8.0 * p) - (h + 1.0) * log_n / 3.0;
  const double log_bound = log_leading + log_sum_exp({0.0, log_k1, log_k2});
  return log_bound - (std::log(23.0) - 2.0 * log_n);
}

std::optional<double> markov_default_crossover(double log_n_start, double log_n_stop, double factor) {
  if (!(factor > 1.0)) throw std::invalid_argument("scan factor must exceed 1");
  for (double log_n = std::max(log_n_start, 1.0); log_n <= log_n_stop; log_n *= factor) {
    const int p = static_cast<int>(std::floor(log_n));
    const int h = static_cast<int>(std::floor(14.0 * std::log(log_n)));
    if (h < 0 || h >= p) continue;
    if (markov_log_margin(log_n, p, h) <= 0.0) return log_n;
  }
  return std::nullopt;
}

double mcdiarmid_bound(double n, double theta) {
  if (!(theta >= 0)) throw std::domain_error("mcdiarmid bound requires theta >= 0");
  if (!(n > 0)) throw std::domain_error("mcdiarmid bound requires n > 0");
  return 2.0 * std::exp(-theta * theta / (2.0 * n));
}

double psl_tail_lower(double n) {
  if (!(n > 2)) throw std::domain_error("psl_tail_lower requires n > 2");
  return 1.0 / (10.0 * std::pow(std::log(n), 1.5));
}

double expectation_lower(double n) {
  if (!(n >= 3)) throw std::domain_error("expectation_lower requires n >= 3");
  const double log_n = std::log(n);
  return std::numbers::sqrt2 - std::sqrt((3.0 * std::log(log_n) + 2.0 * std::log(20.0)) / log_n);
}

double binomial_two_sided_tail(std::int64_t n, double threshold) {
  if (n < 0) throw std::domain_error("binomial tail requires n >= 0");
  if (threshold <= 0) return 1.0;
  // |2k - n| >= t splits into two mirror-image one-sided tails.
  auto hits = [&](std::int64_t k) { return static_cast<double>(2 * k - n) >= threshold; };
  auto k0 = static_cast<std::int64_t>(std::ceil((static_cast<double>(n) + threshold) / 2.0));
  while (k0 > 0 && hits(k0 - 1)) --k0;
  while (k0 <= n && !hits(k0)) ++k0;
  // Terms fall monotonically past the mean, so the sum stops once they no
  // longer register; this keeps the cost independent of n.
  double sum = 0.0;
  double comp = 0.0;
  for (std::int64_t k = k0; k <= n; ++k) {
    const double term = binomial_half_pmf(n, k);
    if (2 * k > n && (term == 0.0 || term < 1e-20 * sum)) break;
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return std::min(1.0, 2.0 * (sum + comp));
}

double cramer_ratio(std::int64_t n, double theta) {
  if (!(theta > 0)) throw std::domain_error("cramer_ratio requires theta > 0");
  if (n < 1) throw std::domain_error("cramer_ratio requires n >= 1");
  const double t = theta * std::sqrt(static_cast<double>(n));
  if (t > static_cast<double>(n)) throw std::domain_error("theta sqrt(n) exceeds n; event is impossible");
  return binomial_two_sided_tail(n, t) / (2.0 * phi_tail(theta));
}

StirlingCheck stirling_check(int k) {
  if (k < 1) throw std::domain_error("stirling_check requires k >= 1");
  const double dk = k;
  const double core = dk * std::log(dk) - dk;
  StirlingCheck s;
  s.k = k;
  s.log_lower = 0.5 * std::log(2.0 * std::numbers::pi * dk) + core;
  s.log_exact = std::lgamma(dk + 1.0);
  s.log_upper = 0.5 * std::log(3.0 * std::numbers::pi * dk) + core;
  return s;
}

std::int64_t max_small_shift(std::int64_t n) {
  if (n <= 2) throw std::domain_error("max_small_shift requires n > 2");
  const auto dn = static_cast<double>(n);
  return static_cast<std::int64_t>(std::floor(dn / std::log(dn)));
}

SingleTailCrossover single_tail_crossover(std::span<const std::int64_t> ns) {
  SingleTailCrossover out;
  for (std::int64_t n : ns) {
    const auto u = max_small_shift(n);
    const double g = 2.0 * phi_tail(xi_n(static_cast<double>(n), static_cast<double>(u)));
    const double b = lower_bound_single(static_cast<double>(n));
    out.rows.push_back({n, u, g, b, g >= b});
  }
  for (std::size_t i = out.rows.size(); i-- > 0;) {
    if (!out.rows[i].holds) break;
    out.crossover = out.rows[i].n;
  }
  return out;
}

}  // namespace sidelobe::bounds
