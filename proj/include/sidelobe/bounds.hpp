// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Closed-form thresholds, tail bounds and inequality checks. "log" is the
// natural logarithm everywhere.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sidelobe::bounds {

/// sqrt(2 n log n).
double lambda_n(double n);

/// sqrt(2 n log n / (n - u)). Requires 0 <= u < n.
double xi_n(double n, double u);

/// Phi(-z), the standard normal lower tail, via erfc.
double phi_tail(double z);

struct Sandwich {
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
  bool holds() const { return lower <= value && value <= upper; }
};

/// (1/(sqrt(2 pi) z))(1 - 1/z^2) e^{-z^2/2} <= Phi(-z) <= (1/(sqrt(2 pi) z)) e^{-z^2/2}.
/// Requires z > 0.
Sandwich gaussian_sandwich_check(double z);

/// 1 / (5 n sqrt(log n)). Requires n > 2.
double lower_bound_single(double n);

/// 23 / n^2.
double upper_bound_joint(double n);

struct MarkovBound {
  int p = 0;
  int h = 0;
  double leading = 0.0;  // [(2p-1)!!]^2 / (2 log n)^{2p}
  double k1 = 0.0;       // n^{-1/3} p^{2h} (8h)^{4h}
  double k2 = 0.0;       // n^{-(h+1)/3} (8p)^{3p}
  double value = 0.0;    // leading * (1 + k1 + k2)
};

/// Moment/Markov bound on the joint tail of |C_u| and |C_v| at lambda_n.
/// Requires n >= 3, p >= 1 and 0 <= h < p.
MarkovBound markov_joint_bound(double n, int p, int h);

/// p = floor(log n), h = floor(14 log log n). Throws std::domain_error when
/// these give h >= p (every n below roughly e^57).
MarkovBound markov_joint_bound_default(double n);

/// log of markov_joint_bound(e^log_n, p, h) minus log(23 / n^2), evaluated
/// in log space so astronomically large n stay finite. Negative means the
/// bound is at most 23/n^2.
double markov_log_margin(double log_n, int p, int h);

/// First log n (scanned geometrically from `log_n_start` by `factor`) at
/// which the default parameters are valid and give a bound <= 23/n^2.
std::optional<double> markov_default_crossover(double log_n_start = 3.0, double log_n_stop = 1.0e6,
                                               double factor = 1.001);

/// 2 exp(-theta^2 / (2n)). Requires theta >= 0.
double mcdiarmid_bound(double n, double theta);

/// 1 / (10 (log n)^{3/2}). Requires n > 2.
double psl_tail_lower(double n);

/// sqrt(2) - sqrt((3 log log n + 2 log 20) / log n). Requires n >= 3.
double expectation_lower(double n);

/// Pr[|Y_n| >= t] for Y_n a sum of n independent uniform +-1 variables.
/// Binomial terms are evaluated in log space with the saddle-point
/// (deviance) form and summed with compensation.
double binomial_two_sided_tail(std::int64_t n, double threshold);

/// Pr[|Y_n| >= theta sqrt(n)] / (2 Phi(-theta)). Requires theta > 0 and
/// theta sqrt(n) <= n.
double cramer_ratio(std::int64_t n, double theta);

struct StirlingCheck {
  int k = 0;
  double log_lower = 0.0;  // log(sqrt(2 pi k) k^k e^{-k})
  double log_exact = 0.0;  // log k!
  double log_upper = 0.0;  // log(sqrt(3 pi k) k^k e^{-k})
  bool holds() const { return log_lower <= log_exact && log_exact <= log_upper; }
};

StirlingCheck stirling_check(int k);

/// Smallest n in `ns` from which on 2 Phi(-xi_n(u)) >= 1/(5 n sqrt(log n))
/// for every 1 <= u <= n / log n. The worst case is the largest u.
struct SingleTailCrossover {
  struct Row {
    std::int64_t n;
    std::int64_t worst_u;
    double gaussian;  // 2 Phi(-xi_n(worst_u))
    double bound;     // lower_bound_single(n)
    bool holds;
  };
  std::vector<Row> rows;
  std::optional<std::int64_t> crossover;
};

SingleTailCrossover single_tail_crossover(std::span<const std::int64_t> ns);

/// Largest u with 1 <= u <= n / log n.
std::int64_t max_small_shift(std::int64_t n);

}  // namespace sidelobe::bounds
