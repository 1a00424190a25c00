// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sidelobe/sequence.hpp"

namespace sidelobe {

/// Aperiodic autocorrelations C_0..C_{n-1} and the peak sidelobe level.
struct CorrelationProfile {
  std::size_t n = 0;
  std::vector<std::int64_t> values;
  /// max_{0<u<n} |C_u|; empty when n == 1.
  std::optional<std::int64_t> psl;
  /// Shifts the FFT path had to recompute exactly (always 0 for other paths).
  std::size_t corrected_shifts = 0;

  friend bool operator==(const CorrelationProfile& a, const CorrelationProfile& b) {
    return a.n == b.n && a.values == b.values && a.psl == b.psl;
  }
};

enum class AcfMethod { naive, bitparallel, fft };

/// Direct summation of a_j a_{j+u}.
CorrelationProfile acf_naive(const BinarySequence& seq);

/// XOR against the shifted words and popcount the disagreements.
CorrelationProfile acf_bitparallel(const BinarySequence& seq);

/// Zero-padded floating-point convolution, rounded and checked against the
/// range and parity constraints of each shift.
CorrelationProfile acf_fft(const BinarySequence& seq);

CorrelationProfile acf(const BinarySequence& seq, AcfMethod method);

/// C_u for a single shift, word-parallel. Requires u < n.
std::int64_t correlation_at(const BinarySequence& seq, std::size_t u);

/// Peak sidelobe level using the fastest exact path for the length.
/// Throws std::domain_error when n <= 1.
std::int64_t psl(const BinarySequence& seq);

struct CorrelationMeasureResult {
  int r = 0;
  std::int64_t value = 0;
  /// Lexicographically smallest maximizing shift tuple u_1 < ... < u_r.
  std::vector<std::size_t> shifts;
  /// Prefix length k of the maximizing partial sum.
  std::size_t prefix = 0;
};

/// Work estimate C(n, r) * n used for budget gating of correlation_measure.
double correlation_measure_work(std::size_t n, int r);

inline constexpr double kDefaultMeasureBudget = 4.0e9;

/// The r-th order correlation measure S_r. Throws std::invalid_argument when
/// r < 2 or r > n and BudgetExceeded when the work estimate exceeds `budget`.
CorrelationMeasureResult correlation_measure(const BinarySequence& seq, int r,
                                             double budget = kDefaultMeasureBudget);

/// Re-evaluates |sum_{j<k} a_{j+u_1}...a_{j+u_r}| at a witness.
std::int64_t partial_product_sum(const BinarySequence& seq, std::span<const std::size_t> shifts,
                                 std::size_t prefix);

namespace detail {

/// Rounds raw floating correlations and repairs any value that violates
/// |C_u| <= n-u, parity, or sits far from an integer.
CorrelationProfile repair_profile(const BinarySequence& seq, std::span<const double> raw);

}  // namespace detail

}  // namespace sidelobe
