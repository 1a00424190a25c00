// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exhaustive ground truth over {-1,+1}^n for small n.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sidelobe/numeric.hpp"
#include "sidelobe/sequence.hpp"

namespace sidelobe::exact {

inline constexpr int kMaxMinPslN = 28;
inline constexpr int kMaxDistributionN = 20;
inline constexpr int kMaxJointN = 24;
inline constexpr int kMaxIndependenceN = 20;

struct MinPsl {
  int n = 0;
  std::int64_t value = 0;
  /// Lexicographically smallest optimal sequence, +1 ordered before -1.
  BinarySequence witness = BinarySequence::ones(1);
  /// Search-tree nodes visited (diagnostic only).
  std::uint64_t nodes = 0;
};

/// M_n by depth-first search assigning both ends inward. Symmetry fixes
/// a_0 = a_1 = +1 and keeps only the lexicographically smaller of a
/// sequence and its normalized reversal. Requires 2 <= n <= max_n.
MinPsl min_psl(int n, int max_n = kMaxMinPslN);

/// Plain exhaustive minimum, for cross-checking min_psl.
MinPsl min_psl_exhaustive(int n);

struct ExactPslSummary {
  int n = 0;
  std::int64_t min_psl = 0;
  BinarySequence witness = BinarySequence::ones(1);
  /// psl value -> number of sequences.
  std::map<std::int64_t, std::uint64_t> distribution;
  Rational expectation;

  std::uint64_t total() const;
  /// Pr[|M - E[M]| >= theta], exact count over 2^n.
  Rational deviation_probability(double theta) const;
  /// Pr[M >= lambda].
  Rational upper_tail(double lambda) const;
};

/// Full distribution of M(A_n) by Gray-code enumeration with incremental
/// correlation updates. Requires 2 <= n <= max_n.
ExactPslSummary exact_psl_distribution(int n, unsigned workers = 1, int max_n = kMaxDistributionN);

/// Pr[|C_u(A_n)| >= lambda], an exact binomial sum over n-u trials.
Rational exact_tail_single(int n, int u, double lambda);

/// Pr[|C_u| >= lambda and |C_v| >= lambda] by enumeration. Requires 0 < u < v < n.
Rational exact_tail_joint(int n, int u, int v, double lambda, unsigned workers = 1, int max_n = kMaxJointN);

/// Single and pairwise hit counts for all shifts in one enumeration pass.
struct JointTailTable {
  int n = 0;
  double lambda = 0.0;
  std::vector<std::uint64_t> single;  // index u, size n
  std::vector<std::uint64_t> pair;    // index u * n + v for u < v

  Rational single_probability(int u) const;
  Rational joint_probability(int u, int v) const;
};

JointTailTable joint_tail_table(int n, double lambda, unsigned workers = 1, int max_n = kMaxJointN);

struct IndependenceReport {
  int n = 0;
  int u = 0;
  bool uniform = false;
  std::uint64_t expected = 0;  // 2^u hits per pattern
  std::uint64_t min_hits = 0;
  std::uint64_t max_hits = 0;
  std::uint64_t patterns = 0;  // 2^{n-u}
};

/// Checks that (a_0 a_u, ..., a_{n-u-1} a_{n-1}) is uniform on {-1,+1}^{n-u}.
IndependenceReport independence_check(int n, int u, int max_n = kMaxIndependenceN);

struct ConcentrationRow {
  double theta = 0.0;
  Rational probability;  // Pr[|M - E[M]| >= theta]
  double bound = 0.0;    // 2 exp(-theta^2 / (2n))
  bool holds = false;
};

/// Evaluates the bounded-difference concentration bound on the exact
/// distribution at every theta in the grid.
std::vector<ConcentrationRow> concentration_check(const ExactPslSummary& summary, std::span<const double> thetas);

/// theta_k = k * n / (points - 1), k = 0..points-1.
std::vector<double> theta_grid(int n, int points);

struct BonferroniReport {
  int n = 0;
  double lambda = 0.0;
  std::vector<int> shifts;  // W = {u : 1 <= u <= n / log n}
  Rational max_probability;  // Pr[max_{u in W} |C_u| >= lambda]
  Rational singles;          // sum_u Pr[|C_u| >= lambda]
  Rational pairs;            // sum_{u<v} Pr[both]
  bool holds() const { return max_probability >= singles - pairs; }
};

BonferroniReport bonferroni_check(int n, double lambda, unsigned workers = 1, int max_n = kMaxJointN);

}  // namespace sidelobe::exact
