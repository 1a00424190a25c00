// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Even-tuple counting behind the moment bounds on C_u(A) C_v(A).
//
// A tuple is even when its entries can be paired off into equal pairs, i.e.
// every value occurs an even number of times. The counters here enumerate
// exhaustively and are the ground truth for the closed-form bounds.

#include <cstdint>
#include <optional>
#include <span>

#include "sidelobe/numeric.hpp"

namespace sidelobe::combin {

/// Default cap on the size of an enumerated tuple space.
inline constexpr double kDefaultTupleBudget = 16777216.0;  // 2^24
/// Largest n for which exact_moment_sequences enumerates {-1,+1}^n.
inline constexpr int kDefaultSequenceMaxN = 20;

/// (2k-1)!! = (2k-1)(2k-3)...3*1. Throws std::invalid_argument for k < 1.
BigInt double_factorial(int k);

/// True iff every distinct value has even multiplicity.
bool is_even(std::span<const std::int64_t> tuple);

/// Number of even tuples in {0..m-1}^{2q}.
BigInt count_even_tuples(int m, int q, double budget = kDefaultTupleBudget);

/// (2q-1)!! m^q.
double bound_even_single(int m, int q);
BigInt bound_even_single_exact(int m, int q);

/// |S|: even tuples (x_i, x_i+u, y_i, y_i+v), i = 1..2q, with 0 <= x_i < n-u,
/// 0 <= y_i < n-v, and no even sub-tuple of the x_i of size 2q-2t.
/// Requires 0 < u, v < n, u != v, 0 <= t < q.
BigInt count_S(int n, int u, int v, int q, int t, double budget = kDefaultTupleBudget);

/// (8q-1)!! n^{2q-(t+1)/3}.
double bound_S(int n, int q, int t);

/// |T| = E[(C_u C_v)^{2p}]: all even tuples (x_i, x_i+u, y_i, y_i+v), i = 1..2p.
/// Requires 0 < u < v < n.
BigInt exact_moment_tuples(int n, int u, int v, int p, double budget = kDefaultTupleBudget);

/// 2^{-n} sum over A of (C_u(A) C_v(A))^{2p}, by enumerating all sequences.
Rational exact_moment_sequences(int n, int u, int v, int p, int max_n = kDefaultSequenceMaxN);

struct TuplePartition {
  BigInt t1;  // x and y both even
  BigInt t2;  // not both even, both have an even sub-tuple of size 2p-2h
  BigInt t3;  // x or y has no even sub-tuple of size 2p-2h
  BigInt total() const { return t1 + t2 + t3; }
};

/// Splits T into T1, T2, T3. Requires 0 < u < v < n and 0 <= h < p.
TuplePartition partition_T(int n, int u, int v, int p, int h, double budget = kDefaultTupleBudget);

/// n^{2p} [(2p-1)!!]^2 (1 + p^{2h} (8h)^{4h} / n^{1/3} + (8p)^{3p} / n^{(h+1)/3}),
/// with (8h)^{4h} = 1 at h = 0. Requires 0 <= h < p.
double bound_moment(int n, int u, int v, int p, int h);

/// Oracle results for one (n, u, v, p, h). Either side may be skipped when
/// it is outside its budget; at least one is always present.
struct MomentReport {
  int n = 0, u = 0, v = 0, p = 0, h = 0;
  std::optional<Rational> exact;            // sequence enumeration
  std::optional<BigInt> tuple_count;        // tuple enumeration
  std::optional<TuplePartition> partition;  // tuple enumeration
  double bound = 0.0;

  /// The moment as an integer, from whichever oracle ran.
  BigInt moment() const;
  bool identity_holds() const;
  bool partition_holds() const;
  bool bound_holds() const { return le_bound(moment(), bound); }
  bool all_hold() const { return identity_holds() && partition_holds() && bound_holds(); }
};

/// Runs both moment oracles, the partition and the bound for one parameter set.
MomentReport moment_report(int n, int u, int v, int p, int h, double budget = kDefaultTupleBudget,
                           int max_n = kDefaultSequenceMaxN);

}  // namespace sidelobe::combin
