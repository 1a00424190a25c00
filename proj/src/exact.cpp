// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#include "sidelobe/exact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gray.hpp"
#include "sidelobe/bounds.hpp"
#include "sidelobe/correlation.hpp"
#include "sidelobe/errors.hpp"

namespace sidelobe::exact {

namespace {

void check_budget(int n, int max_n, const char* what) {
  if (n > max_n) {
    throw BudgetExceeded(std::string(what) + ": n = " + std::to_string(n) + " exceeds limit " +
                         std::to_string(max_n));
  }
}

BinarySequence from_bits(int n, std::uint64_t bits) {
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return BinarySequence(static_cast<std::size_t>(n), {bits & mask});
}

// Orders sequences lexicographically with +1 before -1: a smaller key means
// an earlier sequence. Position 0 is the most significant digit.
std::uint64_t lex_key(int n, std::uint64_t bits) {
  std::uint64_t key = 0;
  for (int j = 0; j < n; ++j) key = (key << 1) | (((bits >> j) & 1U) ? 0U : 1U);
  return key;
}

std::vector<std::size_t> all_shifts(int n) {
  std::vector<std::size_t> s(static_cast<std::size_t>(n - 1));
  std::iota(s.begin(), s.end(), std::size_t{1});
  return s;
}

std::int64_t max_abs(std::span<const std::int64_t> c) {
  std::int64_t m = 0;
  for (auto x : c) m = std::max(m, std::abs(x));
  return m;
}

// Depth-first search over sequences with psl <= tau, filling positions in
// pairs (d, n-1-d). Partial sums of the products already known give a lower
// bound |S_u| - (#unknown products) on every |C_u|.
class BoundedSearch {
 public:
  BoundedSearch(int n, std::int64_t tau)
      : n_(n), tau_(tau), a_(n, 0), sum_(n, 0), known_(n, 0) {}

  bool run() {
    dfs(0);
    return found_;
  }

  const std::vector<int>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void assign(int p, int s) {
    a_[p] = s;
    for (int u = 1; u < n_; ++u) {
      if (p - u >= 0 && a_[p - u] != 0) {
        sum_[u] += s * a_[p - u];
        ++known_[u];
      }
      if (p + u < n_ && a_[p + u] != 0) {
        sum_[u] += s * a_[p + u];
        ++known_[u];
      }
    }
  }

  void unassign(int p) {
    const int s = a_[p];
    a_[p] = 0;
    for (int u = 1; u < n_; ++u) {
      if (p - u >= 0 && a_[p - u] != 0) {
        sum_[u] -= s * a_[p - u];
        --known_[u];
      }
      if (p + u < n_ && a_[p + u] != 0) {
        sum_[u] -= s * a_[p + u];
        --known_[u];
      }
    }
  }

  bool feasible() const {
    for (int u = 1; u < n_; ++u) {
      const std::int64_t unknown = (n_ - u) - known_[u];
      if (std::abs(sum_[u]) - unknown > tau_) return false;
    }
    return true;
  }

  // a_0 = a_1 = +1 by negation and alternation. For n >= 6 the normalized
  // reversal of a has third element a_{n-1} a_{n-3}; keep a only if its
  // own third element does not come later in the +1-first order.
  bool canonical(int depth) const {
    if (depth != 2 || n_ < 6) return true;
    return !(a_[2] == -1 && a_[n_ - 1] * a_[n_ - 3] == 1);
  }

  void leaf() {
    if (!found_ || std::lexicographical_compare(a_.begin(), a_.end(), best_.begin(), best_.end(),
                                                [](int x, int y) { return x > y; })) {
      best_ = a_;
      found_ = true;
    }
  }

  void dfs(int depth) {
    ++nodes_;
    const int lo = depth;
    const int hi = n_ - 1 - depth;
    if (lo > hi) {
      leaf();
      return;
    }
    static constexpr int kBoth[] = {1, -1};
    static constexpr int kPlus[] = {1};
    const std::span<const int> lo_vals = lo <= 1 ? std::span<const int>(kPlus) : std::span<const int>(kBoth);
    const std::span<const int> hi_vals = hi <= 1 ? std::span<const int>(kPlus) : std::span<const int>(kBoth);
    for (int s : lo_vals) {
      assign(lo, s);
      if (lo == hi) {
        if (feasible()) dfs(depth + 1);
      } else {
        for (int t : hi_vals) {
          assign(hi, t);
          if (canonical(depth) && feasible()) dfs(depth + 1);
          unassign(hi);
        }
      }
      unassign(lo);
    }
  }

  int n_;
  std::int64_t tau_;
  std::vector<int> a_;
  std::vector<std::int64_t> sum_;
  std::vector<std::int64_t> known_;
  bool found_ = false;
  std::vector<int> best_;
  std::uint64_t nodes_ = 0;
};

struct DistTally {
  std::vector<std::uint64_t> counts;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::uint64_t best_key = 0;
  std::uint64_t best_bits = 0;
};

}  // namespace

MinPsl min_psl(int n, int max_n) {
  if (n < 2) throw std::invalid_argument("min_psl requires n >= 2");
  check_budget(n, max_n, "min_psl");
  MinPsl out;
  out.n = n;
  for (std::int64_t tau = 1; tau < n; ++tau) {
    BoundedSearch search(n, tau);
    const bool found = search.run();
    out.nodes += search.nodes();
    if (found) {
      out.value = tau;
      out.witness = BinarySequence::from_signs(search.best());
      return out;
    }
  }
  throw std::logic_error("min_psl: search exhausted without a solution");
}

MinPsl min_psl_exhaustive(int n) {
  if (n < 2 || n > 30) throw std::invalid_argument("min_psl_exhaustive requires 2 <= n <= 30");
  MinPsl out;
  out.n = n;
  out.value = std::numeric_limits<std::int64_t>::max();
  std::uint64_t best_key = 0;
  std::uint64_t best_bits = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    const auto m = psl(from_bits(n, bits));
    const auto key = lex_key(n, bits);
    if (m < out.value || (m == out.value && key < best_key)) {
      out.value = m;
      best_key = key;
      best_bits = bits;
    }
  }
  out.witness = from_bits(n, best_bits);
  out.nodes = std::uint64_t{1} << n;
  return out;
}

std::uint64_t ExactPslSummary::total() const {
  std::uint64_t t = 0;
  for (const auto& [m, c] : distribution) t += c;
  return t;
}

Rational ExactPslSummary::deviation_probability(double theta) const {
  const Rational th(theta);
  BigInt hits = 0;
  for (const auto& [m, c] : distribution) {
    Rational d = Rational(m) - expectation;
    if (d < 0) d = -d;
    if (d >= th) hits += c;
  }
  return Rational(hits, BigInt(total()));
}

Rational ExactPslSummary::upper_tail(double lambda) const {
  BigInt hits = 0;
  for (const auto& [m, c] : distribution) {
    if (static_cast<double>(m) >= lambda) hits += c;
  }
  return Rational(hits, BigInt(total()));
}

ExactPslSummary exact_psl_distribution(int n, unsigned workers, int max_n) {
  if (n < 2) throw std::invalid_argument("exact_psl_distribution requires n >= 2");
  check_budget(n, max_n, "exact_psl_distribution");
  const auto shifts = all_shifts(n);
  const auto tally = detail::gray_parallel<DistTally>(
      static_cast<std::size_t>(n), workers, [&] { return DistTally{std::vector<std::uint64_t>(n, 0)}; },
      [&](std::size_t fixed, std::uint64_t prefix, DistTally& t) {
        detail::gray_walk_block(static_cast<std::size_t>(n), shifts, fixed, prefix,
                                [&](std::span<const std::int64_t> c, std::uint64_t bits) {
                                  const auto m = max_abs(c);
                                  ++t.counts[static_cast<std::size_t>(m)];
                                  if (m <= t.best) {
                                    const auto key = lex_key(n, bits);
                                    if (m < t.best || key < t.best_key) {
                                      t.best = m;
                                      t.best_key = key;
                                      t.best_bits = bits;
                                    }
                                  }
                                });
      },
      [](DistTally& into, const DistTally& from) {
        for (std::size_t i = 0; i < into.counts.size(); ++i) into.counts[i] += from.counts[i];
        if (from.best < into.best || (from.best == into.best && from.best_key < into.best_key)) {
          into.best = from.best;
          into.best_key = from.best_key;
          into.best_bits = from.best_bits;
        }
      });

  ExactPslSummary s;
  s.n = n;
  s.min_psl = tally.best;
  s.witness = from_bits(n, tally.best_bits);
  BigInt weighted = 0;
  for (std::size_t m = 0; m < tally.counts.size(); ++m) {
    if (tally.counts[m] == 0) continue;
    s.distribution[static_cast<std::int64_t>(m)] = tally.counts[m];
    weighted += BigInt(tally.counts[m]) * m;
  }
  s.expectation = Rational(weighted, BigInt(1) << n);
  return s;
}

Rational exact_tail_single(int n, int u, double lambda) {
  if (u <= 0 || u >= n) throw std::invalid_argument("exact_tail_single requires 0 < u < n");
  const int m = n - u;
  BigInt binom = 1;  // C(m, k)
  BigInt hits = 0;
  for (int k = 0; k <= m; ++k) {
    if (k > 0) binom = binom * (m - k + 1) / k;
    if (static_cast<double>(std::abs(2 * k - m)) >= lambda) hits += binom;
  }
  return Rational(hits, BigInt(1) << m);
}

Rational exact_tail_joint(int n, int u, int v, double lambda, unsigned workers, int max_n) {
  if (!(0 < u && u < v && v < n)) throw std::invalid_argument("exact_tail_joint requires 0 < u < v < n");
  check_budget(n, max_n, "exact_tail_joint");
  const std::array<std::size_t, 2> shifts{static_cast<std::size_t>(u), static_cast<std::size_t>(v)};
  const auto hits = detail::gray_parallel<std::uint64_t>(
      static_cast<std::size_t>(n), workers, [] { return std::uint64_t{0}; },
      [&](std::size_t fixed, std::uint64_t prefix, std::uint64_t& h) {
        detail::gray_walk_block(static_cast<std::size_t>(n), shifts, fixed, prefix,
                                [&](std::span<const std::int64_t> c, std::uint64_t) {
                                  if (static_cast<double>(std::abs(c[0])) >= lambda &&
                                      static_cast<double>(std::abs(c[1])) >= lambda) {
                                    ++h;
                                  }
                                });
      },
      [](std::uint64_t& into, std::uint64_t from) { into += from; });
  return Rational(BigInt(hits), BigInt(1) << n);
}

Rational JointTailTable::single_probability(int u) const {
  return Rational(BigInt(single.at(static_cast<std::size_t>(u))), BigInt(1) << n);
}

Rational JointTailTable::joint_probability(int u, int v) const {
  if (!(0 < u && u < v && v < n)) throw std::invalid_argument("joint_probability requires 0 < u < v < n");
  return Rational(BigInt(pair.at(static_cast<std::size_t>(u * n + v))), BigInt(1) << n);
}

JointTailTable joint_tail_table(int n, double lambda, unsigned workers, int max_n) {
  if (n < 2) throw std::invalid_argument("joint_tail_table requires n >= 2");
  check_budget(n, max_n, "joint_tail_table");
  const auto shifts = all_shifts(n);
  const auto sn = static_cast<std::size_t>(n);
  struct Tally {
    std::vector<std::uint64_t> single, pair;
  };
  auto tally = detail::gray_parallel<Tally>(
      sn, workers, [&] { return Tally{std::vector<std::uint64_t>(sn, 0), std::vector<std::uint64_t>(sn * sn, 0)}; },
      [&](std::size_t fixed, std::uint64_t prefix, Tally& t) {
        std::vector<std::size_t> hit;
        hit.reserve(sn);
        detail::gray_walk_block(sn, shifts, fixed, prefix, [&](std::span<const std::int64_t> c, std::uint64_t) {
          hit.clear();
          for (std::size_t i = 0; i < c.size(); ++i) {
            if (static_cast<double>(std::abs(c[i])) >= lambda) hit.push_back(i + 1);
          }
          for (std::size_t a = 0; a < hit.size(); ++a) {
            ++t.single[hit[a]];
            for (std::size_t b = a + 1; b < hit.size(); ++b) ++t.pair[hit[a] * sn + hit[b]];
          }
        });
      },
      [](Tally& into, const Tally& from) {
        for (std::size_t i = 0; i < into.single.size(); ++i) into.single[i] += from.single[i];
        for (std::size_t i = 0; i < into.pair.size(); ++i) into.pair[i] += from.pair[i];
      });
  return JointTailTable{n, lambda, std::move(tally.single), std::move(tally.pair)};
}

IndependenceReport independence_check(int n, int u, int max_n) {
  if (u <= 0 || u >= n) throw std::invalid_argument("independence_check requires 0 < u < n");
  check_budget(n, max_n, "independence_check");
  const int width = n - u;
  const std::uint64_t pattern_mask = (std::uint64_t{1} << width) - 1;
  std::vector<std::uint64_t> hits(std::size_t{1} << width, 0);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    // bit j set iff a_j a_{j+u} = +1
    ++hits[~(bits ^ (bits >> u)) & pattern_mask];
  }
  IndependenceReport r;
  r.n = n;
  r.u = u;
  r.expected = std::uint64_t{1} << u;
  r.patterns = hits.size();
  const auto [lo, hi] = std::minmax_element(hits.begin(), hits.end());
  r.min_hits = *lo;
  r.max_hits = *hi;
  r.uniform = r.min_hits == r.expected && r.max_hits == r.expected;
  return r;
}

std::vector<ConcentrationRow> concentration_check(const ExactPslSummary& summary, std::span<const double> thetas) {
  if (thetas.empty()) throw std::invalid_argument("theta grid is empty");
  std::vector<ConcentrationRow> rows;
  rows.reserve(thetas.size());
  for (double theta : thetas) {
    ConcentrationRow row;
    row.theta = theta;
    row.probability = summary.deviation_probability(theta);
    row.bound = bounds::mcdiarmid_bound(summary.n, theta);
    row.holds = row.probability <= Rational(row.bound);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> theta_grid(int n, int points) {
  if (points < 2) throw std::invalid_argument("theta grid needs at least two points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) g[k] = static_cast<double>(k) * n / (points - 1);
  return g;
}

BonferroniReport bonferroni_check(int n, double lambda, unsigned workers, int max_n) {
  if (n <= 2) throw std::invalid_argument("bonferroni_check requires n > 2");
  check_budget(n, max_n, "bonferroni_check");
  const auto w = bounds::max_small_shift(n);
  std::vector<std::size_t> shifts;
  for (std::int64_t u = 1; u <= w; ++u) shifts.push_back(static_cast<std::size_t>(u));
  const auto k = shifts.size();
  struct Tally {
    std::uint64_t any = 0;
    std::vector<std::uint64_t> single, pair;
  };
  const auto sn = static_cast<std::size_t>(n);
  auto tally = detail::gray_parallel<Tally>(
      sn, workers, [&] { return Tally{0, std::vector<std::uint64_t>(k, 0), std::vector<std::uint64_t>(k * k, 0)}; },
      [&](std::size_t fixed, std::uint64_t prefix, Tally& t) {
        std::vector<std::size_t> hit;
        detail::gray_walk_block(sn, shifts, fixed, prefix, [&](std::span<const std::int64_t> c, std::uint64_t) {
          hit.clear();
          for (std::size_t i = 0; i < c.size(); ++i) {
            if (static_cast<double>(std::abs(c[i])) >= lambda) hit.push_back(i);
          }
          if (!hit.empty()) ++t.any;
          for (std::size_t a = 0; a < hit.size(); ++a) {
            ++t.single[hit[a]];
            for (std::size_t b = a + 1; b < hit.size(); ++b) ++t.pair[hit[a] * k + hit[b]];
          }
        });
      },
      [](Tally& into, const Tally& from) {
        into.any += from.any;
        for (std::size_t i = 0; i < into.single.size(); ++i) into.single[i] += from.single[i];
        for (std::size_t i = 0; i < into.pair.size(); ++i) into.pair[i] += from.pair[i];
      });

  BonferroniReport r;
  r.n = n;
  r.lambda = lambda;
  for (auto s : shifts) r.shifts.push_back(static_cast<int>(s));
  const BigInt total = BigInt(1) << n;
  BigInt singles = 0;
  BigInt pairs = 0;
  for (auto c : tally.single) singles += c;
  for (auto c : tally.pair) pairs += c;
  r.max_probability = Rational(BigInt(tally.any), total);
  r.singles = Rational(singles, total);
  r.pairs = Rational(pairs, total);
  return r;
}

}  // namespace sidelobe::exact
