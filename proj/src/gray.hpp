// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

namespace sidelobe::detail {

/// Walks one block of {-1,+1}^n in Gray-code order: the top `fixed_bits`
/// positions hold `prefix` and the low positions run through all patterns.
/// Correlations for the tracked shifts are updated per flip in O(#shifts):
/// flipping a_j changes C_s by -2 a_j (a_{j-s} + a_{j+s}) (terms in range).
/// `visit(corr, bits)` gets corr[i] = C_{shifts[i]} and the packed sequence.
template <class Visit>
void gray_walk_block(std::size_t n, std::span<const std::size_t> shifts, std::size_t fixed_bits,
                     std::uint64_t prefix, Visit&& visit) {
  const std::size_t free_bits = n - fixed_bits;
  std::uint64_t bits = prefix << free_bits;
  std::vector<int> a(n);
  for (std::size_t j = 0; j < n; ++j) a[j] = (bits >> j) & 1U ? 1 : -1;
  std::vector<std::int64_t> corr(shifts.size());
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    std::int64_t c = 0;
    for (std::size_t j = 0; j + shifts[i] < n; ++j) c += a[j] * a[j + shifts[i]];
    corr[i] = c;
  }
  visit(std::span<const std::int64_t>(corr), bits);
  const std::uint64_t steps = std::uint64_t{1} << free_bits;
  for (std::uint64_t step = 1; step < steps; ++step) {
    const auto j = static_cast<std::size_t>(std::countr_zero(step));
    const int aj = a[j];
    for (std::size_t i = 0; i < shifts.size(); ++i) {
      const std::size_t s = shifts[i];
      int neighbours = 0;
      if (j + s < n) neighbours += a[j + s];
      if (j >= s) neighbours += a[j - s];
      corr[i] -= 2 * aj * neighbours;
    }
    a[j] = -aj;
    bits ^= std::uint64_t{1} << j;
    visit(std::span<const std::int64_t>(corr), bits);
  }
}

/// Enumerates all 2^n sequences split into 2^k prefix blocks. Each block
/// fills its own tally; tallies are merged in block order so the result does
/// not depend on `workers`.
template <class Tally, class MakeTally, class Walk, class Merge>
Tally gray_parallel(std::size_t n, unsigned workers, MakeTally make, Walk walk, Merge merge) {
  const std::size_t fixed = n > 8 ? 4 : 0;
  const std::size_t blocks = std::size_t{1} << fixed;
  std::vector<Tally> tallies;
  tallies.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) tallies.push_back(make());
  const unsigned threads = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(blocks)));
  if (threads == 1) {
    for (std::size_t b = 0; b < blocks; ++b) walk(fixed, static_cast<std::uint64_t>(b), tallies[b]);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t b = t; b < blocks; b += threads) walk(fixed, static_cast<std::uint64_t>(b), tallies[b]);
      });
    }
  }
  Tally total = make();
  for (auto& t : tallies) merge(total, t);
  return total;
}

}  // namespace sidelobe::detail
