// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sidelobe/sequence.hpp"

namespace sidelobe {

/// Stateless counter-based generator. Output word k of trial i under seed s:
///
///   key(s, i)     = mix(mix(s ^ kSeedSalt) + kGamma * i)
///   word(s, i, k) = mix(key(s, i) + kGamma * (k + 1))
///
/// where mix is the SplitMix64 finalizer. Any (trial, word) can be generated
/// independently, so results never depend on how trials are scheduled.
struct CounterRng {
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kSeedSalt = 0x5851f42d4c957f2dULL;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t key(std::uint64_t seed, std::uint64_t trial) noexcept {
    return mix(mix(seed ^ kSeedSalt) + kGamma * trial);
  }

  static constexpr std::uint64_t word(std::uint64_t seed, std::uint64_t trial, std::uint64_t k) noexcept {
    return mix(key(seed, trial) + kGamma * (k + 1));
  }

  /// The uniform random sequence of length n for one trial.
  static BinarySequence sequence(std::uint64_t seed, std::uint64_t trial, std::size_t n) {
    const std::uint64_t base = key(seed, trial);
    std::vector<std::uint64_t> words(BinarySequence::word_count(n));
    for (std::size_t k = 0; k < words.size(); ++k) words[k] = mix(base + kGamma * (k + 1));
    return BinarySequence(n, std::move(words));
  }
};

}  // namespace sidelobe
