// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sidelobe {

enum class Encoding { plusminus, binary01 };

/// A sequence in {-1,+1}^n, bit-packed with a_0 in the least significant bit
/// of word 0. Bit 1 is +1, bit 0 is -1. Unused high bits of the last word are
/// always zero.
class BinarySequence {
 public:
  static constexpr std::size_t kWordBits = 64;

  /// Builds from packed words; bits beyond `length` are cleared.
  BinarySequence(std::size_t length, std::vector<std::uint64_t> words);

  /// Builds from signs; every entry must be +1 or -1.
  static BinarySequence from_signs(std::span<const int> signs);

  /// All elements +1.
  static BinarySequence ones(std::size_t length);

  std::size_t size() const noexcept { return length_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// Element j as +1 or -1.
  int operator[](std::size_t j) const noexcept {
    return (words_[j / kWordBits] >> (j % kWordBits)) & 1U ? 1 : -1;
  }

  std::vector<int> signs() const;

  BinarySequence negated() const;
  BinarySequence reversed() const;
  /// a_j -> (-1)^j a_j.
  BinarySequence alternated() const;

  friend bool operator==(const BinarySequence&, const BinarySequence&) = default;

  static std::size_t word_count(std::size_t length) noexcept {
    return (length + kWordBits - 1) / kWordBits;
  }

 private:
  std::size_t length_;
  std::vector<std::uint64_t> words_;
};

/// Parses one sequence; all whitespace is ignored. Throws ParseError with the
/// 1-based character position of the first invalid character.
BinarySequence parse_sequence(std::string_view text, Encoding encoding);

std::string render(const BinarySequence& seq, Encoding encoding);

/// A sequence read from a multi-line text stream, with its source line.
struct SequenceRecord {
  std::size_t line;
  BinarySequence sequence;
};

/// One sequence per line. Blank lines and lines whose first non-blank
/// character is '#' are skipped.
std::vector<SequenceRecord> read_sequences(std::istream& in, Encoding encoding);

/// Guesses the text encoding from the first non-comment character.
Encoding detect_encoding(std::string_view text);

/// Binary record: little-endian u64 word count, u64 length, then the words.
void write_binary(std::ostream& out, const BinarySequence& seq);

/// Reads records until end of stream. Throws std::runtime_error on a
/// truncated or inconsistent record.
std::vector<BinarySequence> read_binary(std::istream& in);

}  // namespace sidelobe
