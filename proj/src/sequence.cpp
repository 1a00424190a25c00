// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#include "sidelobe/sequence.hpp"

#include <array>
#include <cctype>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "sidelobe/errors.hpp"

namespace sidelobe {

namespace {

void mask_tail(std::size_t length, std::vector<std::uint64_t>& words) {
  const std::size_t rem = length % BinarySequence::kWordBits;
  if (rem != 0 && !words.empty()) words.back() &= (std::uint64_t{1} << rem) - 1;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Parses a single line; `line` is 1-based and only used for diagnostics.
BinarySequence parse_line(std::string_view text, Encoding encoding, std::size_t line) {
  const char plus = encoding == Encoding::plusminus ? '+' : '1';
  const char minus = encoding == Encoding::plusminus ? '-' : '0';
  std::vector<std::uint64_t> words;
  std::size_t n = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (is_space(c)) continue;
    if (c != plus && c != minus) {
      throw ParseError("invalid character '" + std::string(1, c) + "' at line " +
                           std::to_string(line) + ", position " + std::to_string(i + 1),
                       line, i + 1);
    }
    if (n % BinarySequence::kWordBits == 0) words.push_back(0);
    if (c == plus) words.back() |= std::uint64_t{1} << (n % BinarySequence::kWordBits);
    ++n;
  }
  if (n == 0) throw ParseError("empty sequence at line " + std::to_string(line), line, 0);
  return BinarySequence(n, std::move(words));
}

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> buf{};
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(buf.data(), buf.size());
}

bool get_u64(std::istream& in, std::uint64_t& v) {
  std::array<unsigned char, 8> buf{};
  in.read(reinterpret_cast<char*>(buf.data()), buf.size());
  if (in.gcount() == 0) return false;
  if (in.gcount() != 8) throw std::runtime_error("truncated binary sequence record");
  v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{buf[i]} << (8 * i);
  return true;
}

}  // namespace

BinarySequence::BinarySequence(std::size_t length, std::vector<std::uint64_t> words)
    : length_(length), words_(std::move(words)) {
  if (length_ == 0) throw std::invalid_argument("sequence length must be at least 1");
  if (words_.size() != word_count(length_)) {
    throw std::invalid_argument("word count does not match sequence length");
  }
  mask_tail(length_, words_);
}

BinarySequence BinarySequence::from_signs(std::span<const int> signs) {
  std::vector<std::uint64_t> words(word_count(signs.size()), 0);
  for (std::size_t j = 0; j < signs.size(); ++j) {
    if (signs[j] == 1) {
      words[j / kWordBits] |= std::uint64_t{1} << (j % kWordBits);
    } else if (signs[j] != -1) {
      throw std::invalid_argument("sequence elements must be +1 or -1");
    }
  }
  return BinarySequence(signs.size(), std::move(words));
}

BinarySequence BinarySequence::ones(std::size_t length) {
  return BinarySequence(length, std::vector<std::uint64_t>(word_count(length), ~std::uint64_t{0}));
}

std::vector<int> BinarySequence::signs() const {
  std::vector<int> out(length_);
  for (std::size_t j = 0; j < length_; ++j) out[j] = (*this)[j];
  return out;
}

BinarySequence BinarySequence::negated() const {
  std::vector<std::uint64_t> w = words_;
  for (auto& x : w) x = ~x;
  return BinarySequence(length_, std::move(w));
}

BinarySequence BinarySequence::reversed() const {
  std::vector<std::uint64_t> w(words_.size(), 0);
  for (std::size_t j = 0; j < length_; ++j) {
    const std::size_t src = length_ - 1 - j;
    if ((words_[src / kWordBits] >> (src % kWordBits)) & 1U) {
      w[j / kWordBits] |= std::uint64_t{1} << (j % kWordBits);
    }
  }
  return BinarySequence(length_, std::move(w));
}

BinarySequence BinarySequence::alternated() const {
  // Odd positions flip.
  constexpr std::uint64_t kOddBits = 0xAAAAAAAAAAAAAAAAULL;
  std::vector<std::uint64_t> w = words_;
  for (auto& x : w) x ^= kOddBits;
  return BinarySequence(length_, std::move(w));
}

BinarySequence parse_sequence(std::string_view text, Encoding encoding) {
  return parse_line(text, encoding, 1);
}

std::string render(const BinarySequence& seq, Encoding encoding) {
  const char plus = encoding == Encoding::plusminus ? '+' : '1';
  const char minus = encoding == Encoding::plusminus ? '-' : '0';
  std::string out(seq.size(), minus);
  for (std::size_t j = 0; j < seq.size(); ++j) {
    if (seq[j] == 1) out[j] = plus;
  }
  return out;
}

std::vector<SequenceRecord> read_sequences(std::istream& in, Encoding encoding) {
  std::vector<SequenceRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = 0;
    while (first < line.size() && is_space(line[first])) ++first;
    if (first == line.size() || line[first] == '#') continue;
    out.push_back({lineno, parse_line(line, encoding, lineno)});
  }
  if (out.empty()) throw ParseError("input contains no sequences", lineno, 0);
  return out;
}

Encoding detect_encoding(std::string_view text) {
  bool at_line_start = true;
  bool in_comment = false;
  for (char c : text) {
    if (c == '\n') {
      at_line_start = true;
      in_comment = false;
      continue;
    }
    if (in_comment || is_space(c)) continue;
    if (at_line_start && c == '#') {
      in_comment = true;
      continue;
    }
    at_line_start = false;
    if (c == '0' || c == '1') return Encoding::binary01;
    return Encoding::plusminus;
  }
  return Encoding::plusminus;
}

void write_binary(std::ostream& out, const BinarySequence& seq) {
  put_u64(out, seq.words().size());
  put_u64(out, seq.size());
  for (std::uint64_t w : seq.words()) put_u64(out, w);
}

std::vector<BinarySequence> read_binary(std::istream& in) {
  std::vector<BinarySequence> out;
  std::uint64_t count = 0;
  while (get_u64(in, count)) {
    std::uint64_t length = 0;
    if (!get_u64(in, length)) throw std::runtime_error("truncated binary sequence record");
    if (length == 0 || count != BinarySequence::word_count(length)) {
      throw std::runtime_error("inconsistent binary sequence header");
    }
    std::vector<std::uint64_t> words(count);
    for (auto& w : words) {
      if (!get_u64(in, w)) throw std::runtime_error("truncated binary sequence record");
    }
    out.emplace_back(length, std::move(words));
  }
  return out;
}

}  // namespace sidelobe
