// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sidelobe {

/// Malformed sequence text. `position` is 1-based within the offending line.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t position)
      : std::invalid_argument(what), line_(line), position_(position) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t line_;
  std::size_t position_;
};

/// An enumeration or search would exceed its configured work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sidelobe
