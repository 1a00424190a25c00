// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace sidelobe {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& x) {
  const auto num = boost::multiprecision::numerator(x);
  const auto den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// count <= bound, where the floating bound is nudged down by a relative
/// 1e-12 so a reported pass never depends on rounding in the bound.
inline bool le_bound(const BigInt& count, double bound) {
  return to_double(count) <= bound * (1.0 - 1e-12);
}

}  // namespace sidelobe
