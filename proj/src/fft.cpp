// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#include "fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace sidelobe::detail {

namespace {

using cd = std::complex<double>;

// exp(-2 pi i k / size) for k < size / 2, cached per size and per thread.
const std::vector<cd>& twiddles(std::size_t size) {
  thread_local std::unordered_map<std::size_t, std::vector<cd>> cache;
  auto it = cache.find(size);
  if (it != cache.end()) return it->second;
  std::vector<cd> w(size / 2);
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(size);
    w[k] = {std::cos(angle), std::sin(angle)};
  }
  return cache.emplace(size, std::move(w)).first->second;
}

}  // namespace

void fft_inplace(std::vector<cd>& data, bool inverse) {
  const std::size_t size = data.size();
  if (size <= 1) return;
  if (!std::has_single_bit(size)) throw std::invalid_argument("fft size must be a power of two");

  for (std::size_t i = 1, j = 0; i < size; ++i) {
    std::size_t bit = size >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  const auto& w = twiddles(size);
  for (std::size_t len = 2; len <= size; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = size / len;
    for (std::size_t start = 0; start < size; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        cd tw = w[k * stride];
        if (inverse) tw = std::conj(tw);
        const cd a = data[start + k];
        const cd b = data[start + k + half] * tw;
        data[start + k] = a + b;
        data[start + k + half] = a - b;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(size);
    for (auto& x : data) x *= scale;
  }
}

std::vector<double> real_autocorrelation(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  // Real transform of length N done as a complex transform of length N/2.
  const std::size_t big = std::max<std::size_t>(4, std::bit_ceil(2 * n));
  const std::size_t half = big / 2;

  std::vector<cd> z(half, cd{0.0, 0.0});
  for (std::size_t m = 0; m < half; ++m) {
    const double re = 2 * m < n ? x[2 * m] : 0.0;
    const double im = 2 * m + 1 < n ? x[2 * m + 1] : 0.0;
    z[m] = {re, im};
  }
  fft_inplace(z, false);

  const auto& w = twiddles(big);
  // Power spectrum P[k] for k in [0, half]; real and symmetric.
  std::vector<double> power(half + 1);
  for (std::size_t k = 0; k <= half; ++k) {
    const cd zk = z[k % half];
    const cd zc = std::conj(z[(half - k) % half]);
    const cd even = 0.5 * (zk + zc);
    const cd odd = cd{0.0, -0.5} * (zk - zc);
    const cd tw = k < half ? w[k] : cd{-1.0, 0.0};
    const cd xk = even + tw * odd;
    power[k] = std::norm(xk);
  }

  for (std::size_t k = 0; k < half; ++k) {
    const double pk = power[k];
    const double pc = power[half - k];
    const cd even = 0.5 * cd{pk + pc, 0.0};
    const cd odd = 0.5 * cd{pk - pc, 0.0} * std::conj(w[k]);
    z[k] = even + cd{0.0, 1.0} * odd;
  }
  fft_inplace(z, true);

  std::vector<double> r(n);
  for (std::size_t u = 0; u < n; ++u) r[u] = u % 2 == 0 ? z[u / 2].real() : z[u / 2].imag();
  return r;
}

}  // namespace sidelobe::detail
