// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace sidelobe::detail {

/// In-place radix-2 transform; data.size() must be a power of two.
/// Twiddles are evaluated directly per index rather than by recurrence.
void fft_inplace(std::vector<std::complex<double>>& data, bool inverse);

/// Aperiodic autocorrelation r[u] = sum_j x_j x_{j+u} for u in [0, n).
std::vector<double> real_autocorrelation(const std::vector<double>& x);

}  // namespace sidelobe::detail
