#pragma once

#include <span>

#include "jhol/common.hpp"

namespace jhol {

/// Unnormalized DFT of length in.size():
///   forward:  out_m = sum_k in_k e^{-2 pi i m k / N}
///   backward: out_k = sum_m in_m e^{+2 pi i m k / N}
/// Plans are cached per length; calls are safe from concurrent threads.
void fft_forward(std::span<const Complex> in, std::span<Complex> out);
void fft_backward(std::span<const Complex> in, std::span<Complex> out);

/// Signed mode number of DFT bin i for length n (bin n/2 reported as -n/2).
inline int mode_of_bin(int i, int n) { return i < n / 2 ? i : i - n; }
inline int bin_of_mode(int m, int n) { return m >= 0 ? m : m + n; }

}  // namespace jhol
