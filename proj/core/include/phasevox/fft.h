#pragma once

#include <complex>
#include <span>
#include <vector>

namespace phasevox::fft {

/// Forward DFT, X[k] = sum_n x[n] e^{-j 2 pi k n / N}. Thread-safe.
std::vector<std::complex<double>> forward(std::span<const std::complex<double>> x);

/// Inverse DFT including the 1/N factor, so inverse(forward(x)) == x.
std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> X);

/// Forward DFT of a real sequence zero-padded (or not) to n_fft points.
std::vector<std::complex<double>> forward_real(std::span<const double> x, int n_fft);

}  // namespace phasevox::fft
