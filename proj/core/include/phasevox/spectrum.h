#pragma once

#include <complex>
#include <vector>

#include "phasevox/framing.h"

namespace phasevox {

constexpr int kDefaultNfft = 1024;

/// Complex spectrum of one frame.
struct ComplexSpectrum {
    std::vector<std::complex<double>> values;
    int n_fft = kDefaultNfft;
    double bin_hz = 0.0;
};

/// DFT of a frame zero-padded to n_fft. Throws DataError if the frame is
/// longer than n_fft.
ComplexSpectrum dft(const Frame& frame, int n_fft = kDefaultNfft,
                    int sample_rate = kTargetSampleRate);

/// Inverse DFT (with 1/N), real part returned.
std::vector<double> idft_real(const ComplexSpectrum& spectrum);

/// Chirp transform: DFT of x(n) * rho^{-n}, i.e. the z-transform evaluated
/// on the circle |z| = rho. Throws UsageError for rho <= 0.
ComplexSpectrum chirp_dft(const std::vector<double>& x, double rho,
                          int n_fft = kDefaultNfft,
                          int sample_rate = kTargetSampleRate);

}  // namespace phasevox
