#pragma once

#include <complex>
#include <vector>

#include "phasevox/audio.h"

namespace oracles {

/// Naive O(N^2) DFT, independent of the FFT path under test.
std::vector<std::complex<double>> naive_dft(const std::vector<double>& x, int n);

/// Analytic group delay of the single-pole sequence a^n u(n):
/// tau(w) = (a cos w - a^2) / (1 - 2 a cos w + a^2), in samples.
double single_pole_group_delay(double a, double omega);

/// Analytic complex cepstrum of a^n u(n): c(q) = a^q / q for q >= 1.
double single_pole_cepstrum(double a, int q);

/// Test signals.
phasevox::AudioSignal sine_signal(double freq_hz, double duration_s,
                                  double amplitude = 0.5);
phasevox::AudioSignal noise_signal(double duration_s, unsigned seed);

/// Max over lags of the normalized cross-correlation of two sequences
/// (zero-padded alignment, signed).
double max_normalized_xcorr(const std::vector<double>& a,
                            const std::vector<double>& b);

double mean(const std::vector<double>& v);
double stddev(const std::vector<double>& v);

}  // namespace oracles
