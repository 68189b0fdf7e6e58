#pragma once

#include <vector>

#include "phasevox/framing.h"
#include "phasevox/pitch.h"
#include "phasevox/spectrogram.h"
#include "phasevox/spectrum.h"

namespace phasevox {

// Bins with |X|^2 below this fraction of the frame maximum are zeroed.
constexpr double kGdSpikeGuard = 1e-10;

/// Modified group delay parameters. Defaults follow common usage; all are
/// overridable from the CLI.
struct ModGdConfig {
    double alpha = 0.4;
    double gamma = 0.9;
    int lifter_len = 8;
};

/// Chirp group delay parameters: radius of the analysis circle (> 1, the
/// contour lies outside the unit circle).
struct CgdConfig {
    double rho = 1.12;
};

/// Group delay via the two-transform form
///   tau(w) = (X_R Y_R + X_I Y_I) / |X|^2,  Y = DFT(n * x(n)),
/// in samples; guarded bins set to 0. No phase unwrapping involved.
/// Throws DataError on an all-zero frame.
std::vector<double> group_delay_raw(const Frame& frame, int n_fft = kDefaultNfft);

Spectrogram fm_spectrogram(const std::vector<Frame>& frames,
                           int n_fft = kDefaultNfft,
                           int sample_rate = kTargetSampleRate);

/// Pitch-adaptive smoothed magnitude spectrogram: the FM spectrogram
/// convolved with a separable triangular kernel spanning one pitch period
/// in time and one F0 in frequency. Stands in for a full pitch-adaptive
/// restructuring analysis.
Spectrogram smoothed_spectrogram(const std::vector<Frame>& frames,
                                 const PitchTrack& pitch,
                                 int n_fft = kDefaultNfft,
                                 int sample_rate = kTargetSampleRate);

Spectrogram modgd_spectrogram(const std::vector<Frame>& frames,
                              const ModGdConfig& cfg = {},
                              int n_fft = kDefaultNfft,
                              int sample_rate = kTargetSampleRate);

/// Product of power spectrum and group delay: X_R Y_R + X_I Y_I, no division.
Spectrogram ppgd_spectrogram(const std::vector<Frame>& frames,
                             int n_fft = kDefaultNfft,
                             int sample_rate = kTargetSampleRate);

/// Chirp group delay of the zero-phase version of each frame, evaluated on
/// the circle |z| = rho.
Spectrogram cgd_spectrogram(const std::vector<Frame>& frames,
                            const CgdConfig& cfg = {},
                            int n_fft = kDefaultNfft,
                            int sample_rate = kTargetSampleRate);

/// Single-frame ModGD and CGD rows (shared by the spectrogram builders and
/// the unit tests).
std::vector<double> modgd_row(const Frame& frame, const ModGdConfig& cfg,
                              int n_fft = kDefaultNfft);
std::vector<double> cgd_row(const Frame& frame, const CgdConfig& cfg,
                            int n_fft = kDefaultNfft);

}  // namespace phasevox
