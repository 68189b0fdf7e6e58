#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "phasevox/audio.h"
#include "phasevox/gci.h"
#include "phasevox/pitch.h"

namespace phasevox {

/// Complex cepstrum of a real sequence: linear phase removed by circularly
/// shifting the max-|x| sample to the origin, magnitude floored at 1e-10 of
/// the peak, phase unwrapped on an n_fft-point (8x zero-padded) spectrum.
struct ComplexCepstrum {
    std::vector<double> coeffs;   // length n_fft, negative quefrencies wrapped to the tail
    int n_fft = 0;
    int shift = 0;                // applied circular shift (samples)
    bool unwrap_ok = true;
};

ComplexCepstrum complex_cepstrum(const std::vector<double>& x, int n_fft = 0);

/// Spectra of the causal (quefrency >= 0, incl. gain and Nyquist terms) and
/// anticausal (quefrency < 0) cepstral halves; their product reconstructs
/// the input spectrum.
struct CepstrumSplit {
    std::vector<std::complex<double>> causal_spectrum;
    std::vector<std::complex<double>> anticausal_spectrum;
    std::vector<double> causal_time;      // real part of IDFT
    std::vector<double> anticausal_time;  // anticausal samples live at the tail
};

CepstrumSplit split_cepstrum(const ComplexCepstrum& cc);

/// One decomposed glottal cycle: the anticausal component over one pitch
/// period plus landmark offsets (filled by extract_time_constants).
struct GlottalCycle {
    std::vector<double> waveform;
    int t0_samples = 0;
    long gci_sample = 0;
    int t_op = -1;
    int t_max = -1;
    int t_min = -1;
};

/// Complex-cepstrum causal/anticausal decomposition around each GCI:
/// Blackman window of window_periods * T0 centered on the GCI, anticausal
/// part rebuilt from strictly negative quefrencies, one T0-length cycle
/// returned per GCI. Cycles with unreliable phase unwrapping are skipped.
std::vector<GlottalCycle> ccd_decompose(const AudioSignal& signal,
                                        const GciSequence& gci,
                                        const PitchTrack& pitch,
                                        double window_periods = 2.0);

}  // namespace phasevox
