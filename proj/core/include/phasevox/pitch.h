#pragma once

#include <vector>

#include "phasevox/audio.h"

namespace phasevox {

constexpr double kMinF0Hz = 60.0;
constexpr double kMaxF0Hz = 500.0;

/// Per-frame fundamental frequency track on the 10 ms analysis grid.
/// f0_hz == 0 marks an unvoiced frame.
struct PitchTrack {
    std::vector<double> f0_hz;
    std::vector<int> t0_samples;

    bool voiced(size_t i) const { return f0_hz[i] > 0.0; }

    /// Median F0 over voiced frames, or 0 if fully unvoiced.
    double median_voiced_f0() const;

    /// F0 at an absolute sample position (nearest frame), 0 if unvoiced.
    double f0_at_sample(long sample, int sample_rate = kTargetSampleRate,
                        double hop_ms = 10.0) const;
};

/// Normalized-autocorrelation F0 estimator on the 30 ms / 10 ms grid.
/// Frames whose normalized autocorrelation peak is below 0.3 are unvoiced;
/// the track is median-filtered over 5 frames.
PitchTrack estimate_f0(const AudioSignal& signal, double frame_ms = 30.0,
                       double hop_ms = 10.0);

}  // namespace phasevox
