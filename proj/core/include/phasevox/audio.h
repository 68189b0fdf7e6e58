#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace phasevox {

constexpr int kTargetSampleRate = 16000;

/// Mono sampled waveform, amplitudes in [-1, 1].
struct AudioSignal {
    std::vector<double> samples;
    int sample_rate = kTargetSampleRate;
    std::string source_id;

    double duration_s() const {
        return static_cast<double>(samples.size()) / sample_rate;
    }
};

/// Loads a PCM WAV file (8/16/24-bit int or 32-bit float), averages channels
/// to mono and scales to [-1, 1]. Non-16 kHz input is resampled by windowed
/// sinc unless strict_rate is set, in which case it is rejected.
AudioSignal load_wav(const std::string& path, bool strict_rate = false);

/// Writes a mono 16-bit PCM WAV file.
void write_wav(const std::string& path, const AudioSignal& signal);

/// Writes a mono 32-bit float PCM WAV file (lossless for scaled signals).
void write_wav_float(const std::string& path, const AudioSignal& signal);

/// Windowed-sinc resampler (Hann-windowed, 32 taps per side).
std::vector<double> resample(const std::vector<double>& x, int from_rate, int to_rate);

}  // namespace phasevox
