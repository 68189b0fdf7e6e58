#include "phasevox/framing.h"

#include <cmath>
#include <numbers>

#include "phasevox/errors.h"

namespace phasevox {

std::vector<double> blackman_window(int length) {
    std::vector<double> w(length);
    if (length == 1) {
        w[0] = 1.0;
        return w;
    }
    const double denom = length - 1;
    for (int n = 0; n < length; ++n) {
        const double t = 2.0 * std::numbers::pi * n / denom;
        w[n] = 0.42 - 0.5 * std::cos(t) + 0.08 * std::cos(2.0 * t);
    }
    // Endpoints are analytically zero; force exactness.
    w[0] = 0.0;
    w[length - 1] = 0.0;
    return w;
}

std::vector<Frame> frame_signal(const AudioSignal& signal, double frame_ms,
                                double hop_ms, WindowKind window) {
    const int frame_len = static_cast<int>(std::lround(frame_ms * signal.sample_rate / 1000.0));
    const int hop = static_cast<int>(std::lround(hop_ms * signal.sample_rate / 1000.0));
    const long n = static_cast<long>(signal.samples.size());
    if (n < frame_len)
        throw DataError("signal too short: " + std::to_string(n) + " samples < " +
                        std::to_string(frame_len) + "-sample frame");

    const long n_frames = (n - frame_len) / hop + 1;
    std::vector<double> w;
    if (window == WindowKind::kBlackman) w = blackman_window(frame_len);

    std::vector<Frame> frames;
    frames.reserve(n_frames);
    for (long i = 0; i < n_frames; ++i) {
        Frame f;
        f.start_sample = i * hop;
        f.window_kind = window;
        f.samples.resize(frame_len);
        for (int j = 0; j < frame_len; ++j) {
            double v = signal.samples[f.start_sample + j];
            f.samples[j] = (window == WindowKind::kBlackman) ? v * w[j] : v;
        }
        frames.push_back(std::move(f));
    }
    return frames;
}

}  // namespace phasevox
