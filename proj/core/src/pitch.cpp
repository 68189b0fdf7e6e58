#include "phasevox/pitch.h"

#include <algorithm>
#include <cmath>

#include "phasevox/framing.h"

namespace phasevox {

namespace {

constexpr double kVoicingThreshold = 0.3;

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return (n % 2) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double PitchTrack::median_voiced_f0() const {
    std::vector<double> voiced_vals;
    for (double f : f0_hz)
        if (f > 0.0) voiced_vals.push_back(f);
    return median_of(std::move(voiced_vals));
}

double PitchTrack::f0_at_sample(long sample, int sample_rate, double hop_ms) const {
    if (f0_hz.empty()) return 0.0;
    const double hop = hop_ms * sample_rate / 1000.0;
    long idx = static_cast<long>(std::lround(sample / hop));
    idx = std::clamp<long>(idx, 0, static_cast<long>(f0_hz.size()) - 1);
    return f0_hz[idx];
}

PitchTrack estimate_f0(const AudioSignal& signal, double frame_ms, double hop_ms) {
    PitchTrack track;
    const int frame_len =
        static_cast<int>(std::lround(frame_ms * signal.sample_rate / 1000.0));
    if (static_cast<long>(signal.samples.size()) < frame_len) return track;

    auto frames = frame_signal(signal, frame_ms, hop_ms, WindowKind::kNone);
    const int lag_min = static_cast<int>(std::floor(signal.sample_rate / kMaxF0Hz));
    const int lag_max = static_cast<int>(std::ceil(signal.sample_rate / kMinF0Hz));

    std::vector<double> raw_f0(frames.size(), 0.0);
    for (size_t i = 0; i < frames.size(); ++i) {
        const auto& x = frames[i].samples;
        const int len = static_cast<int>(x.size());
        double mean = 0.0;
        for (double v : x) mean += v;
        mean /= len;

        double r0 = 0.0;
        for (double v : x) r0 += (v - mean) * (v - mean);
        if (r0 < 1e-12) continue;

        int best_lag = 0;
        double best_r = 0.0;
        std::vector<double> r(lag_max + 1, 0.0);
        for (int lag = lag_min; lag <= std::min(lag_max, len - 1); ++lag) {
            double acc = 0.0;
            for (int n = 0; n + lag < len; ++n)
                acc += (x[n] - mean) * (x[n + lag] - mean);
            r[lag] = acc / r0;
            if (r[lag] > best_r) {
                best_r = r[lag];
                best_lag = lag;
            }
        }
        if (best_r < kVoicingThreshold || best_lag == 0) continue;

        // Parabolic refinement around the peak lag.
        double lag_hat = best_lag;
        if (best_lag > lag_min && best_lag < std::min(lag_max, len - 1)) {
            const double a = r[best_lag - 1], b = r[best_lag], c = r[best_lag + 1];
            const double denom = a - 2.0 * b + c;
            if (std::abs(denom) > 1e-12) lag_hat += 0.5 * (a - c) / denom;
        }
        double f0 = signal.sample_rate / lag_hat;
        if (f0 >= kMinF0Hz && f0 <= kMaxF0Hz) raw_f0[i] = f0;
    }

    // 5-frame median filter.
    track.f0_hz.resize(raw_f0.size());
    for (size_t i = 0; i < raw_f0.size(); ++i) {
        std::vector<double> win;
        for (long j = static_cast<long>(i) - 2; j <= static_cast<long>(i) + 2; ++j)
            if (j >= 0 && j < static_cast<long>(raw_f0.size())) win.push_back(raw_f0[j]);
        std::sort(win.begin(), win.end());
        track.f0_hz[i] = win[win.size() / 2];
    }

    track.t0_samples.resize(track.f0_hz.size());
    for (size_t i = 0; i < track.f0_hz.size(); ++i)
        track.t0_samples[i] =
            track.f0_hz[i] > 0.0
                ? static_cast<int>(std::lround(signal.sample_rate / track.f0_hz[i]))
                : 0;
    return track;
}

}  // namespace phasevox
