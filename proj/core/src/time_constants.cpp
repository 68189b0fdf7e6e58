#include "phasevox/time_constants.h"

#include <algorithm>
#include <cmath>

#include "phasevox/errors.h"

namespace phasevox {

TimeConstants extract_time_constants(GlottalCycle& cycle) {
    const auto& w = cycle.waveform;
    const int t0 = cycle.t0_samples;
    if (t0 <= 0 || static_cast<int>(w.size()) != t0)
        throw DataError("cycle length does not match T0");

    const auto [mn_it, mx_it] = std::minmax_element(w.begin(), w.end());
    const double peak_to_peak = *mx_it - *mn_it;
    if (peak_to_peak <= 1e-15) throw DataError("degenerate (flat) cycle");

    TimeConstants tc;
    const int t_max = static_cast<int>(mx_it - w.begin());

    // t_min: argmin after t_max, global argmin otherwise (degenerate).
    int t_min = -1;
    for (int i = t_max + 1; i < t0; ++i)
        if (t_min < 0 || w[i] < w[t_min]) t_min = i;
    if (t_min < 0) {
        t_min = static_cast<int>(mn_it - w.begin());
        tc.degenerate = true;
    }

    // t_op: earliest sample before t_max rising above baseline + 5% of the
    // peak-to-peak amplitude (baseline = cycle-start value).
    const double threshold = w[0] + 0.05 * peak_to_peak;
    int t_op = t_max;
    for (int i = 0; i <= t_max; ++i) {
        if (w[i] > threshold) {
            t_op = i;
            break;
        }
    }

    cycle.t_max = t_max;
    cycle.t_min = t_min;
    cycle.t_op = t_op;
    tc.t1 = std::clamp(static_cast<double>(t_min - t_max) / t0, 0.0, 1.0);
    tc.t2 = std::clamp(static_cast<double>(t_min - t_op) / t0, 0.0, 1.0);
    return tc;
}

std::vector<double> interpolate_stream(const std::vector<long>& instants,
                                       const std::vector<double>& values,
                                       size_t n_ticks, int sample_rate,
                                       double hop_ms) {
    if (instants.empty() || instants.size() != values.size())
        throw DataError("empty or mismatched stream");
    const double hop = hop_ms * sample_rate / 1000.0;

    std::vector<double> out(n_ticks);
    size_t seg = 0;
    for (size_t t = 0; t < n_ticks; ++t) {
        const double pos = t * hop;
        if (pos <= instants.front()) {
            out[t] = values.front();
            continue;
        }
        if (pos >= instants.back()) {
            out[t] = values.back();
            continue;
        }
        while (seg + 1 < instants.size() && instants[seg + 1] < pos) ++seg;
        const double x0 = static_cast<double>(instants[seg]);
        const double x1 = static_cast<double>(instants[seg + 1]);
        const double a = (x1 > x0) ? (pos - x0) / (x1 - x0) : 0.0;
        out[t] = values[seg] + a * (values[seg + 1] - values[seg]);
    }
    return out;
}

}  // namespace phasevox
