#pragma once

#include <vector>

#include "phasevox/cepstrum.h"

namespace phasevox {

/// Normalized open-phase timing of one decomposed cycle, both in [0, 1].
struct TimeConstants {
    double t1 = 0.0;  // (t_min - t_max) / T0
    double t2 = 0.0;  // (t_min - t_op) / T0
    bool degenerate = false;
};

/// Locates t_max (argmax), t_min (argmin after t_max) and t_op (first rise
/// above baseline + 5% of peak-to-peak before t_max) on the cycle and forms
/// T1 and T2. Throws DataError on a flat cycle.
TimeConstants extract_time_constants(GlottalCycle& cycle);

/// Irregularly sampled values (at sample-index instants) linearly
/// interpolated onto the 10 ms grid, constant extrapolation at the edges.
/// Throws DataError on an empty stream.
std::vector<double> interpolate_stream(const std::vector<long>& instants,
                                       const std::vector<double>& values,
                                       size_t n_ticks,
                                       int sample_rate = kTargetSampleRate,
                                       double hop_ms = 10.0);

}  // namespace phasevox
