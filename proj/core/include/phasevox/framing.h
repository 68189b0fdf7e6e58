#pragma once

#include <vector>

#include "phasevox/audio.h"

namespace phasevox {

enum class WindowKind { kBlackman, kNone };

/// One analysis frame, already windowed.
struct Frame {
    std::vector<double> samples;
    long start_sample = 0;
    WindowKind window_kind = WindowKind::kBlackman;
};

/// Classic Blackman window, w(0) == w(L-1) == 0 exactly.
std::vector<double> blackman_window(int length);

/// Splits the signal into windowed frames (default 30 ms / 10 ms hop).
/// Throws DataError if the signal is shorter than one frame.
std::vector<Frame> frame_signal(const AudioSignal& signal,
                                double frame_ms = 30.0,
                                double hop_ms = 10.0,
                                WindowKind window = WindowKind::kBlackman);

}  // namespace phasevox
