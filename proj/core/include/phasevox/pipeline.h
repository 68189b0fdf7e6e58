#pragma once

#include <string>

#include "phasevox/audio.h"
#include "phasevox/config.h"
#include "phasevox/features.h"

namespace phasevox {

/// Full per-recording analysis: framing, the five spectrograms, deltas,
/// GCI detection, mixed-phase decomposition, T1/T2 interpolation, spectral
/// balances, assembled on the 10 ms grid.
FeatureMatrix analyze_recording(const AudioSignal& signal, VoiceLabel label,
                                const std::string& patient_id,
                                const PipelineConfig& cfg = {},
                                bool allow_partial = false);

/// Runs analyze_recording over every manifest entry. jobs > 1 processes
/// files in parallel; output order follows the manifest regardless.
FeatureMatrix analyze_manifest(const std::string& manifest_path,
                               const PipelineConfig& cfg = {},
                               bool allow_partial = false, int jobs = 1);

}  // namespace phasevox
