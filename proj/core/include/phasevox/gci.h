#pragma once

#include <vector>

#include "phasevox/audio.h"
#include "phasevox/pitch.h"

namespace phasevox {

/// Glottal closure instants as sample indices, strictly increasing.
struct GciSequence {
    std::vector<long> instants;
    bool no_voiced_content = false;
};

/// LP-residual GCI detector: order-18 linear prediction on 25 ms frames,
/// candidate instants at negative residual peaks, pruned by dynamic
/// programming enforcing spacing within +-30% of the local pitch period.
/// The signal is polarity-normalized first (residual skewness forced
/// negative). Unvoiced input yields an empty, flagged sequence.
GciSequence detect_gci(const AudioSignal& signal, const PitchTrack& pitch);

void write_gci_csv(const std::string& path, const GciSequence& gci,
                   const std::string& config_hash);

}  // namespace phasevox
