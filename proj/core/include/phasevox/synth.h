#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "phasevox/audio.h"
#include "phasevox/features.h"

namespace phasevox {

struct FormantSpec {
    double center_hz;
    double bandwidth_hz;
};

/// Sustained-vowel generator settings. Jitter/shimmer are cycle-to-cycle
/// perturbations in percent; noise_db is aspiration level relative to the
/// voiced energy.
struct SynthConfig {
    double f0_hz = 120.0;
    double duration_s = 1.0;
    double jitter_pct = 0.0;
    double shimmer_pct = 0.0;
    double noise_db = -60.0;
    double open_quotient = 0.6;
    std::vector<FormantSpec> formants = {{700, 130}, {1220, 140}, {2600, 160}};
    uint32_t seed = 1;
};

/// Construction-level ground truth emitted with every synthetic vowel.
struct SynthTruth {
    std::vector<long> excitation_instants;          // true closure samples
    std::vector<std::vector<double>> glottal_cycles;  // true open-phase pulses
    std::vector<long> cycle_starts;
    VoiceLabel label = VoiceLabel::kNormophonic;
};

/// Label rule: normophonic iff jitter < 1%, shimmer < 3% and noise < -25 dB.
VoiceLabel synth_label(const SynthConfig& cfg);

/// Mixed-phase vowel: per cycle, a maximum-phase open-phase pulse
/// (time-reversed exponential over open_quotient * T0) plus a minimum-phase
/// return phase, filtered through the all-pole formant cascade, aspiration
/// noise added, leaky first-difference radiation, peak-normalized to 0.9.
std::pair<AudioSignal, SynthTruth> synth_vowel(const SynthConfig& config);

struct CorpusPaths {
    std::string manifest_path;
    std::vector<std::string> wav_paths;
};

/// Generates n_normo + n_patho vowels with per-file RNG streams derived
/// from (seed, index), writes WAVs, per-file truth JSON and a manifest CSV.
CorpusPaths make_corpus(int n_normo, int n_patho, uint32_t seed,
                        const std::string& out_dir,
                        const std::string& config_hash = "",
                        double duration_s = 1.0);

void write_truth_json(const std::string& path, const SynthTruth& truth,
                      const SynthConfig& cfg, const std::string& config_hash);

}  // namespace phasevox
