#pragma once

#include <array>
#include <string>
#include <vector>

#include "phasevox/spectrogram.h"

namespace phasevox {

enum class VoiceLabel { kNormophonic, kPathological };

std::string to_string(VoiceLabel label);
VoiceLabel voice_label_from_string(const std::string& s);

constexpr int kNumFeatures = 10;
extern const std::array<std::string, kNumFeatures> kFeatureNames;
// {"dFM","dSMOOTH","dMODGD","dPPGD","dCGD","T1","T2","BAL1","BAL2","BAL3"}

int feature_index(const std::string& name);  // throws UsageError on unknown name

/// One 10 ms feature frame: five spectrogram deltas, two mixed-phase time
/// constants, three spectral balances.
using FeatureFrame = std::array<double, kNumFeatures>;

struct FeatureMatrix {
    std::vector<FeatureFrame> frames;
    std::vector<VoiceLabel> labels;
    std::vector<std::string> patient_ids;

    size_t size() const { return frames.size(); }
    void append(const FeatureMatrix& other);
};

/// Relative frame-to-frame L2 difference d_t = ||s_t - s_{t-1}|| /
/// (||s_{t-1}|| + eps); d_0 duplicated from d_1. use_l1 switches to the L1
/// norm. Throws DataError for < 2 frames.
std::vector<double> spectrogram_delta(const Spectrogram& spec, bool use_l1 = false);

/// Band edges (Hz) for the three spectral balances.
struct BalanceBands {
    double edge1_hz = 1000.0;
    double edge2_hz = 4000.0;
};

/// Per-frame energy fractions in [0, edge1), [edge1, edge2), [edge2, nyq].
/// Silent frames yield (1/3, 1/3, 1/3). Requires an FM spectrogram.
std::vector<std::array<double, 3>> spectral_balances(const Spectrogram& fm,
                                                     const BalanceBands& bands = {});

/// Aligns all streams on the 10 ms grid of the spectrograms.
/// t1/t2 are the per-tick interpolated streams (empty means no GCI
/// coverage: a DataError unless allow_partial, which drops the recording).
FeatureMatrix assemble_features(const std::vector<std::vector<double>>& deltas,
                                const std::vector<double>& t1,
                                const std::vector<double>& t2,
                                const std::vector<std::array<double, 3>>& balances,
                                VoiceLabel label, const std::string& patient_id,
                                bool allow_partial = false);

void write_features_csv(const std::string& path, const FeatureMatrix& m,
                        const std::string& config_hash);
FeatureMatrix read_features_csv(const std::string& path);

/// Dataset manifest rows: path,label,patient_id.
struct ManifestEntry {
    std::string path;
    VoiceLabel label;
    std::string patient_id;
};
std::vector<ManifestEntry> read_manifest(const std::string& path);
void write_manifest(const std::string& path, const std::vector<ManifestEntry>& rows,
                    const std::string& config_hash);

}  // namespace phasevox
