#pragma once

#include <string>

#include "phasevox/features.h"
#include "phasevox/group_delay.h"
#include "phasevox/mlp.h"

namespace phasevox {

/// Whole-pipeline configuration as one declarative document. Parsed from a
/// `key = value` text file; unknown keys are rejected. The canonical
/// serialization (and its hash) is embedded in every output artifact.
struct PipelineConfig {
    double frame_ms = 30.0;
    double hop_ms = 10.0;
    int n_fft = 1024;
    ModGdConfig modgd;
    CgdConfig cgd;
    BalanceBands balance_bands;
    int mi_bins = 50;
    TrainConfig train;
    double frame_threshold = 0.5;
    double ccd_window_periods = 2.0;
    bool strict_rate = false;
    bool delta_l1 = false;

    static PipelineConfig from_file(const std::string& path);
    void set(const std::string& key, const std::string& value);  // throws UsageError

    std::string serialize() const;
    std::string hash() const;  // FNV-1a of the canonical serialization
};

}  // namespace phasevox
