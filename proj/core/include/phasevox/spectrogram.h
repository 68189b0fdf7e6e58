#pragma once

#include <string>
#include <vector>

namespace phasevox {

enum class SpectrogramKind { kFm, kSmooth, kModGd, kPpgd, kCgd };

std::string to_string(SpectrogramKind kind);
SpectrogramKind spectrogram_kind_from_string(const std::string& name);

/// Time-frequency matrix, one row per frame, non-negative frequency bins
/// only (n_fft/2 + 1 columns). Holds |X| for magnitude kinds and group
/// delay in samples for GD kinds.
struct Spectrogram {
    std::vector<std::vector<double>> data;
    SpectrogramKind kind = SpectrogramKind::kFm;
    double hop_ms = 10.0;
    double bin_hz = 0.0;

    size_t n_frames() const { return data.size(); }
    size_t n_bins() const { return data.empty() ? 0 : data[0].size(); }
};

/// CSV export, one row per frame; first line is a `# config_hash=` comment.
void write_spectrogram_csv(const std::string& path, const Spectrogram& spec,
                           const std::string& config_hash);

/// 8-bit greyscale image, min-max normalized, time on the x axis.
void write_spectrogram_pgm(const std::string& path, const Spectrogram& spec,
                           const std::string& config_hash);
void write_spectrogram_png(const std::string& path, const Spectrogram& spec,
                           const std::string& config_hash);

}  // namespace phasevox
