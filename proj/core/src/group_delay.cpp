#include "phasevox/group_delay.h"

#include <algorithm>
#include <cmath>

#include "phasevox/errors.h"
#include "phasevox/fft.h"

namespace phasevox {

namespace {

constexpr double kMagFloorRel = 1e-10;

bool all_zero(const std::vector<double>& x) {
    for (double v : x)
        if (v != 0.0) return false;
    return true;
}

std::vector<double> ramp_weighted(const std::vector<double>& x) {
    std::vector<double> y(x.size());
    for (size_t n = 0; n < x.size(); ++n) y[n] = static_cast<double>(n) * x[n];
    return y;
}

// Numerator X_R Y_R + X_I Y_I and power |X|^2 per bin, non-negative bins only.
struct GdParts {
    std::vector<double> numerator;
    std::vector<double> power;
    double max_power = 0.0;
};

GdParts gd_parts(const std::vector<std::complex<double>>& X,
                 const std::vector<std::complex<double>>& Y) {
    const size_t half = X.size() / 2 + 1;
    GdParts p;
    p.numerator.resize(half);
    p.power.resize(half);
    for (size_t k = 0; k < half; ++k) {
        p.numerator[k] = X[k].real() * Y[k].real() + X[k].imag() * Y[k].imag();
        p.power[k] = std::norm(X[k]);
        p.max_power = std::max(p.max_power, p.power[k]);
    }
    return p;
}

std::vector<double> guarded_ratio(const GdParts& p, const std::vector<double>& denom) {
    const double guard = kGdSpikeGuard * p.max_power;
    std::vector<double> tau(p.numerator.size(), 0.0);
    for (size_t k = 0; k < tau.size(); ++k)
        if (p.power[k] >= guard && denom[k] > 0.0) tau[k] = p.numerator[k] / denom[k];
    return tau;
}

Spectrogram make_spec(SpectrogramKind kind, size_t n_frames, int n_fft,
                      int sample_rate) {
    Spectrogram s;
    s.kind = kind;
    s.bin_hz = static_cast<double>(sample_rate) / n_fft;
    s.data.reserve(n_frames);
    return s;
}

// Cepstrally smoothed magnitude spectrum: keep quefrencies |q| < lifter_len
// of the real cepstrum of log|X|, transform back and exponentiate.
std::vector<double> cepstral_smooth(const std::vector<std::complex<double>>& X,
                                    int lifter_len) {
    const int n = static_cast<int>(X.size());
    double max_mag = 0.0;
    for (const auto& v : X) max_mag = std::max(max_mag, std::abs(v));
    const double floor_mag = std::max(max_mag * kMagFloorRel, 1e-300);
    std::vector<std::complex<double>> logmag(n);
    for (int k = 0; k < n; ++k)
        logmag[k] = {std::log(std::max(std::abs(X[k]), floor_mag)), 0.0};
    auto ceps = fft::inverse(logmag);
    for (int q = 0; q < n; ++q) {
        const int dist = std::min(q, n - q);
        if (dist >= lifter_len) ceps[q] = 0.0;
    }
    auto smoothed_log = fft::forward(ceps);
    std::vector<double> s(n / 2 + 1);
    for (int k = 0; k <= n / 2; ++k) s[k] = std::exp(smoothed_log[k].real());
    return s;
}

// Triangular weights of total width `width` (odd length, renormalized at the
// borders by the caller).
std::vector<double> triangle(int width) {
    const int half = std::max(0, (width - 1) / 2);
    std::vector<double> w(2 * half + 1);
    for (int j = -half; j <= half; ++j)
        w[j + half] = static_cast<double>(half + 1 - std::abs(j));
    return w;
}

}  // namespace

std::vector<double> group_delay_raw(const Frame& frame, int n_fft) {
    if (all_zero(frame.samples)) throw DataError("group delay of an all-zero frame");
    auto X = fft::forward_real(frame.samples, n_fft);
    auto Y = fft::forward_real(ramp_weighted(frame.samples), n_fft);
    auto p = gd_parts(X, Y);
    return guarded_ratio(p, p.power);
}

std::vector<double> modgd_row(const Frame& frame, const ModGdConfig& cfg, int n_fft) {
    if (all_zero(frame.samples)) throw DataError("ModGD of an all-zero frame");
    auto X = fft::forward_real(frame.samples, n_fft);
    auto Y = fft::forward_real(ramp_weighted(frame.samples), n_fft);
    auto p = gd_parts(X, Y);
    auto s = cepstral_smooth(X, cfg.lifter_len);

    const double guard = kGdSpikeGuard * p.max_power;
    std::vector<double> tau(p.numerator.size(), 0.0);
    for (size_t k = 0; k < tau.size(); ++k) {
        if (p.power[k] < guard) continue;
        const double denom = std::pow(s[k], 2.0 * cfg.gamma);
        if (denom <= 0.0) continue;
        const double t = p.numerator[k] / denom;
        tau[k] = (t >= 0.0 ? 1.0 : -1.0) * std::pow(std::abs(t), cfg.alpha);
    }
    return tau;
}

std::vector<double> cgd_row(const Frame& frame, const CgdConfig& cfg, int n_fft) {
    if (all_zero(frame.samples)) throw DataError("CGD of an all-zero frame");
    if (cfg.rho <= 0.0) throw UsageError("chirp radius must be positive");

    // Zero-phase version: IDFT of the magnitude spectrum, circularly even
    // with the peak at n = 0 and the anticausal half wrapped to the tail.
    // Rotate so the peak sits at n = 0.
    auto X = fft::forward_real(frame.samples, n_fft);
    std::vector<std::complex<double>> mag(n_fft);
    for (int k = 0; k < n_fft; ++k) mag[k] = {std::abs(X[k]), 0.0};
    auto zc = fft::inverse(mag);
    std::vector<double> z(n_fft);
    int peak = 0;
    for (int n = 0; n < n_fft; ++n) {
        z[n] = zc[n].real();
        if (std::abs(z[n]) > std::abs(z[peak])) peak = n;
    }
    if (peak != 0) {
        std::vector<double> rot(n_fft);
        for (int n = 0; n < n_fft; ++n) rot[n] = z[(n + peak) % n_fft];
        z = std::move(rot);
    }

    // Group delay on the circle |z| = rho via the chirp transforms of z and
    // n z(n). The rho^{-n} weighting runs over the storage index, attenuating
    // the wrapped anticausal tail for rho > 1. The ramp uses the signed time
    // index of the two-sided sequence; the pairless sample at n_fft / 2 splits
    // evenly between +-n_fft / 2 and contributes nothing to the ramp.
    std::vector<double> weighted(n_fft), weighted_ramp(n_fft);
    double w = 1.0;
    const double inv_rho = 1.0 / cfg.rho;
    for (int n = 0; n < n_fft; ++n) {
        const int signed_n = (n <= n_fft / 2) ? n : n - n_fft;
        weighted[n] = z[n] * w;
        weighted_ramp[n] =
            (n == n_fft / 2) ? 0.0 : static_cast<double>(signed_n) * z[n] * w;
        w *= inv_rho;
        if (w < 1e-300) w = 0.0;
    }
    auto Zc = fft::forward_real(weighted, n_fft);
    auto Yc = fft::forward_real(weighted_ramp, n_fft);
    auto p = gd_parts(Zc, Yc);
    return guarded_ratio(p, p.power);
}

Spectrogram fm_spectrogram(const std::vector<Frame>& frames, int n_fft,
                           int sample_rate) {
    if (frames.empty()) throw DataError("no frames");
    auto spec = make_spec(SpectrogramKind::kFm, frames.size(), n_fft, sample_rate);
    const int half = n_fft / 2 + 1;
    for (const auto& f : frames) {
        auto X = fft::forward_real(f.samples, n_fft);
        std::vector<double> row(half);
        for (int k = 0; k < half; ++k) row[k] = std::abs(X[k]);
        spec.data.push_back(std::move(row));
    }
    return spec;
}

Spectrogram smoothed_spectrogram(const std::vector<Frame>& frames,
                                 const PitchTrack& pitch, int n_fft,
                                 int sample_rate) {
    auto fm = fm_spectrogram(frames, n_fft, sample_rate);
    const double hop_samples = sample_rate * fm.hop_ms / 1000.0;
    double fallback_f0 = pitch.median_voiced_f0();
    if (fallback_f0 <= 0.0) fallback_f0 = 100.0;

    const long nt = static_cast<long>(fm.n_frames());
    const long nk = static_cast<long>(fm.n_bins());

    // Frequency smoothing, per-frame kernel width of one F0.
    std::vector<std::vector<double>> freq_smoothed(nt);
    for (long t = 0; t < nt; ++t) {
        double f0 = (t < static_cast<long>(pitch.f0_hz.size()) && pitch.f0_hz[t] > 0.0)
                        ? pitch.f0_hz[t]
                        : fallback_f0;
        const int wf = std::max(1, static_cast<int>(std::ceil(f0 / fm.bin_hz)));
        auto kern = triangle(wf);
        const int half = (static_cast<int>(kern.size()) - 1) / 2;
        freq_smoothed[t].resize(nk);
        for (long k = 0; k < nk; ++k) {
            double acc = 0.0, wsum = 0.0;
            for (int j = -half; j <= half; ++j) {
                const long kk = k + j;
                if (kk < 0 || kk >= nk) continue;
                acc += kern[j + half] * fm.data[t][kk];
                wsum += kern[j + half];
            }
            freq_smoothed[t][k] = acc / wsum;
        }
    }

    // Time smoothing, kernel width of one pitch period in frames.
    Spectrogram out = fm;
    out.kind = SpectrogramKind::kSmooth;
    for (long t = 0; t < nt; ++t) {
        double f0 = (t < static_cast<long>(pitch.f0_hz.size()) && pitch.f0_hz[t] > 0.0)
                        ? pitch.f0_hz[t]
                        : fallback_f0;
        const double t0 = sample_rate / f0;
        const int wt = std::max(1, static_cast<int>(std::ceil(t0 / hop_samples)));
        auto kern = triangle(wt);
        const int half = (static_cast<int>(kern.size()) - 1) / 2;
        for (long k = 0; k < nk; ++k) {
            double acc = 0.0, wsum = 0.0;
            for (int j = -half; j <= half; ++j) {
                const long tt = t + j;
                if (tt < 0 || tt >= nt) continue;
                acc += kern[j + half] * freq_smoothed[tt][k];
                wsum += kern[j + half];
            }
            out.data[t][k] = acc / wsum;
        }
    }
    return out;
}

Spectrogram modgd_spectrogram(const std::vector<Frame>& frames,
                              const ModGdConfig& cfg, int n_fft, int sample_rate) {
    if (frames.empty()) throw DataError("no frames");
    auto spec = make_spec(SpectrogramKind::kModGd, frames.size(), n_fft, sample_rate);
    for (const auto& f : frames) spec.data.push_back(modgd_row(f, cfg, n_fft));
    return spec;
}

Spectrogram ppgd_spectrogram(const std::vector<Frame>& frames, int n_fft,
                             int sample_rate) {
    if (frames.empty()) throw DataError("no frames");
    auto spec = make_spec(SpectrogramKind::kPpgd, frames.size(), n_fft, sample_rate);
    for (const auto& f : frames) {
        if (all_zero(f.samples)) throw DataError("PPGD of an all-zero frame");
        auto X = fft::forward_real(f.samples, n_fft);
        auto Y = fft::forward_real(ramp_weighted(f.samples), n_fft);
        auto p = gd_parts(X, Y);
        spec.data.push_back(std::move(p.numerator));
    }
    return spec;
}

Spectrogram cgd_spectrogram(const std::vector<Frame>& frames, const CgdConfig& cfg,
                            int n_fft, int sample_rate) {
    if (frames.empty()) throw DataError("no frames");
    auto spec = make_spec(SpectrogramKind::kCgd, frames.size(), n_fft, sample_rate);
    for (const auto& f : frames) spec.data.push_back(cgd_row(f, cfg, n_fft));
    return spec;
}

}  // namespace phasevox
