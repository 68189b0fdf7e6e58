#include "phasevox/cepstrum.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phasevox/errors.h"
#include "phasevox/fft.h"
#include "phasevox/framing.h"

namespace phasevox {

namespace {

constexpr double kMagFloorRel = 1e-10;

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

ComplexCepstrum complex_cepstrum(const std::vector<double>& x, int n_fft) {
    ComplexCepstrum out;
    const int len = static_cast<int>(x.size());
    if (len == 0) throw DataError("complex cepstrum of an empty sequence");
    if (n_fft <= 0) n_fft = next_pow2(8 * len);
    if (n_fft < len) throw DataError("cepstrum n_fft shorter than the input");
    out.n_fft = n_fft;

    // Remove the bulk linear-phase term by shifting the max-|x| sample to
    // the origin.
    int m = 0;
    for (int i = 1; i < len; ++i)
        if (std::abs(x[i]) > std::abs(x[m])) m = i;
    out.shift = m;
    std::vector<std::complex<double>> buf(n_fft, {0.0, 0.0});
    for (int i = 0; i < len; ++i)
        buf[((i - m) % n_fft + n_fft) % n_fft] = {x[i], 0.0};

    auto X = fft::forward(buf);
    double max_mag = 0.0;
    for (const auto& v : X) max_mag = std::max(max_mag, std::abs(v));
    if (max_mag <= 0.0) throw DataError("complex cepstrum of an all-zero sequence");
    const double floor_mag = max_mag * kMagFloorRel;

    std::vector<double> logmag(n_fft), phase(n_fft);
    int floored = 0;
    for (int k = 0; k < n_fft; ++k) {
        double mag = std::abs(X[k]);
        if (mag < floor_mag) {
            mag = floor_mag;
            ++floored;
        }
        logmag[k] = std::log(mag);
        phase[k] = std::arg(X[k]);
    }

    // Unwrap the lower half, take out the residual integer linear-phase
    // component so the phase returns to ~0 at the Nyquist bin, then mirror
    // with odd symmetry. The mirroring keeps the log spectrum conjugate
    // symmetric (hence the cepstrum exactly real) even when the raw phase of
    // the upper half would unwrap inconsistently.
    const int half = n_fft / 2;
    for (int k = 1; k <= half; ++k) {
        double d = phase[k] - phase[k - 1];
        while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
        while (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
        phase[k] = phase[k - 1] + d;
    }
    const double slope = std::round(phase[half] / std::numbers::pi);
    for (int k = 0; k <= half; ++k)
        phase[k] -= slope * std::numbers::pi * k / half;
    for (int k = 1; k < half; ++k) phase[n_fft - k] = -phase[k];
    // Removing an integer-slope linear phase delays the sequence by `slope`
    // samples; fold it into the reported shift so the split spectra multiply
    // back to the DFT of x circularly advanced by exactly `shift`.
    out.shift = m - static_cast<int>(slope);

    // Reliability: corrected phase must stay locally smooth, and the floor
    // must not dominate the spectrum.
    out.unwrap_ok = floored < n_fft / 5;
    for (int k = 1; k <= half && out.unwrap_ok; ++k)
        if (std::abs(phase[k] - phase[k - 1]) > std::numbers::pi) out.unwrap_ok = false;

    std::vector<std::complex<double>> logspec(n_fft);
    for (int k = 0; k < n_fft; ++k) logspec[k] = {logmag[k], phase[k]};
    auto c = fft::inverse(logspec);
    out.coeffs.resize(n_fft);
    for (int q = 0; q < n_fft; ++q) out.coeffs[q] = c[q].real();
    return out;
}

CepstrumSplit split_cepstrum(const ComplexCepstrum& cc) {
    const int n = cc.n_fft;
    const int half = n / 2;
    std::vector<std::complex<double>> causal(n, {0.0, 0.0}), anti(n, {0.0, 0.0});
    causal[0] = {cc.coeffs[0], 0.0};  // gain term goes to the causal side
    for (int q = 1; q <= half; ++q) causal[q] = {cc.coeffs[q], 0.0};
    for (int q = half + 1; q < n; ++q) anti[q] = {cc.coeffs[q], 0.0};

    CepstrumSplit out;
    auto Cc = fft::forward(causal);
    auto Ca = fft::forward(anti);
    out.causal_spectrum.resize(n);
    out.anticausal_spectrum.resize(n);
    for (int k = 0; k < n; ++k) {
        out.causal_spectrum[k] = std::exp(Cc[k]);
        out.anticausal_spectrum[k] = std::exp(Ca[k]);
    }
    auto ct = fft::inverse(out.causal_spectrum);
    auto at = fft::inverse(out.anticausal_spectrum);
    out.causal_time.resize(n);
    out.anticausal_time.resize(n);
    for (int i = 0; i < n; ++i) {
        out.causal_time[i] = ct[i].real();
        out.anticausal_time[i] = at[i].real();
    }
    return out;
}

std::vector<GlottalCycle> ccd_decompose(const AudioSignal& signal,
                                        const GciSequence& gci,
                                        const PitchTrack& pitch,
                                        double window_periods) {
    if (gci.instants.size() < 2) throw DataError("CCD needs at least 2 GCIs");
    std::vector<GlottalCycle> cycles;
    const long n = static_cast<long>(signal.samples.size());

    for (size_t g = 0; g < gci.instants.size(); ++g) {
        const long pos = gci.instants[g];
        double f0 = pitch.f0_at_sample(pos, signal.sample_rate);
        int t0;
        if (f0 > 0.0) {
            t0 = static_cast<int>(std::lround(signal.sample_rate / f0));
        } else if (g + 1 < gci.instants.size()) {
            t0 = static_cast<int>(gci.instants[g + 1] - pos);
        } else {
            t0 = static_cast<int>(pos - gci.instants[g - 1]);
        }
        if (t0 < 16 || t0 > 400) continue;

        const int win_len = static_cast<int>(std::lround(window_periods * t0)) | 1;
        const long start = pos - win_len / 2;
        if (start < 0 || start + win_len > n) continue;

        auto w = blackman_window(win_len);
        std::vector<double> seg(win_len);
        for (int i = 0; i < win_len; ++i) seg[i] = signal.samples[start + i] * w[i];

        ComplexCepstrum cc;
        try {
            cc = complex_cepstrum(seg);
        } catch (const DataError&) {
            continue;
        }
        if (!cc.unwrap_ok) continue;

        auto split = split_cepstrum(cc);
        GlottalCycle cycle;
        cycle.t0_samples = t0;
        cycle.gci_sample = pos;
        cycle.waveform.resize(t0);
        // Anticausal samples live at n in [-(T0-1), 0], wrapped to the tail.
        for (int i = 0; i < t0; ++i) {
            const int idx = (cc.n_fft - (t0 - 1) + i) % cc.n_fft;
            cycle.waveform[i] = split.anticausal_time[idx];
        }
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

}  // namespace phasevox
