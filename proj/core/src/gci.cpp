#include "phasevox/gci.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "phasevox/errors.h"

namespace phasevox {

namespace {

constexpr int kLpOrder = 18;
constexpr double kLpFrameMs = 25.0;
constexpr double kLpHopMs = 10.0;

// Levinson-Durbin: predictor a with x(n) ~ sum_k a[k] x(n-1-k).
std::vector<double> levinson(const std::vector<double>& r, int order) {
    std::vector<double> a(order, 0.0), prev(order, 0.0);
    double err = r[0];
    if (err <= 0.0) return a;
    for (int i = 0; i < order; ++i) {
        double acc = r[i + 1];
        for (int j = 0; j < i; ++j) acc -= a[j] * r[i - j];
        const double k = acc / err;
        prev = a;
        a[i] = k;
        for (int j = 0; j < i; ++j) a[j] = prev[j] - k * prev[i - 1 - j];
        err *= (1.0 - k * k);
        if (err <= 0.0) break;
    }
    return a;
}

// Whole-signal LP residual from per-frame order-18 analysis on 25 ms frames.
std::vector<double> lp_residual(const std::vector<double>& x, int sample_rate) {
    const int frame_len = static_cast<int>(kLpFrameMs * sample_rate / 1000.0);
    const int hop = static_cast<int>(kLpHopMs * sample_rate / 1000.0);
    const long n = static_cast<long>(x.size());
    std::vector<double> res(n, 0.0);
    if (n < frame_len) return res;

    const long n_frames = (n - frame_len) / hop + 1;
    std::vector<std::vector<double>> coeffs(n_frames);
    std::vector<double> hamming(frame_len);
    for (int i = 0; i < frame_len; ++i)
        hamming[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (frame_len - 1));

    std::vector<double> w(frame_len), r(kLpOrder + 1);
    for (long f = 0; f < n_frames; ++f) {
        const long s = f * hop;
        for (int i = 0; i < frame_len; ++i) w[i] = x[s + i] * hamming[i];
        for (int lag = 0; lag <= kLpOrder; ++lag) {
            double acc = 0.0;
            for (int i = 0; i + lag < frame_len; ++i) acc += w[i] * w[i + lag];
            r[lag] = acc;
        }
        r[0] *= 1.0 + 1e-9;  // tiny ridge against singular autocorrelation
        coeffs[f] = levinson(r, kLpOrder);
    }

    for (long m = 0; m < n; ++m) {
        long f = (m - frame_len / 2) / hop;
        f = std::clamp<long>(f, 0, n_frames - 1);
        const auto& a = coeffs[f];
        double pred = 0.0;
        for (int k = 0; k < kLpOrder; ++k)
            if (m - 1 - k >= 0) pred += a[k] * x[m - 1 - k];
        res[m] = x[m] - pred;
    }
    return res;
}

double skewness(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= v.size();
    double m2 = 0.0, m3 = 0.0;
    for (double x : v) {
        const double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= v.size();
    m3 /= v.size();
    return m2 > 1e-20 ? m3 / std::pow(m2, 1.5) : 0.0;
}

}  // namespace

GciSequence detect_gci(const AudioSignal& signal, const PitchTrack& pitch) {
    GciSequence out;
    bool any_voiced = false;
    for (double f : pitch.f0_hz)
        if (f > 0.0) any_voiced = true;
    if (!any_voiced || signal.samples.size() < 512) {
        out.no_voiced_content = true;
        return out;
    }

    auto res = lp_residual(signal.samples, signal.sample_rate);

    // Polarity normalization: closure peaks are assumed negative-going.
    if (skewness(res) > 0.0)
        for (double& v : res) v = -v;

    // Candidate instants: negative residual peaks inside voiced regions.
    double max_depth = 0.0;
    for (size_t n = 0; n < res.size(); ++n)
        if (pitch.f0_at_sample(static_cast<long>(n), signal.sample_rate) > 0.0)
            max_depth = std::max(max_depth, -res[n]);
    if (max_depth <= 0.0) {
        out.no_voiced_content = true;
        return out;
    }
    const double thr = 0.1 * max_depth;

    std::vector<long> cand;
    std::vector<double> score;
    for (size_t n = 1; n + 1 < res.size(); ++n) {
        if (res[n] >= -thr) continue;
        if (!(res[n] <= res[n - 1] && res[n] < res[n + 1])) continue;
        if (pitch.f0_at_sample(static_cast<long>(n), signal.sample_rate) <= 0.0) continue;
        cand.push_back(static_cast<long>(n));
        score.push_back(-res[n] / max_depth);
    }
    if (cand.empty()) {
        out.no_voiced_content = true;
        return out;
    }

    // Dynamic-programming selection: chain candidates whose spacing stays
    // within +-30% of the local pitch period.
    const size_t nc = cand.size();
    std::vector<double> dp(score);
    std::vector<long> parent(nc, -1);
    for (size_t j = 1; j < nc; ++j) {
        const double f0 = pitch.f0_at_sample(cand[j], signal.sample_rate);
        const double t0 = f0 > 0.0 ? signal.sample_rate / f0 : 0.0;
        if (t0 <= 0.0) continue;
        for (long i = static_cast<long>(j) - 1; i >= 0; --i) {
            const double gap = static_cast<double>(cand[j] - cand[i]);
            if (gap > 1.3 * t0) break;
            if (gap < 0.7 * t0) continue;
            const double dev = (gap - t0) / t0;
            const double total = dp[i] + score[j] - 2.0 * dev * dev;
            if (total > dp[j]) {
                dp[j] = total;
                parent[j] = i;
            }
        }
    }

    size_t best = 0;
    for (size_t j = 1; j < nc; ++j)
        if (dp[j] > dp[best]) best = j;
    std::vector<long> path;
    for (long j = static_cast<long>(best); j >= 0; j = parent[j]) path.push_back(cand[j]);
    std::reverse(path.begin(), path.end());
    out.instants = std::move(path);
    return out;
}

void write_gci_csv(const std::string& path, const GciSequence& gci,
                   const std::string& config_hash) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write: " + path);
    out << "# config_hash=" << config_hash
        << (gci.no_voiced_content ? " no_voiced_content=1" : "") << "\n";
    out << "sample_index\n";
    for (long i : gci.instants) out << i << "\n";
}

}  // namespace phasevox
