#include "oracles.h"

#include <cmath>
#include <numbers>
#include <random>

namespace oracles {

std::vector<std::complex<double>> naive_dft(const std::vector<double>& x, int n) {
    std::vector<std::complex<double>> out(n, {0.0, 0.0});
    for (int k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (size_t m = 0; m < x.size(); ++m) {
            const double ang = -2.0 * std::numbers::pi * k * static_cast<double>(m) / n;
            acc += x[m] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

double single_pole_group_delay(double a, double omega) {
    const double c = std::cos(omega);
    return (a * c - a * a) / (1.0 - 2.0 * a * c + a * a);
}

double single_pole_cepstrum(double a, int q) {
    return std::pow(a, q) / q;
}

phasevox::AudioSignal sine_signal(double freq_hz, double duration_s, double amplitude) {
    phasevox::AudioSignal s;
    s.sample_rate = phasevox::kTargetSampleRate;
    const long n = static_cast<long>(duration_s * s.sample_rate);
    s.samples.resize(n);
    for (long i = 0; i < n; ++i)
        s.samples[i] =
            amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * i / s.sample_rate);
    s.source_id = "sine";
    return s;
}

phasevox::AudioSignal noise_signal(double duration_s, unsigned seed) {
    phasevox::AudioSignal s;
    s.sample_rate = phasevox::kTargetSampleRate;
    const long n = static_cast<long>(duration_s * s.sample_rate);
    s.samples.resize(n);
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 0.25);
    for (auto& v : s.samples) v = gauss(rng);
    s.source_id = "noise";
    return s;
}

double max_normalized_xcorr(const std::vector<double>& a, const std::vector<double>& b) {
    const long na = static_cast<long>(a.size());
    const long nb = static_cast<long>(b.size());
    double ea = 0.0, eb = 0.0;
    for (double v : a) ea += v * v;
    for (double v : b) eb += v * v;
    if (ea <= 0.0 || eb <= 0.0) return 0.0;
    const double denom = std::sqrt(ea * eb);

    double best = -1.0;
    for (long lag = -nb + 1; lag < na; ++lag) {
        double acc = 0.0;
        for (long i = 0; i < nb; ++i) {
            const long j = lag + i;
            if (j < 0 || j >= na) continue;
            acc += a[j] * b[i];
        }
        best = std::max(best, acc / denom);
    }
    return best;
}

double mean(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return v.empty() ? 0.0 : acc / v.size();
}

double stddev(const std::vector<double>& v) {
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return v.size() > 1 ? std::sqrt(acc / (v.size() - 1)) : 0.0;
}

}  // namespace oracles
