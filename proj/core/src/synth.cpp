#include "phasevox/synth.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "phasevox/errors.h"

namespace phasevox {

namespace {

constexpr double kOpenPhaseRise = 0.02;  // pulse amplitude at glottal opening

void validate(const SynthConfig& c) {
    if (c.f0_hz < 60.0 || c.f0_hz > 500.0) throw UsageError("f0 out of [60, 500] Hz");
    if (c.duration_s <= 0.0) throw UsageError("duration must be positive");
    if (c.jitter_pct < 0.0 || c.shimmer_pct < 0.0)
        throw UsageError("jitter/shimmer must be non-negative");
    if (c.open_quotient <= 0.0 || c.open_quotient >= 1.0)
        throw UsageError("open quotient must be in (0, 1)");
    for (const auto& f : c.formants)
        if (f.center_hz >= 8000.0 || f.center_hz <= 0.0 || f.bandwidth_hz <= 0.0)
            throw UsageError("formant out of range");
}

// Maximum-phase open-phase pulse: time-reversed truncated exponential, all
// z-plane zeros at radius 1/b > 1.
std::vector<double> open_phase_pulse(int n_open) {
    std::vector<double> g(n_open);
    if (n_open == 1) {
        g[0] = 1.0;
        return g;
    }
    const double b = std::pow(kOpenPhaseRise, 1.0 / (n_open - 1));
    for (int n = 0; n < n_open; ++n) g[n] = std::pow(b, n_open - 1 - n);
    return g;
}

void apply_resonator(std::vector<double>& x, double center_hz, double bandwidth_hz,
                     int sample_rate) {
    const double r = std::exp(-std::numbers::pi * bandwidth_hz / sample_rate);
    const double c = 2.0 * r * std::cos(2.0 * std::numbers::pi * center_hz / sample_rate);
    const double r2 = r * r;
    double y1 = 0.0, y2 = 0.0;
    for (double& v : x) {
        const double y = v + c * y1 - r2 * y2;
        y2 = y1;
        y1 = y;
        v = y;
    }
}

uint32_t file_seed(uint32_t seed, int index) {
    uint64_t z = (static_cast<uint64_t>(seed) << 32) | static_cast<uint32_t>(index);
    // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z = z ^ (z >> 31);
    return static_cast<uint32_t>(z);
}

}  // namespace

VoiceLabel synth_label(const SynthConfig& cfg) {
    const bool normo =
        cfg.jitter_pct < 1.0 && cfg.shimmer_pct < 3.0 && cfg.noise_db < -25.0;
    return normo ? VoiceLabel::kNormophonic : VoiceLabel::kPathological;
}

std::pair<AudioSignal, SynthTruth> synth_vowel(const SynthConfig& config) {
    validate(config);
    const int sr = kTargetSampleRate;
    const long n_samples = static_cast<long>(std::lround(config.duration_s * sr));
    const double t0_nom = sr / config.f0_hz;

    std::mt19937 rng(config.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    SynthTruth truth;
    truth.label = synth_label(config);

    std::vector<double> excitation(n_samples + 1024, 0.0);
    long pos = 0;
    while (pos < n_samples) {
        double period = t0_nom + gauss(rng) * config.jitter_pct * t0_nom / 100.0;
        period = std::clamp(period, 0.5 * t0_nom, 1.5 * t0_nom);
        const int t = static_cast<int>(std::lround(period));
        double amp = 1.0 + gauss(rng) * config.shimmer_pct / 100.0;
        amp = std::max(amp, 0.05);

        const int n_open = std::max(2, static_cast<int>(std::lround(config.open_quotient * t)));
        auto pulse = open_phase_pulse(n_open);
        for (int n = 0; n < n_open && pos + n < static_cast<long>(excitation.size()); ++n)
            excitation[pos + n] += amp * pulse[n];

        // Minimum-phase return phase: sharp negative spike at closure
        // decaying back towards zero.
        const long closure = pos + n_open;
        const double ret_decay = 0.5;
        double v = -2.0 * amp;
        for (long m = closure;
             m < closure + 16 && m < static_cast<long>(excitation.size()); ++m) {
            excitation[m] += v;
            v *= ret_decay;
        }

        if (closure < n_samples) {
            truth.excitation_instants.push_back(closure);
            truth.cycle_starts.push_back(pos);
            std::vector<double> scaled(pulse);
            for (double& s : scaled) s *= amp;
            truth.glottal_cycles.push_back(std::move(scaled));
        }
        pos += t;
    }
    excitation.resize(n_samples);

    std::vector<double> voiced = excitation;
    for (const auto& f : config.formants)
        apply_resonator(voiced, f.center_hz, f.bandwidth_hz, sr);

    double rms = 0.0;
    for (double v : voiced) rms += v * v;
    rms = std::sqrt(rms / voiced.size());
    const double noise_sigma = rms * std::pow(10.0, config.noise_db / 20.0);
    for (double& v : voiced) v += noise_sigma * gauss(rng);

    // Leaky first-difference radiation (zero inside the unit circle keeps
    // the causal chain minimum-phase).
    std::vector<double> out(n_samples);
    double prev = 0.0;
    for (long n = 0; n < n_samples; ++n) {
        out[n] = voiced[n] - 0.99 * prev;
        prev = voiced[n];
    }

    double peak = 0.0;
    for (double v : out) peak = std::max(peak, std::abs(v));
    if (peak > 0.0)
        for (double& v : out) v *= 0.9 / peak;

    AudioSignal sig;
    sig.samples = std::move(out);
    sig.sample_rate = sr;
    sig.source_id = "synth";
    return {std::move(sig), std::move(truth)};
}

void write_truth_json(const std::string& path, const SynthTruth& truth,
                      const SynthConfig& cfg, const std::string& config_hash) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write: " + path);
    out << "{\n  \"config_hash\": \"" << config_hash << "\",\n";
    out << "  \"label\": \"" << to_string(truth.label) << "\",\n";
    out << "  \"f0_hz\": " << cfg.f0_hz << ",\n";
    out << "  \"jitter_pct\": " << cfg.jitter_pct << ",\n";
    out << "  \"shimmer_pct\": " << cfg.shimmer_pct << ",\n";
    out << "  \"noise_db\": " << cfg.noise_db << ",\n";
    out << "  \"open_quotient\": " << cfg.open_quotient << ",\n";
    out << "  \"seed\": " << cfg.seed << ",\n";
    out << "  \"excitation_instants\": [";
    for (size_t i = 0; i < truth.excitation_instants.size(); ++i)
        out << (i ? "," : "") << truth.excitation_instants[i];
    out << "],\n  \"cycle_starts\": [";
    for (size_t i = 0; i < truth.cycle_starts.size(); ++i)
        out << (i ? "," : "") << truth.cycle_starts[i];
    out << "]\n}\n";
}

CorpusPaths make_corpus(int n_normo, int n_patho, uint32_t seed,
                        const std::string& out_dir, const std::string& config_hash,
                        double duration_s) {
    if (n_normo < 1 || n_patho < 1)
        throw UsageError("corpus needs at least one file per class");
    std::filesystem::create_directories(out_dir);

    CorpusPaths paths;
    std::vector<ManifestEntry> manifest;
    const int total = n_normo + n_patho;
    for (int i = 0; i < total; ++i) {
        const bool normo = i < n_normo;
        std::mt19937 rng(file_seed(seed, i));
        auto uniform = [&rng](double lo, double hi) {
            return std::uniform_real_distribution<double>(lo, hi)(rng);
        };

        SynthConfig cfg;
        cfg.f0_hz = uniform(90.0, 220.0);
        cfg.duration_s = duration_s;
        if (normo) {
            cfg.jitter_pct = uniform(0.0, 0.5);
            cfg.shimmer_pct = uniform(0.0, 2.0);
            cfg.noise_db = uniform(-60.0, -30.0);
        } else {
            cfg.jitter_pct = uniform(2.0, 6.0);
            cfg.shimmer_pct = uniform(5.0, 15.0);
            cfg.noise_db = uniform(-25.0, -10.0);
        }
        cfg.seed = file_seed(seed, i + total);

        auto [sig, truth] = synth_vowel(cfg);

        char name[32];
        std::snprintf(name, sizeof name, "%c%03d", normo ? 'n' : 'p',
                      normo ? i : i - n_normo);
        const std::string base = out_dir + "/" + name;
        write_wav(base + ".wav", sig);
        write_truth_json(base + ".truth.json", truth, cfg, config_hash);
        manifest.push_back({base + ".wav", truth.label, name});
        paths.wav_paths.push_back(base + ".wav");
    }
    paths.manifest_path = out_dir + "/manifest.csv";
    write_manifest(paths.manifest_path, manifest, config_hash);
    return paths;
}

}  // namespace phasevox
