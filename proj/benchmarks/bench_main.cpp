#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "phasevox/cepstrum.h"
#include "phasevox/framing.h"
#include "phasevox/gci.h"
#include "phasevox/group_delay.h"
#include "phasevox/infotheory.h"
#include "phasevox/mlp.h"
#include "phasevox/pipeline.h"
#include "phasevox/pitch.h"
#include "phasevox/synth.h"

using namespace phasevox;

namespace {

AudioSignal bench_vowel(double duration_s = 1.0) {
    SynthConfig cfg;
    cfg.duration_s = duration_s;
    cfg.jitter_pct = 0.5;
    cfg.seed = 97;
    return synth_vowel(cfg).first;
}

std::vector<Frame> bench_frames() {
    static const std::vector<Frame> frames = frame_signal(bench_vowel());
    return frames;
}

void bm_fm_spectrogram(benchmark::State& state) {
    auto frames = bench_frames();
    for (auto _ : state) benchmark::DoNotOptimize(fm_spectrogram(frames));
    state.SetItemsProcessed(state.iterations() * frames.size());
}

void bm_modgd_spectrogram(benchmark::State& state) {
    auto frames = bench_frames();
    for (auto _ : state) benchmark::DoNotOptimize(modgd_spectrogram(frames));
    state.SetItemsProcessed(state.iterations() * frames.size());
}

void bm_cgd_spectrogram(benchmark::State& state) {
    auto frames = bench_frames();
    for (auto _ : state) benchmark::DoNotOptimize(cgd_spectrogram(frames));
    state.SetItemsProcessed(state.iterations() * frames.size());
}

void bm_gci_detection(benchmark::State& state) {
    auto sig = bench_vowel();
    auto pitch = estimate_f0(sig);
    for (auto _ : state) benchmark::DoNotOptimize(detect_gci(sig, pitch));
}

void bm_ccd_decompose(benchmark::State& state) {
    auto sig = bench_vowel();
    auto pitch = estimate_f0(sig);
    auto gci = detect_gci(sig, pitch);
    for (auto _ : state) benchmark::DoNotOptimize(ccd_decompose(sig, gci, pitch));
}

void bm_complex_cepstrum(benchmark::State& state) {
    std::vector<double> x(static_cast<size_t>(state.range(0)));
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : x) v = u(rng);
    for (auto _ : state) benchmark::DoNotOptimize(complex_cepstrum(x));
}

void bm_analyze_recording(benchmark::State& state) {
    auto sig = bench_vowel();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            analyze_recording(sig, VoiceLabel::kNormophonic, "bench"));
}

void bm_mlp_training_epoch(benchmark::State& state) {
    std::mt19937 rng(7);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    for (int i = 0; i < 10000; ++i) {
        std::vector<double> row(10);
        for (auto& v : row) v = g(rng) + 0.5 * (i & 1);
        x.push_back(std::move(row));
        y.push_back(i & 1);
    }
    TrainConfig cfg;
    cfg.epochs = 1;
    for (auto _ : state) benchmark::DoNotOptimize(train_mlp(x, y, cfg));
    state.SetItemsProcessed(state.iterations() * x.size());
}

void bm_normalized_mi(benchmark::State& state) {
    const size_t n = static_cast<size_t>(state.range(0));
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> f(n);
    std::vector<int> c(n);
    for (size_t i = 0; i < n; ++i) {
        c[i] = i & 1;
        f[i] = u(rng) + 0.3 * c[i];
    }
    for (auto _ : state) benchmark::DoNotOptimize(normalized_mi(f, c));
    state.SetItemsProcessed(state.iterations() * n);
}

void bm_synth_vowel(benchmark::State& state) {
    SynthConfig cfg;
    cfg.jitter_pct = 2.0;
    cfg.shimmer_pct = 4.0;
    for (auto _ : state) benchmark::DoNotOptimize(synth_vowel(cfg));
}

BENCHMARK(bm_fm_spectrogram)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_modgd_spectrogram)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_cgd_spectrogram)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_gci_detection)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_ccd_decompose)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_complex_cepstrum)->Range(256, 4096);
BENCHMARK(bm_analyze_recording)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_mlp_training_epoch)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_normalized_mi)->Range(1 << 12, 1 << 18);
BENCHMARK(bm_synth_vowel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
