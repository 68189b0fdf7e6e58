#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>

#include "oracles.h"
#include "phasevox/audio.h"
#include "phasevox/errors.h"
#include "phasevox/framing.h"
#include "phasevox/pitch.h"
#include "phasevox/spectrum.h"
#include "phasevox/synth.h"

using namespace phasevox;

namespace {
std::string tmp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}
}  // namespace

TEST_CASE("load_wav round-trips a 16 kHz mono file") {
    AudioSignal s;
    s.sample_rate = 16000;
    s.samples = {0.0, 0.25, -0.5, 0.75, -1.0};
    const auto path = tmp_path("pv_identity.wav");
    write_wav(path, s);
    auto loaded = load_wav(path);
    REQUIRE(loaded.samples.size() == s.samples.size());
    CHECK(loaded.sample_rate == 16000);
    for (size_t i = 0; i < s.samples.size(); ++i)
        CHECK(loaded.samples[i] == doctest::Approx(s.samples[i]).epsilon(1e-4));
}

TEST_CASE("full-scale square wave hits the exact scaling endpoints") {
    AudioSignal s;
    s.sample_rate = 16000;
    for (int i = 0; i < 64; ++i) s.samples.push_back(i % 2 ? -1.0 : 32767.0 / 32768.0);
    const auto path = tmp_path("pv_square.wav");
    write_wav(path, s);
    auto loaded = load_wav(path);
    for (size_t i = 0; i < loaded.samples.size(); ++i) {
        if (i % 2)
            CHECK(loaded.samples[i] == -1.0);
        else
            CHECK(loaded.samples[i] == 32767.0 / 32768.0);
    }
}

TEST_CASE("non-16 kHz input is rejected in strict mode, resampled otherwise") {
    AudioSignal s;
    s.sample_rate = 8000;
    s.samples.assign(8000, 0.1);
    const auto path = tmp_path("pv_8k.wav");
    write_wav(path, s);
    CHECK_THROWS_AS(load_wav(path, /*strict_rate=*/true), DataError);
    auto loaded = load_wav(path, false);
    CHECK(loaded.sample_rate == 16000);
    CHECK(loaded.samples.size() == doctest::Approx(16000).epsilon(0.01));
}

TEST_CASE("missing file raises") {
    CHECK_THROWS_AS(load_wav("/nonexistent/file.wav"), DataError);
}

TEST_CASE("float WAV loads losslessly") {
    AudioSignal s;
    s.sample_rate = 16000;
    s.samples = {0.125, -0.0625, 0.5};
    const auto path = tmp_path("pv_float.wav");
    write_wav_float(path, s);
    auto loaded = load_wav(path);
    for (size_t i = 0; i < s.samples.size(); ++i)
        CHECK(loaded.samples[i] == s.samples[i]);
}

TEST_CASE("framing: counts, window weights, boundary") {
    AudioSignal s;
    s.sample_rate = 16000;

    SUBCASE("480 samples give exactly one frame") {
        s.samples.assign(480, 1.0);
        auto frames = frame_signal(s);
        REQUIRE(frames.size() == 1);
        CHECK(frames[0].samples.size() == 480);
    }
    SUBCASE("count formula") {
        s.samples.assign(16000, 0.5);
        auto frames = frame_signal(s);
        CHECK(frames.size() == (16000 - 480) / 160 + 1);
    }
    SUBCASE("constant ones reproduce the window weights") {
        s.samples.assign(480, 1.0);
        auto frames = frame_signal(s);
        auto w = blackman_window(480);
        for (int i = 0; i < 480; ++i) CHECK(frames[0].samples[i] == w[i]);
    }
    SUBCASE("Blackman endpoints and midpoint") {
        auto w = blackman_window(481);  // odd length
        CHECK(w[0] == 0.0);
        CHECK(w[480] == 0.0);
        CHECK(w[240] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("too-short signal raises") {
        s.samples.assign(479, 1.0);
        CHECK_THROWS_AS(frame_signal(s), DataError);
    }
}

TEST_CASE("framing is shift-consistent") {
    auto s = oracles::noise_signal(0.5, 11);
    auto frames = frame_signal(s);
    AudioSignal advanced;
    advanced.sample_rate = s.sample_rate;
    advanced.samples.assign(s.samples.begin() + 3 * 160, s.samples.end());
    auto shifted = frame_signal(advanced);
    REQUIRE(frames.size() >= 4);
    for (int i = 0; i < 480; ++i)
        CHECK(frames[3].samples[i] == doctest::Approx(shifted[0].samples[i]));
}

TEST_CASE("dft: impulse, bin placement, round trip, oracle") {
    Frame f;
    f.samples.assign(480, 0.0);

    SUBCASE("unit impulse gives flat unit spectrum") {
        f.samples[0] = 1.0;
        auto spec = dft(f);
        REQUIRE(spec.values.size() == 1024);
        for (const auto& v : spec.values) {
            CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(std::abs(v.imag()) < 1e-12);
        }
    }
    SUBCASE("125 Hz cosine concentrates in bins 8 and 1016") {
        f.samples.resize(1024);
        for (int n = 0; n < 1024; ++n)
            f.samples[n] = std::cos(2.0 * std::numbers::pi * 125.0 * n / 16000.0);
        auto spec = dft(f);
        double total = 0.0;
        for (const auto& v : spec.values) total += std::norm(v);
        const double concentrated = std::norm(spec.values[8]) + std::norm(spec.values[1016]);
        CHECK(concentrated / total > 0.999);
    }
    SUBCASE("IDFT(DFT(x)) recovers x to 1e-9") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (auto& v : f.samples) v = u(rng);
        auto spec = dft(f);
        auto back = idft_real(spec);
        for (int i = 0; i < 480; ++i)
            CHECK(back[i] == doctest::Approx(f.samples[i]).epsilon(1e-9));
        for (int i = 480; i < 1024; ++i) CHECK(std::abs(back[i]) < 1e-9);
    }
    SUBCASE("matches the naive DFT oracle") {
        std::mt19937 rng(4);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        f.samples.resize(64);
        for (auto& v : f.samples) v = u(rng);
        auto spec = dft(f, 128);
        auto ref = oracles::naive_dft(f.samples, 128);
        for (int k = 0; k < 128; ++k)
            CHECK(std::abs(spec.values[k] - ref[k]) < 1e-9);
    }
    SUBCASE("frame longer than n_fft raises") {
        f.samples.assign(2048, 0.1);
        CHECK_THROWS_AS(dft(f, 1024), DataError);
    }
}

TEST_CASE("Parseval and conjugate symmetry hold on random frames") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Frame f;
        f.samples.resize(480);
        for (auto& v : f.samples) v = u(rng);
        auto spec = dft(f);

        double time_e = 0.0, freq_e = 0.0;
        for (double v : f.samples) time_e += v * v;
        for (const auto& v : spec.values) freq_e += std::norm(v);
        CHECK(time_e == doctest::Approx(freq_e / 1024.0).epsilon(1e-6));

        for (int k = 1; k < 512; ++k)
            CHECK(std::abs(spec.values[k] - std::conj(spec.values[1024 - k])) <
                  1e-9 * std::abs(spec.values[k]) + 1e-12);
    }
}

TEST_CASE("chirp transform degeneracies") {
    std::vector<double> x(100, 0.0);

    SUBCASE("rho = 1 equals the plain DFT") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (auto& v : x) v = u(rng);
        Frame f;
        f.samples = x;
        auto plain = dft(f);
        auto chirp = chirp_dft(x, 1.0);
        for (int k = 0; k < 1024; ++k)
            CHECK(std::abs(chirp.values[k] - plain.values[k]) < 1e-9);
    }
    SUBCASE("delayed impulse with rho = 2 gives magnitude 0.5 everywhere") {
        x[1] = 1.0;
        auto spec = chirp_dft(x, 2.0);
        for (const auto& v : spec.values)
            CHECK(std::abs(v) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("impulse at origin gives all ones for any rho") {
        x[0] = 1.0;
        for (double rho : {0.5, 1.0, 1.12, 3.0}) {
            auto spec = chirp_dft(x, rho);
            for (const auto& v : spec.values)
                CHECK(std::abs(v - std::complex<double>(1.0, 0.0)) < 1e-12);
        }
    }
    SUBCASE("non-positive radius raises") {
        CHECK_THROWS_AS(chirp_dft(x, 0.0), UsageError);
    }
}

TEST_CASE("estimate_f0: pure tone, noise, synthetic vowel") {
    SUBCASE("100 Hz sine is tracked within 1 Hz") {
        auto s = oracles::sine_signal(100.0, 1.0);
        auto track = estimate_f0(s);
        REQUIRE(track.f0_hz.size() > 10);
        for (size_t i = 2; i + 2 < track.f0_hz.size(); ++i)
            CHECK(track.f0_hz[i] == doctest::Approx(100.0).epsilon(0.01));
    }
    SUBCASE("white noise is essentially unvoiced") {
        auto s = oracles::noise_signal(2.0, 99);
        auto track = estimate_f0(s);
        size_t voiced = 0;
        for (double f : track.f0_hz)
            if (f > 0.0) ++voiced;
        CHECK(static_cast<double>(voiced) / track.f0_hz.size() < 0.05);
    }
    SUBCASE("synthetic vowel at 120 Hz within 2 Hz") {
        SynthConfig cfg;
        cfg.f0_hz = 120.0;
        cfg.seed = 5;
        auto [sig, truth] = synth_vowel(cfg);
        auto track = estimate_f0(sig);
        size_t checked = 0;
        for (size_t i = 3; i + 3 < track.f0_hz.size(); ++i) {
            if (track.f0_hz[i] <= 0.0) continue;
            CHECK(track.f0_hz[i] == doctest::Approx(120.0).epsilon(2.0 / 120.0));
            ++checked;
        }
        CHECK(checked > 50);
    }
}
