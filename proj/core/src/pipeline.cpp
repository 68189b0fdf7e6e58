#include "phasevox/pipeline.h"

#include <atomic>
#include <thread>

#include "phasevox/cepstrum.h"
#include "phasevox/errors.h"
#include "phasevox/framing.h"
#include "phasevox/gci.h"
#include "phasevox/group_delay.h"
#include "phasevox/pitch.h"
#include "phasevox/time_constants.h"

namespace phasevox {

FeatureMatrix analyze_recording(const AudioSignal& signal, VoiceLabel label,
                                const std::string& patient_id,
                                const PipelineConfig& cfg, bool allow_partial) {
    auto frames = frame_signal(signal, cfg.frame_ms, cfg.hop_ms);
    auto pitch = estimate_f0(signal, cfg.frame_ms, cfg.hop_ms);

    auto fm = fm_spectrogram(frames, cfg.n_fft, signal.sample_rate);
    auto smooth = smoothed_spectrogram(frames, pitch, cfg.n_fft, signal.sample_rate);
    auto modgd = modgd_spectrogram(frames, cfg.modgd, cfg.n_fft, signal.sample_rate);
    auto ppgd = ppgd_spectrogram(frames, cfg.n_fft, signal.sample_rate);
    auto cgd = cgd_spectrogram(frames, cfg.cgd, cfg.n_fft, signal.sample_rate);

    std::vector<std::vector<double>> deltas = {
        spectrogram_delta(fm, cfg.delta_l1),
        spectrogram_delta(smooth, cfg.delta_l1),
        spectrogram_delta(modgd, cfg.delta_l1),
        spectrogram_delta(ppgd, cfg.delta_l1),
        spectrogram_delta(cgd, cfg.delta_l1),
    };
    auto balances = spectral_balances(fm, cfg.balance_bands);

    // Mixed-phase stream: per-cycle T1/T2 at GCIs, interpolated to 100 Hz.
    std::vector<double> t1_stream, t2_stream;
    auto gci = detect_gci(signal, pitch);
    if (gci.instants.size() >= 2) {
        auto cycles = ccd_decompose(signal, gci, pitch, cfg.ccd_window_periods);
        std::vector<long> instants;
        std::vector<double> t1v, t2v;
        for (auto& cyc : cycles) {
            try {
                auto tc = extract_time_constants(cyc);
                instants.push_back(cyc.gci_sample);
                t1v.push_back(tc.t1);
                t2v.push_back(tc.t2);
            } catch (const DataError&) {
                // degenerate cycle, skipped
            }
        }
        if (!instants.empty()) {
            t1_stream = interpolate_stream(instants, t1v, frames.size(),
                                           signal.sample_rate, cfg.hop_ms);
            t2_stream = interpolate_stream(instants, t2v, frames.size(),
                                           signal.sample_rate, cfg.hop_ms);
        }
    }

    return assemble_features(deltas, t1_stream, t2_stream, balances, label,
                             patient_id, allow_partial);
}

FeatureMatrix analyze_manifest(const std::string& manifest_path,
                               const PipelineConfig& cfg, bool allow_partial,
                               int jobs) {
    auto entries = read_manifest(manifest_path);
    if (entries.empty()) throw DataError("empty manifest: " + manifest_path);

    std::vector<FeatureMatrix> results(entries.size());
    std::vector<std::string> errors(entries.size());
    std::atomic<size_t> next{0};

    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= entries.size()) return;
            try {
                auto sig = load_wav(entries[i].path, cfg.strict_rate);
                results[i] = analyze_recording(sig, entries[i].label,
                                               entries[i].patient_id, cfg,
                                               allow_partial);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };

    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    FeatureMatrix all;
    for (size_t i = 0; i < entries.size(); ++i) {
        if (!errors[i].empty())
            throw DataError(entries[i].path + ": " + errors[i]);
        all.append(results[i]);
    }
    if (all.frames.empty()) throw DataError("no features after alignment");
    return all;
}

}  // namespace phasevox
