#include "cli.h"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "phasevox/audio.h"
#include "phasevox/cepstrum.h"
#include "phasevox/config.h"
#include "phasevox/crossval.h"
#include "phasevox/errors.h"
#include "phasevox/framing.h"
#include "phasevox/gci.h"
#include "phasevox/group_delay.h"
#include "phasevox/infotheory.h"
#include "phasevox/pipeline.h"
#include "phasevox/pitch.h"
#include "phasevox/synth.h"

namespace phasevox::cli {

namespace {

std::vector<std::string> split_subset(const std::string& s) {
    std::vector<std::string> names;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) names.push_back(tok);
    return names;
}

struct Options {
    std::string config_path;
    PipelineConfig cfg;

    // spectrogram / gci
    std::string wav_path;
    std::string kind = "fm";
    std::string out_format = "csv";
    std::string output_path;

    // features / mi / train / evaluate
    std::string manifest_path;
    std::string features_out = "features.csv";
    bool allow_partial = false;
    int jobs = 1;
    std::string features_path;
    bool mi_pairs = false;
    std::string mi_json;
    std::string subset = "dFM,dSMOOTH,dMODGD,dPPGD,dCGD,T1,T2,BAL1,BAL2,BAL3";
    std::string model_path = "model.json";
    std::string report_path = "report.json";
    std::string roc_path = "roc.csv";
    int k_folds = 10;

    // synth
    int n_normo = 0;
    int n_patho = 0;
    unsigned seed = 1;
    std::string out_dir = ".";
    double duration_s = 1.0;
};

int run_spectrogram(const Options& o) {
    auto sig = load_wav(o.wav_path, o.cfg.strict_rate);
    auto frames = frame_signal(sig, o.cfg.frame_ms, o.cfg.hop_ms);
    auto kind = spectrogram_kind_from_string(o.kind);

    Spectrogram spec;
    switch (kind) {
        case SpectrogramKind::kFm:
            spec = fm_spectrogram(frames, o.cfg.n_fft, sig.sample_rate);
            break;
        case SpectrogramKind::kSmooth: {
            auto pitch = estimate_f0(sig, o.cfg.frame_ms, o.cfg.hop_ms);
            spec = smoothed_spectrogram(frames, pitch, o.cfg.n_fft, sig.sample_rate);
            break;
        }
        case SpectrogramKind::kModGd:
            spec = modgd_spectrogram(frames, o.cfg.modgd, o.cfg.n_fft, sig.sample_rate);
            break;
        case SpectrogramKind::kPpgd:
            spec = ppgd_spectrogram(frames, o.cfg.n_fft, sig.sample_rate);
            break;
        case SpectrogramKind::kCgd:
            spec = cgd_spectrogram(frames, o.cfg.cgd, o.cfg.n_fft, sig.sample_rate);
            break;
    }

    std::string out = o.output_path;
    if (out.empty()) out = o.wav_path + "." + o.kind + "." + o.out_format;
    const std::string hash = o.cfg.hash();
    if (o.out_format == "csv") write_spectrogram_csv(out, spec, hash);
    else if (o.out_format == "pgm") write_spectrogram_pgm(out, spec, hash);
    else if (o.out_format == "png") write_spectrogram_png(out, spec, hash);
    else throw UsageError("unknown output format: " + o.out_format);
    std::cout << out << "\n";
    return 0;
}

int run_gci(const Options& o) {
    auto sig = load_wav(o.wav_path, o.cfg.strict_rate);
    auto pitch = estimate_f0(sig, o.cfg.frame_ms, o.cfg.hop_ms);
    auto gci = detect_gci(sig, pitch);
    std::string out = o.output_path.empty() ? o.wav_path + ".gci.csv" : o.output_path;
    write_gci_csv(out, gci, o.cfg.hash());
    if (gci.no_voiced_content)
        std::cerr << "warning: no voiced content in " << o.wav_path << "\n";
    std::cout << out << "\n";
    return 0;
}

int run_features(const Options& o) {
    auto m = analyze_manifest(o.manifest_path, o.cfg, o.allow_partial, o.jobs);
    write_features_csv(o.features_out, m, o.cfg.hash());
    std::cout << o.features_out << " (" << m.size() << " rows)\n";
    return 0;
}

int run_mi(const Options& o) {
    auto m = read_features_csv(o.features_path);
    auto rep = mi_report(m, o.cfg.mi_bins, o.mi_pairs);
    std::cout << format_mi_report_table(rep);
    if (!o.mi_json.empty()) write_mi_report_json(o.mi_json, rep, o.cfg.hash());
    return 0;
}

int run_train(const Options& o) {
    auto m = read_features_csv(o.features_path);
    auto names = split_subset(o.subset);
    std::vector<int> idx;
    for (const auto& n : names) idx.push_back(feature_index(n));
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    for (size_t i = 0; i < m.size(); ++i) {
        std::vector<double> row(idx.size());
        for (size_t j = 0; j < idx.size(); ++j) row[j] = m.frames[i][idx[j]];
        x.push_back(std::move(row));
        y.push_back(m.labels[i] == VoiceLabel::kPathological ? 1 : 0);
    }
    auto model = train_mlp(x, y, o.cfg.train);
    model.feature_names = names;
    model.config_hash = o.cfg.hash();
    write_model_json(o.model_path, model);
    std::cout << o.model_path << "\n";
    return 0;
}

int run_evaluate(const Options& o) {
    auto m = read_features_csv(o.features_path);
    auto names = split_subset(o.subset);
    auto rep = cross_validate(m, names, o.k_folds, o.cfg.train);
    rep.threshold = o.cfg.frame_threshold;
    const std::string hash = o.cfg.hash();
    write_cv_report_json(o.report_path, rep, hash);
    write_roc_csv(o.roc_path, roc_curve(rep.posteriors, rep.frame_labels), hash);
    std::cout << format_cv_report_table(rep);
    return 0;
}

int run_synth(const Options& o) {
    auto paths = make_corpus(o.n_normo, o.n_patho, o.seed, o.out_dir, o.cfg.hash(),
                             o.duration_s);
    std::cout << paths.manifest_path << " (" << paths.wav_paths.size() << " files)\n";
    return 0;
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"phasevox: phase-aware voice analysis toolkit"};
    app.require_subcommand(1);

    Options o;
    app.add_option("--config", o.config_path, "pipeline config file (key = value)");

    auto* sp = app.add_subcommand("spectrogram", "compute a time-frequency representation");
    sp->add_option("wav", o.wav_path, "input WAV")->required();
    sp->add_option("--kind", o.kind, "fm|smooth|modgd|ppgd|cgd");
    sp->add_option("--out", o.out_format, "csv|png|pgm");
    sp->add_option("-o,--output", o.output_path, "output path");
    sp->add_flag("--strict-rate", o.cfg.strict_rate, "reject non-16kHz input");

    auto* gc = app.add_subcommand("gci", "detect glottal closure instants");
    gc->add_option("wav", o.wav_path, "input WAV")->required();
    gc->add_option("-o,--output", o.output_path, "output CSV path");

    auto* fe = app.add_subcommand("features", "extract the 10-feature stream for a dataset");
    fe->add_option("manifest", o.manifest_path, "manifest CSV (path,label,patient_id)")
        ->required();
    fe->add_option("--out", o.features_out, "output features CSV");
    fe->add_flag("--allow-partial", o.allow_partial,
                 "drop recordings without GCI coverage instead of failing");
    fe->add_option("--jobs", o.jobs, "parallel workers");

    auto* mi = app.add_subcommand("mi", "normalized mutual information report");
    mi->add_option("features", o.features_path, "features CSV")->required();
    mi->add_flag("--pairs", o.mi_pairs, "include pairwise joint NMI");
    mi->add_option("--json", o.mi_json, "also write a JSON report");

    auto* tr = app.add_subcommand("train", "train the detector on all rows");
    tr->add_option("features", o.features_path, "features CSV")->required();
    tr->add_option("--subset", o.subset, "comma-separated feature names");
    tr->add_option("--model", o.model_path, "output model JSON");

    auto* ev = app.add_subcommand("evaluate", "k-fold patient-disjoint cross validation");
    ev->add_option("features", o.features_path, "features CSV")->required();
    ev->add_option("--subset", o.subset, "comma-separated feature names");
    ev->add_option("--k", o.k_folds, "number of folds");
    ev->add_option("--report", o.report_path, "output report JSON");
    ev->add_option("--roc", o.roc_path, "output ROC CSV");

    auto* sy = app.add_subcommand("synth", "generate a synthetic vowel corpus");
    sy->add_option("--normo", o.n_normo, "normophonic count")->required();
    sy->add_option("--patho", o.n_patho, "pathological count")->required();
    sy->add_option("--seed", o.seed, "corpus seed");
    sy->add_option("--out", o.out_dir, "output directory");
    sy->add_option("--duration", o.duration_s, "seconds per file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << e.what() << "\n" << app.help();
        return 1;
    }

    try {
        if (!o.config_path.empty()) {
            const bool strict = o.cfg.strict_rate;
            o.cfg = PipelineConfig::from_file(o.config_path);
            o.cfg.strict_rate = o.cfg.strict_rate || strict;
        }
        if (sp->parsed()) return run_spectrogram(o);
        if (gc->parsed()) return run_gci(o);
        if (fe->parsed()) return run_features(o);
        if (mi->parsed()) return run_mi(o);
        if (tr->parsed()) return run_train(o);
        if (ev->parsed()) return run_evaluate(o);
        if (sy->parsed()) return run_synth(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace phasevox::cli
