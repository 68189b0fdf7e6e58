#include "phasevox/features.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "phasevox/errors.h"

namespace phasevox {

const std::array<std::string, kNumFeatures> kFeatureNames = {
    "dFM", "dSMOOTH", "dMODGD", "dPPGD", "dCGD",
    "T1",  "T2",      "BAL1",   "BAL2",  "BAL3"};

std::string to_string(VoiceLabel label) {
    return label == VoiceLabel::kNormophonic ? "normophonic" : "pathological";
}

VoiceLabel voice_label_from_string(const std::string& s) {
    if (s == "normophonic" || s == "0") return VoiceLabel::kNormophonic;
    if (s == "pathological" || s == "1") return VoiceLabel::kPathological;
    throw UsageError("unknown label: " + s);
}

int feature_index(const std::string& name) {
    for (int i = 0; i < kNumFeatures; ++i)
        if (kFeatureNames[i] == name) return i;
    throw UsageError("unknown feature name: " + name);
}

void FeatureMatrix::append(const FeatureMatrix& other) {
    frames.insert(frames.end(), other.frames.begin(), other.frames.end());
    labels.insert(labels.end(), other.labels.begin(), other.labels.end());
    patient_ids.insert(patient_ids.end(), other.patient_ids.begin(),
                       other.patient_ids.end());
}

std::vector<double> spectrogram_delta(const Spectrogram& spec, bool use_l1) {
    const size_t nt = spec.n_frames();
    if (nt < 2) throw DataError("spectrogram delta needs at least 2 frames");
    constexpr double eps = 1e-12;

    auto norm = [use_l1](const std::vector<double>& v) {
        double acc = 0.0;
        for (double x : v) acc += use_l1 ? std::abs(x) : x * x;
        return use_l1 ? acc : std::sqrt(acc);
    };
    auto diff_norm = [use_l1](const std::vector<double>& a, const std::vector<double>& b) {
        double acc = 0.0;
        for (size_t k = 0; k < a.size(); ++k) {
            const double d = a[k] - b[k];
            acc += use_l1 ? std::abs(d) : d * d;
        }
        return use_l1 ? acc : std::sqrt(acc);
    };

    std::vector<double> d(nt);
    for (size_t t = 1; t < nt; ++t)
        d[t] = diff_norm(spec.data[t], spec.data[t - 1]) / (norm(spec.data[t - 1]) + eps);
    d[0] = d[1];
    return d;
}

std::vector<std::array<double, 3>> spectral_balances(const Spectrogram& fm,
                                                     const BalanceBands& bands) {
    if (fm.kind != SpectrogramKind::kFm)
        throw UsageError("spectral balances require an FM spectrogram");
    std::vector<std::array<double, 3>> out;
    out.reserve(fm.n_frames());
    for (const auto& row : fm.data) {
        std::array<double, 3> e = {0.0, 0.0, 0.0};
        // The Nyquist bin is left out so the three bands tile the 512
        // equal-width bins below it.
        for (size_t k = 0; k + 1 < row.size(); ++k) {
            const double hz = k * fm.bin_hz;
            const double p = row[k] * row[k];
            if (hz < bands.edge1_hz)
                e[0] += p;
            else if (hz < bands.edge2_hz)
                e[1] += p;
            else
                e[2] += p;
        }
        const double total = e[0] + e[1] + e[2];
        if (total <= 0.0)
            out.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
        else
            out.push_back({e[0] / total, e[1] / total, e[2] / total});
    }
    return out;
}

FeatureMatrix assemble_features(const std::vector<std::vector<double>>& deltas,
                                const std::vector<double>& t1,
                                const std::vector<double>& t2,
                                const std::vector<std::array<double, 3>>& balances,
                                VoiceLabel label, const std::string& patient_id,
                                bool allow_partial) {
    FeatureMatrix m;
    if (t1.empty() || t2.empty()) {
        if (allow_partial) return m;  // recording dropped, caller counts it
        throw DataError("no GCI coverage for " + patient_id +
                        " (empty after alignment)");
    }
    size_t nt = balances.size();
    for (const auto& d : deltas) nt = std::min(nt, d.size());
    nt = std::min({nt, t1.size(), t2.size()});
    if (nt == 0) throw DataError("empty after alignment: " + patient_id);

    for (size_t t = 0; t < nt; ++t) {
        FeatureFrame f;
        bool finite = true;
        for (int j = 0; j < 5; ++j) {
            f[j] = deltas[j][t];
            finite = finite && std::isfinite(f[j]);
        }
        f[5] = t1[t];
        f[6] = t2[t];
        f[7] = balances[t][0];
        f[8] = balances[t][1];
        f[9] = balances[t][2];
        for (int j = 5; j < 10; ++j) finite = finite && std::isfinite(f[j]);
        if (!finite) continue;  // dropped row
        m.frames.push_back(f);
        m.labels.push_back(label);
        m.patient_ids.push_back(patient_id);
    }
    if (m.frames.empty()) throw DataError("empty after alignment: " + patient_id);
    return m;
}

void write_features_csv(const std::string& path, const FeatureMatrix& m,
                        const std::string& config_hash) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write: " + path);
    out << "# config_hash=" << config_hash << "\n";
    out << "patient_id,label,frame_idx";
    for (const auto& n : kFeatureNames) out << ',' << n;
    out << '\n';
    char buf[40];
    std::string prev_pid;
    size_t frame_idx = 0;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m.patient_ids[i] != prev_pid) {
            prev_pid = m.patient_ids[i];
            frame_idx = 0;
        }
        out << m.patient_ids[i] << ',' << to_string(m.labels[i]) << ',' << frame_idx++;
        for (double v : m.frames[i]) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << ',' << buf;
        }
        out << '\n';
    }
}

FeatureMatrix read_features_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("file not found: " + path);
    FeatureMatrix m;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::string tok;
        std::getline(ss, tok, ',');
        m.patient_ids.push_back(tok);
        std::getline(ss, tok, ',');
        m.labels.push_back(voice_label_from_string(tok));
        std::getline(ss, tok, ',');  // frame_idx, recomputed on write
        FeatureFrame f;
        for (int j = 0; j < kNumFeatures; ++j) {
            std::getline(ss, tok, ',');
            f[j] = std::stod(tok);
        }
        m.frames.push_back(f);
    }
    return m;
}

std::vector<ManifestEntry> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("file not found: " + path);
    std::vector<ManifestEntry> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen && line.rfind("path,", 0) == 0) {
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        ManifestEntry e;
        std::string label;
        std::getline(ss, e.path, ',');
        std::getline(ss, label, ',');
        std::getline(ss, e.patient_id, ',');
        e.label = voice_label_from_string(label);
        rows.push_back(std::move(e));
    }
    return rows;
}

void write_manifest(const std::string& path, const std::vector<ManifestEntry>& rows,
                    const std::string& config_hash) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write: " + path);
    out << "# config_hash=" << config_hash << "\n";
    out << "path,label,patient_id\n";
    for (const auto& r : rows)
        out << r.path << ',' << to_string(r.label) << ',' << r.patient_id << '\n';
}

}  // namespace phasevox
