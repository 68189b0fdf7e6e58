#include "phasevox/crossval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "phasevox/errors.h"

namespace phasevox {

VoiceLabel classify_patient(const std::vector<double>& posteriors,
                            double frame_threshold) {
    if (posteriors.empty()) throw DataError("no frames for patient decision");
    size_t patho = 0;
    for (double p : posteriors)
        if (p >= frame_threshold) ++patho;
    // Exact tie counts as pathological (sensitivity-favoring).
    return 2 * patho >= posteriors.size() ? VoiceLabel::kPathological
                                          : VoiceLabel::kNormophonic;
}

CvReport cross_validate(const FeatureMatrix& features,
                        const std::vector<std::string>& feature_subset,
                        int k, const TrainConfig& config) {
    CvReport rep;
    rep.feature_subset = feature_subset;

    std::vector<int> subset_idx;
    for (const auto& name : feature_subset) subset_idx.push_back(feature_index(name));
    if (subset_idx.empty()) throw UsageError("empty feature subset");

    // Patients, per class, in deterministic (sorted) order.
    std::map<std::string, VoiceLabel> patient_label;
    std::map<std::string, std::vector<size_t>> patient_rows;
    for (size_t i = 0; i < features.size(); ++i) {
        const auto& pid = features.patient_ids[i];
        auto it = patient_label.find(pid);
        if (it == patient_label.end())
            patient_label[pid] = features.labels[i];
        else if (it->second != features.labels[i])
            throw DataError("inconsistent label within patient " + pid);
        patient_rows[pid].push_back(i);
    }
    std::vector<std::string> normo, patho;
    for (const auto& [pid, lab] : patient_label)
        (lab == VoiceLabel::kNormophonic ? normo : patho).push_back(pid);
    if (static_cast<int>(normo.size()) < k || static_cast<int>(patho.size()) < k)
        throw DataError("need at least " + std::to_string(k) + " patients per class");

    // Stratified round-robin fold assignment.
    std::map<std::string, int> fold_of;
    for (size_t i = 0; i < normo.size(); ++i) fold_of[normo[i]] = static_cast<int>(i % k);
    for (size_t i = 0; i < patho.size(); ++i) fold_of[patho[i]] = static_cast<int>(i % k);

    auto row_of = [&](size_t i) {
        std::vector<double> r(subset_idx.size());
        for (size_t j = 0; j < subset_idx.size(); ++j)
            r[j] = features.frames[i][subset_idx[j]];
        return r;
    };

    long frames_total = 0, frames_wrong = 0;
    long patients_total = 0, patients_wrong = 0;
    long normo_total = 0, normo_fp = 0, patho_total = 0, patho_fn = 0;

    for (int fold = 0; fold < k; ++fold) {
        std::vector<std::vector<double>> train_x;
        std::vector<int> train_y;
        for (size_t i = 0; i < features.size(); ++i) {
            if (fold_of[features.patient_ids[i]] == fold) continue;
            train_x.push_back(row_of(i));
            train_y.push_back(features.labels[i] == VoiceLabel::kPathological ? 1 : 0);
        }
        auto model = train_mlp(train_x, train_y, config);

        FoldResult fr;
        fr.fold = fold;
        long fold_frames = 0, fold_frames_wrong = 0;
        long fold_patients = 0, fold_patients_wrong = 0;
        for (const auto& [pid, rows] : patient_rows) {
            if (fold_of[pid] != fold) continue;
            const int truth = patient_label[pid] == VoiceLabel::kPathological ? 1 : 0;
            std::vector<double> posts;
            posts.reserve(rows.size());
            for (size_t i : rows) {
                const double p = predict_frame(model, row_of(i));
                posts.push_back(p);
                rep.posteriors.push_back(p);
                rep.frame_labels.push_back(truth);
                ++fold_frames;
                if ((p >= rep.threshold ? 1 : 0) != truth) ++fold_frames_wrong;
            }
            const int decided =
                classify_patient(posts, rep.threshold) == VoiceLabel::kPathological ? 1 : 0;
            ++fold_patients;
            if (decided != truth) ++fold_patients_wrong;
            if (truth == 0) {
                ++normo_total;
                if (decided == 1) ++normo_fp;
            } else {
                ++patho_total;
                if (decided == 0) ++patho_fn;
            }
        }
        fr.n_frames = static_cast<int>(fold_frames);
        fr.n_patients = static_cast<int>(fold_patients);
        fr.frame_error_pct = fold_frames ? 100.0 * fold_frames_wrong / fold_frames : 0.0;
        fr.patient_error_pct =
            fold_patients ? 100.0 * fold_patients_wrong / fold_patients : 0.0;
        rep.folds.push_back(fr);
        frames_total += fold_frames;
        frames_wrong += fold_frames_wrong;
        patients_total += fold_patients;
        patients_wrong += fold_patients_wrong;
    }

    rep.frame_error_pct = frames_total ? 100.0 * frames_wrong / frames_total : 0.0;
    rep.patient_error_pct =
        patients_total ? 100.0 * patients_wrong / patients_total : 0.0;
    rep.false_positive_pct = normo_total ? 100.0 * normo_fp / normo_total : 0.0;
    rep.false_negative_pct = patho_total ? 100.0 * patho_fn / patho_total : 0.0;
    return rep;
}

std::vector<RocPoint> roc_curve(const std::vector<double>& posteriors,
                                const std::vector<int>& labels, int n_points) {
    if (posteriors.size() != labels.size()) throw UsageError("length mismatch");
    long pos = std::count(labels.begin(), labels.end(), 1);
    long neg = static_cast<long>(labels.size()) - pos;
    if (pos == 0 || neg == 0) throw DataError("ROC needs both classes");

    std::vector<RocPoint> curve;
    curve.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double thr = static_cast<double>(i) / (n_points - 1);
        long tp = 0, fp = 0;
        for (size_t j = 0; j < posteriors.size(); ++j) {
            if (posteriors[j] >= thr) {
                if (labels[j]) ++tp;
                else ++fp;
            }
        }
        curve.push_back({thr, static_cast<double>(tp) / pos,
                         static_cast<double>(fp) / neg});
    }
    // Sweep endpoints: threshold 0 accepts everything -> (1,1); append the
    // all-reject point so (0,0) is always present.
    curve.push_back({1.0 + 1e-9, 0.0, 0.0});
    return curve;
}

double roc_auc(const std::vector<RocPoint>& curve) {
    // Trapezoid over FPR, curve ordered from (1,1) to (0,0).
    double auc = 0.0;
    for (size_t i = 1; i < curve.size(); ++i)
        auc += 0.5 * (curve[i - 1].tpr + curve[i].tpr) *
               (curve[i - 1].fpr - curve[i].fpr);
    return auc;
}

void write_cv_report_json(const std::string& path, const CvReport& report,
                          const std::string& config_hash) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write: " + path);
    char buf[64];
    out << "{\n  \"config_hash\": \"" << config_hash << "\",\n";
    out << "  \"feature_subset\": [";
    for (size_t i = 0; i < report.feature_subset.size(); ++i)
        out << (i ? "," : "") << "\"" << report.feature_subset[i] << "\"";
    out << "],\n";
    std::snprintf(buf, sizeof buf, "%.6f", report.frame_error_pct);
    out << "  \"frame_error_pct\": " << buf << ",\n";
    std::snprintf(buf, sizeof buf, "%.6f", report.patient_error_pct);
    out << "  \"patient_error_pct\": " << buf << ",\n";
    std::snprintf(buf, sizeof buf, "%.6f", report.false_positive_pct);
    out << "  \"false_positive_pct\": " << buf << ",\n";
    std::snprintf(buf, sizeof buf, "%.6f", report.false_negative_pct);
    out << "  \"false_negative_pct\": " << buf << ",\n";
    out << "  \"threshold\": " << report.threshold << ",\n  \"folds\": [";
    for (size_t i = 0; i < report.folds.size(); ++i) {
        const auto& f = report.folds[i];
        out << (i ? "," : "") << "\n    {\"fold\": " << f.fold
            << ", \"frame_error_pct\": " << f.frame_error_pct
            << ", \"patient_error_pct\": " << f.patient_error_pct
            << ", \"n_patients\": " << f.n_patients
            << ", \"n_frames\": " << f.n_frames << "}";
    }
    out << "\n  ]\n}\n";
}

std::string format_cv_report_table(const CvReport& report) {
    std::ostringstream os;
    os << "Features used: ";
    for (size_t i = 0; i < report.feature_subset.size(); ++i)
        os << (i ? "," : "") << report.feature_subset[i];
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "\nError rate (frame level):   %.2f%%\n"
                  "Error rate (patient level): %.2f%%\n"
                  "False positives (patients): %.2f%%\n"
                  "False negatives (patients): %.2f%%\n",
                  report.frame_error_pct, report.patient_error_pct,
                  report.false_positive_pct, report.false_negative_pct);
    os << buf;
    return os.str();
}

void write_roc_csv(const std::string& path, const std::vector<RocPoint>& curve,
                   const std::string& config_hash) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write: " + path);
    out << "# config_hash=" << config_hash << "\n";
    out << "threshold,tpr,fpr\n";
    char buf[96];
    for (const auto& p : curve) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g\n", p.threshold, p.tpr, p.fpr);
        out << buf;
    }
}

}  // namespace phasevox
