#pragma once

#include <string>
#include <vector>

#include "phasevox/features.h"
#include "phasevox/mlp.h"

namespace phasevox {

struct FoldResult {
    int fold = 0;
    double frame_error_pct = 0.0;
    double patient_error_pct = 0.0;
    int n_patients = 0;
    int n_frames = 0;
};

struct CvReport {
    double frame_error_pct = 0.0;
    double patient_error_pct = 0.0;
    double false_positive_pct = 0.0;  // normophonic patients called pathological
    double false_negative_pct = 0.0;
    std::vector<FoldResult> folds;
    double threshold = 0.5;
    std::vector<std::string> feature_subset;
    // pooled held-out posteriors for the ROC sweep
    std::vector<double> posteriors;
    std::vector<int> frame_labels;
};

/// Majority vote over frame posteriors; an exact tie counts as pathological.
VoiceLabel classify_patient(const std::vector<double>& posteriors,
                            double frame_threshold = 0.5);

/// Patient-disjoint, class-stratified k-fold cross validation over the
/// named feature subset. Throws DataError with fewer than k patients in
/// either class.
CvReport cross_validate(const FeatureMatrix& features,
                        const std::vector<std::string>& feature_subset,
                        int k = 10, const TrainConfig& config = {});

struct RocPoint {
    double threshold;
    double tpr;
    double fpr;
};

/// Threshold sweep over [0, 1]; includes the (0,0) and (1,1) endpoints.
std::vector<RocPoint> roc_curve(const std::vector<double>& posteriors,
                                const std::vector<int>& labels,
                                int n_points = 101);
double roc_auc(const std::vector<RocPoint>& curve);

void write_cv_report_json(const std::string& path, const CvReport& report,
                          const std::string& config_hash);
std::string format_cv_report_table(const CvReport& report);
void write_roc_csv(const std::string& path, const std::vector<RocPoint>& curve,
                   const std::string& config_hash);

}  // namespace phasevox
