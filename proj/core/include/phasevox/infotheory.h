#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "phasevox/features.h"

namespace phasevox {

constexpr int kDefaultMiBins = 50;

/// Equal-frequency (quantile) binning; ties broken by sample order. The
/// returned codes are in [0, n_bins). Throws DataError for fewer samples
/// than bins. A constant input collapses to a single bin.
std::vector<int> discretize(const std::vector<double>& feature, int n_bins = kDefaultMiBins);

/// Empirical Shannon entropy in bits. Throws DataError on empty input.
double entropy_bits(const std::vector<int>& labels);

/// 100 * I(binned feature; labels) / H(labels), plug-in estimator.
double normalized_mi(const std::vector<double>& feature,
                     const std::vector<int>& labels, int n_bins = kDefaultMiBins);

/// Joint normalized MI of a feature pair on the product binning.
double joint_normalized_mi(const std::vector<double>& f1,
                           const std::vector<double>& f2,
                           const std::vector<int>& labels,
                           int n_bins = kDefaultMiBins);

struct MIReport {
    std::map<std::string, double> per_feature_nmi;
    std::map<std::pair<std::string, std::string>, double> pairwise_joint_nmi;
    double label_entropy_bits = 0.0;
    int n_bins = kDefaultMiBins;
    size_t n_samples = 0;
};

/// Per-feature NMI (and, optionally, all pairwise joint NMIs) of a feature
/// matrix against its labels.
MIReport mi_report(const FeatureMatrix& m, int n_bins = kDefaultMiBins,
                   bool pairs = false);

void write_mi_report_json(const std::string& path, const MIReport& report,
                          const std::string& config_hash);
std::string format_mi_report_table(const MIReport& report);

}  // namespace phasevox
