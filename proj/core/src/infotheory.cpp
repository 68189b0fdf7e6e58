#include "phasevox/infotheory.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "phasevox/errors.h"

namespace phasevox {

std::vector<int> discretize(const std::vector<double>& feature, int n_bins) {
    const size_t n = feature.size();
    if (static_cast<int>(n) < n_bins)
        throw DataError("too few samples for " + std::to_string(n_bins) + " bins");

    // Rank-based quantile assignment; stable sort breaks ties by sample
    // order, and a run of equal values shares the bin of its first rank.
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return feature[a] < feature[b]; });

    std::vector<int> codes(n);
    size_t group_start = 0;
    for (size_t rank = 0; rank < n; ++rank) {
        if (rank > 0 && feature[order[rank]] != feature[order[rank - 1]])
            group_start = rank;
        codes[order[rank]] = static_cast<int>(group_start * n_bins / n);
    }

    // Collapse empty bins so codes are contiguous.
    std::vector<int> remap(n_bins, -1);
    int next = 0;
    for (size_t rank = 0; rank < n; ++rank) {
        int& r = remap[codes[order[rank]]];
        if (r < 0) r = next++;
    }
    for (auto& c : codes) c = remap[c];
    return codes;
}

double entropy_bits(const std::vector<int>& labels) {
    if (labels.empty()) throw DataError("entropy of an empty sequence");
    std::map<int, size_t> counts;
    for (int c : labels) ++counts[c];
    const double n = static_cast<double>(labels.size());
    double h = 0.0;
    for (const auto& [c, k] : counts) {
        const double p = k / n;
        h -= p * std::log2(p);
    }
    return h;
}

namespace {

double mutual_information_bits(const std::vector<int>& x, const std::vector<int>& y) {
    std::map<std::pair<int, int>, size_t> joint;
    std::map<int, size_t> mx, my;
    for (size_t i = 0; i < x.size(); ++i) {
        ++joint[{x[i], y[i]}];
        ++mx[x[i]];
        ++my[y[i]];
    }
    const double n = static_cast<double>(x.size());
    double mi = 0.0;
    for (const auto& [xy, k] : joint) {
        const double pxy = k / n;
        const double px = mx[xy.first] / n;
        const double py = my[xy.second] / n;
        mi += pxy * std::log2(pxy / (px * py));
    }
    return mi;
}

}  // namespace

double normalized_mi(const std::vector<double>& feature,
                     const std::vector<int>& labels, int n_bins) {
    if (feature.size() != labels.size()) throw UsageError("length mismatch");
    const double h = entropy_bits(labels);
    if (h <= 0.0) throw DataError("zero label entropy");
    auto codes = discretize(feature, n_bins);
    return 100.0 * mutual_information_bits(codes, labels) / h;
}

double joint_normalized_mi(const std::vector<double>& f1,
                           const std::vector<double>& f2,
                           const std::vector<int>& labels, int n_bins) {
    if (f1.size() != labels.size() || f2.size() != labels.size())
        throw UsageError("length mismatch");
    const double h = entropy_bits(labels);
    if (h <= 0.0) throw DataError("zero label entropy");
    auto c1 = discretize(f1, n_bins);
    auto c2 = discretize(f2, n_bins);
    std::vector<int> product(c1.size());
    for (size_t i = 0; i < c1.size(); ++i) product[i] = c1[i] * n_bins + c2[i];
    return 100.0 * mutual_information_bits(product, labels) / h;
}

MIReport mi_report(const FeatureMatrix& m, int n_bins, bool pairs) {
    MIReport rep;
    rep.n_bins = n_bins;
    rep.n_samples = m.size();
    std::vector<int> labels(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        labels[i] = m.labels[i] == VoiceLabel::kPathological ? 1 : 0;
    rep.label_entropy_bits = entropy_bits(labels);

    std::vector<std::vector<double>> columns(kNumFeatures,
                                             std::vector<double>(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (int j = 0; j < kNumFeatures; ++j) columns[j][i] = m.frames[i][j];

    for (int j = 0; j < kNumFeatures; ++j)
        rep.per_feature_nmi[kFeatureNames[j]] = normalized_mi(columns[j], labels, n_bins);

    if (pairs) {
        for (int a = 0; a < kNumFeatures; ++a)
            for (int b = a + 1; b < kNumFeatures; ++b)
                rep.pairwise_joint_nmi[{kFeatureNames[a], kFeatureNames[b]}] =
                    joint_normalized_mi(columns[a], columns[b], labels, n_bins);
    }
    return rep;
}

void write_mi_report_json(const std::string& path, const MIReport& report,
                          const std::string& config_hash) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write: " + path);
    out << "{\n  \"config_hash\": \"" << config_hash << "\",\n";
    out << "  \"label_entropy_bits\": " << report.label_entropy_bits << ",\n";
    out << "  \"n_bins\": " << report.n_bins << ",\n";
    out << "  \"n_samples\": " << report.n_samples << ",\n";
    out << "  \"per_feature_nmi\": {";
    bool first = true;
    for (const auto& [name, v] : report.per_feature_nmi) {
        out << (first ? "" : ",") << "\n    \"" << name << "\": " << v;
        first = false;
    }
    out << "\n  },\n  \"pairwise_joint_nmi\": {";
    first = true;
    for (const auto& [names, v] : report.pairwise_joint_nmi) {
        out << (first ? "" : ",") << "\n    \"" << names.first << "+" << names.second
            << "\": " << v;
        first = false;
    }
    out << "\n  }\n}\n";
}

std::string format_mi_report_table(const MIReport& report) {
    std::ostringstream os;
    os << "Feature            Normalized MI (%)\n";
    os << "-----------------  -----------------\n";
    for (const auto& name : kFeatureNames) {
        auto it = report.per_feature_nmi.find(name);
        if (it == report.per_feature_nmi.end()) continue;
        os << name;
        for (size_t i = name.size(); i < 19; ++i) os << ' ';
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", it->second);
        os << buf << '\n';
    }
    if (!report.pairwise_joint_nmi.empty()) {
        os << "\nPair                        Joint NMI (%)\n";
        os << "--------------------------  -------------\n";
        for (const auto& [names, v] : report.pairwise_joint_nmi) {
            std::string pair = names.first + "+" + names.second;
            os << pair;
            for (size_t i = pair.size(); i < 28; ++i) os << ' ';
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.2f", v);
            os << buf << '\n';
        }
    }
    return os.str();
}

}  // namespace phasevox
