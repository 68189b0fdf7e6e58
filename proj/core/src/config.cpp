#include "phasevox/config.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "phasevox/errors.h"

namespace phasevox {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw UsageError("bad numeric value for " + key + ": " + v);
    }
}

int to_int(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    const int i = static_cast<int>(d);
    if (i != d) throw UsageError("expected integer for " + key + ": " + v);
    return i;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw UsageError("expected boolean for " + key + ": " + v);
}

}  // namespace

void PipelineConfig::set(const std::string& key, const std::string& value) {
    if (key == "frame_ms") frame_ms = to_double(key, value);
    else if (key == "hop_ms") hop_ms = to_double(key, value);
    else if (key == "n_fft") n_fft = to_int(key, value);
    else if (key == "modgd_alpha") modgd.alpha = to_double(key, value);
    else if (key == "modgd_gamma") modgd.gamma = to_double(key, value);
    else if (key == "modgd_lifter_len") modgd.lifter_len = to_int(key, value);
    else if (key == "cgd_rho") cgd.rho = to_double(key, value);
    else if (key == "balance_edge1_hz") balance_bands.edge1_hz = to_double(key, value);
    else if (key == "balance_edge2_hz") balance_bands.edge2_hz = to_double(key, value);
    else if (key == "mi_bins") mi_bins = to_int(key, value);
    else if (key == "learning_rate") train.learning_rate = to_double(key, value);
    else if (key == "epochs") train.epochs = to_int(key, value);
    else if (key == "batch_size") train.batch_size = to_int(key, value);
    else if (key == "seed") train.seed = static_cast<uint32_t>(to_int(key, value));
    else if (key == "l2_penalty") train.l2_penalty = to_double(key, value);
    else if (key == "class_weighting") train.class_weighting = to_bool(key, value);
    else if (key == "hidden_units") train.hidden_units = to_int(key, value);
    else if (key == "frame_threshold") frame_threshold = to_double(key, value);
    else if (key == "ccd_window_periods") ccd_window_periods = to_double(key, value);
    else if (key == "strict_rate") strict_rate = to_bool(key, value);
    else if (key == "delta_l1") delta_l1 = to_bool(key, value);
    else throw UsageError("unknown config key: " + key);
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("config file not found: " + path);
    PipelineConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineno) +
                             ": expected key = value");
        cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

std::string PipelineConfig::serialize() const {
    std::ostringstream os;
    char buf[64];
    auto put = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%s = %.17g\n", key, v);
        os << buf;
    };
    put("frame_ms", frame_ms);
    put("hop_ms", hop_ms);
    os << "n_fft = " << n_fft << "\n";
    put("modgd_alpha", modgd.alpha);
    put("modgd_gamma", modgd.gamma);
    os << "modgd_lifter_len = " << modgd.lifter_len << "\n";
    put("cgd_rho", cgd.rho);
    put("balance_edge1_hz", balance_bands.edge1_hz);
    put("balance_edge2_hz", balance_bands.edge2_hz);
    os << "mi_bins = " << mi_bins << "\n";
    put("learning_rate", train.learning_rate);
    os << "epochs = " << train.epochs << "\n";
    os << "batch_size = " << train.batch_size << "\n";
    os << "seed = " << train.seed << "\n";
    put("l2_penalty", train.l2_penalty);
    os << "class_weighting = " << (train.class_weighting ? "true" : "false") << "\n";
    os << "hidden_units = " << train.hidden_units << "\n";
    put("frame_threshold", frame_threshold);
    put("ccd_window_periods", ccd_window_periods);
    os << "strict_rate = " << (strict_rate ? "true" : "false") << "\n";
    os << "delta_l1 = " << (delta_l1 ? "true" : "false") << "\n";
    return os.str();
}

std::string PipelineConfig::hash() const {
    // FNV-1a 64 over the canonical serialization.
    const std::string s = serialize();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace phasevox
