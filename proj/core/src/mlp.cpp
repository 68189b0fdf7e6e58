#include "phasevox/mlp.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "phasevox/errors.h"

namespace phasevox {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct Normalized {
    std::vector<std::vector<double>> rows;
};

std::vector<double> normalize_row(const MlpModel& m, const std::vector<double>& row) {
    std::vector<double> z(row.size());
    for (size_t j = 0; j < row.size(); ++j)
        z[j] = (row[j] - m.input_mean[j]) / m.input_std[j];
    return z;
}

// Forward pass on a normalized row; hidden activations returned via h.
double forward(const MlpModel& m, const std::vector<double>& z, std::vector<double>& h) {
    h.resize(m.n_hidden);
    double out = m.b2;
    for (int i = 0; i < m.n_hidden; ++i) {
        double acc = m.b1[i];
        const double* w = &m.w1[static_cast<size_t>(i) * m.n_inputs];
        for (int j = 0; j < m.n_inputs; ++j) acc += w[j] * z[j];
        h[i] = sigmoid(acc);
        out += m.w2[i] * h[i];
    }
    return sigmoid(out);
}

// Accumulates cross-entropy gradient of one sample into grad (flat layout
// [w1, b1, w2, b2]), weighted by sample_w.
void accumulate_gradient(const MlpModel& m, const std::vector<double>& z, int target,
                         double sample_w, std::vector<double>& grad) {
    std::vector<double> h;
    const double y = forward(m, z, h);
    const double delta_out = (y - target) * sample_w;  // dL/d(pre-sigmoid output)

    const size_t w2_off = static_cast<size_t>(m.n_hidden) * m.n_inputs + m.n_hidden;
    for (int i = 0; i < m.n_hidden; ++i) {
        grad[w2_off + i] += delta_out * h[i];
        const double delta_h = delta_out * m.w2[i] * h[i] * (1.0 - h[i]);
        double* gw1 = &grad[static_cast<size_t>(i) * m.n_inputs];
        for (int j = 0; j < m.n_inputs; ++j) gw1[j] += delta_h * z[j];
        grad[static_cast<size_t>(m.n_hidden) * m.n_inputs + i] += delta_h;
    }
    grad[w2_off + m.n_hidden] += delta_out;  // b2
}

size_t n_params(const MlpModel& m) {
    return static_cast<size_t>(m.n_hidden) * m.n_inputs + m.n_hidden + m.n_hidden + 1;
}

}  // namespace

std::vector<double> flatten_weights(const MlpModel& m) {
    std::vector<double> flat;
    flat.reserve(n_params(m));
    flat.insert(flat.end(), m.w1.begin(), m.w1.end());
    flat.insert(flat.end(), m.b1.begin(), m.b1.end());
    flat.insert(flat.end(), m.w2.begin(), m.w2.end());
    flat.push_back(m.b2);
    return flat;
}

void unflatten_weights(MlpModel& m, const std::vector<double>& flat) {
    size_t off = 0;
    std::copy_n(flat.begin(), m.w1.size(), m.w1.begin());
    off += m.w1.size();
    std::copy_n(flat.begin() + off, m.b1.size(), m.b1.begin());
    off += m.b1.size();
    std::copy_n(flat.begin() + off, m.w2.size(), m.w2.begin());
    off += m.w2.size();
    m.b2 = flat[off];
}

double loss_value(const MlpModel& m, const std::vector<std::vector<double>>& inputs,
                  const std::vector<int>& targets, double l2_penalty) {
    double loss = 0.0;
    std::vector<double> h;
    for (size_t i = 0; i < inputs.size(); ++i) {
        auto z = normalize_row(m, inputs[i]);
        const double y = std::clamp(forward(m, z, h), 1e-12, 1.0 - 1e-12);
        loss -= targets[i] ? std::log(y) : std::log(1.0 - y);
    }
    loss /= inputs.size();
    if (l2_penalty > 0.0) {
        double reg = 0.0;
        for (double w : m.w1) reg += w * w;
        for (double w : m.w2) reg += w * w;
        loss += 0.5 * l2_penalty * reg;
    }
    return loss;
}

std::vector<double> loss_gradient(const MlpModel& m,
                                  const std::vector<std::vector<double>>& inputs,
                                  const std::vector<int>& targets, double l2_penalty) {
    std::vector<double> grad(n_params(m), 0.0);
    for (size_t i = 0; i < inputs.size(); ++i)
        accumulate_gradient(m, normalize_row(m, inputs[i]), targets[i],
                            1.0 / inputs.size(), grad);
    if (l2_penalty > 0.0) {
        for (size_t j = 0; j < m.w1.size(); ++j) grad[j] += l2_penalty * m.w1[j];
        const size_t w2_off = m.w1.size() + m.b1.size();
        for (size_t j = 0; j < m.w2.size(); ++j)
            grad[w2_off + j] += l2_penalty * m.w2[j];
    }
    return grad;
}

MlpModel train_mlp(const std::vector<std::vector<double>>& inputs,
                   const std::vector<int>& targets, const TrainConfig& config) {
    if (inputs.empty() || inputs.size() != targets.size())
        throw UsageError("empty or mismatched training data");
    const bool has0 = std::find(targets.begin(), targets.end(), 0) != targets.end();
    const bool has1 = std::find(targets.begin(), targets.end(), 1) != targets.end();
    if (!has0 || !has1) throw DataError("training data contains a single class");

    MlpModel m;
    m.n_inputs = static_cast<int>(inputs[0].size());
    m.n_hidden = config.hidden_units;
    m.w1.resize(static_cast<size_t>(m.n_hidden) * m.n_inputs);
    m.b1.resize(m.n_hidden);
    m.w2.resize(m.n_hidden);

    // z-score statistics from the training data only.
    m.input_mean.assign(m.n_inputs, 0.0);
    m.input_std.assign(m.n_inputs, 0.0);
    for (const auto& row : inputs)
        for (int j = 0; j < m.n_inputs; ++j) m.input_mean[j] += row[j];
    for (int j = 0; j < m.n_inputs; ++j) m.input_mean[j] /= inputs.size();
    for (const auto& row : inputs)
        for (int j = 0; j < m.n_inputs; ++j) {
            const double d = row[j] - m.input_mean[j];
            m.input_std[j] += d * d;
        }
    for (int j = 0; j < m.n_inputs; ++j) {
        m.input_std[j] = std::sqrt(m.input_std[j] / inputs.size());
        if (m.input_std[j] < 1e-12) m.input_std[j] = 1.0;
    }

    std::mt19937 rng(config.seed);
    std::uniform_real_distribution<double> init(-0.5, 0.5);
    for (auto& w : m.w1) w = init(rng);
    for (auto& b : m.b1) b = init(rng);
    for (auto& w : m.w2) w = init(rng);
    m.b2 = init(rng);

    std::vector<std::vector<double>> z(inputs.size());
    for (size_t i = 0; i < inputs.size(); ++i) z[i] = normalize_row(m, inputs[i]);

    // Inverse-frequency sample weights (mean 1) when class weighting is on.
    std::vector<double> sample_w(inputs.size(), 1.0);
    if (config.class_weighting) {
        const double n1 = static_cast<double>(std::count(targets.begin(), targets.end(), 1));
        const double n0 = static_cast<double>(targets.size()) - n1;
        for (size_t i = 0; i < targets.size(); ++i)
            sample_w[i] = targets[i] ? targets.size() / (2.0 * n1)
                                     : targets.size() / (2.0 * n0);
    }

    std::vector<size_t> order(inputs.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> grad(n_params(m));
    std::vector<double> flat = flatten_weights(m);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (size_t start = 0; start < order.size();
             start += static_cast<size_t>(config.batch_size)) {
            const size_t end =
                std::min(order.size(), start + static_cast<size_t>(config.batch_size));
            std::fill(grad.begin(), grad.end(), 0.0);
            for (size_t i = start; i < end; ++i)
                accumulate_gradient(m, z[order[i]], targets[order[i]],
                                    sample_w[order[i]] / (end - start), grad);
            if (config.l2_penalty > 0.0) {
                for (size_t j = 0; j < m.w1.size(); ++j)
                    grad[j] += config.l2_penalty * m.w1[j];
                const size_t w2_off = m.w1.size() + m.b1.size();
                for (size_t j = 0; j < m.w2.size(); ++j)
                    grad[w2_off + j] += config.l2_penalty * m.w2[j];
            }
            flat = flatten_weights(m);
            for (size_t j = 0; j < flat.size(); ++j)
                flat[j] -= config.learning_rate * grad[j];
            unflatten_weights(m, flat);
        }
    }
    return m;
}

double predict_frame(const MlpModel& model, const std::vector<double>& row) {
    if (static_cast<int>(row.size()) != model.n_inputs)
        throw UsageError("feature arity mismatch: got " + std::to_string(row.size()) +
                         ", model expects " + std::to_string(model.n_inputs));
    for (double v : row)
        if (!std::isfinite(v)) throw UsageError("non-finite feature value");
    std::vector<double> h;
    return forward(model, normalize_row(model, row), h);
}

void write_model_json(const std::string& path, const MlpModel& model) {
    nlohmann::json j;
    j["n_inputs"] = model.n_inputs;
    j["n_hidden"] = model.n_hidden;
    j["w1"] = model.w1;
    j["b1"] = model.b1;
    j["w2"] = model.w2;
    j["b2"] = model.b2;
    j["input_mean"] = model.input_mean;
    j["input_std"] = model.input_std;
    j["feature_names"] = model.feature_names;
    j["config_hash"] = model.config_hash;
    std::ofstream out(path);
    if (!out) throw DataError("cannot write: " + path);
    out << j.dump(2) << "\n";
}

MlpModel read_model_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("file not found: " + path);
    nlohmann::json j;
    in >> j;
    MlpModel m;
    m.n_inputs = j["n_inputs"];
    m.n_hidden = j["n_hidden"];
    m.w1 = j["w1"].get<std::vector<double>>();
    m.b1 = j["b1"].get<std::vector<double>>();
    m.w2 = j["w2"].get<std::vector<double>>();
    m.b2 = j["b2"];
    m.input_mean = j["input_mean"].get<std::vector<double>>();
    m.input_std = j["input_std"].get<std::vector<double>>();
    m.feature_names = j["feature_names"].get<std::vector<std::string>>();
    m.config_hash = j["config_hash"];
    return m;
}

}  // namespace phasevox
