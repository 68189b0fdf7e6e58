#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace phasevox {

struct TrainConfig {
    double learning_rate = 0.1;
    int epochs = 200;
    int batch_size = 64;
    uint32_t seed = 42;
    double l2_penalty = 0.0;
    bool class_weighting = false;  // inverse-frequency sample weights
    int hidden_units = 16;
};

/// One-hidden-layer sigmoid MLP with z-score input normalization.
struct MlpModel {
    int n_inputs = 0;
    int n_hidden = 16;
    std::vector<double> w1;  // [n_hidden x n_inputs], row-major
    std::vector<double> b1;  // [n_hidden]
    std::vector<double> w2;  // [n_hidden]
    double b2 = 0.0;
    std::vector<double> input_mean;  // training-set statistics
    std::vector<double> input_std;
    std::vector<std::string> feature_names;
    std::string config_hash;
};

/// Mini-batch gradient descent on cross-entropy; deterministic given
/// (data, config). Throws DataError if only one class is present.
MlpModel train_mlp(const std::vector<std::vector<double>>& inputs,
                   const std::vector<int>& targets, const TrainConfig& config);

/// Posterior P(pathological | row). Throws on arity mismatch or NaN input.
double predict_frame(const MlpModel& model, const std::vector<double>& row);

/// Analytic loss gradient flattened as [w1, b1, w2, b2]; exposed for the
/// finite-difference check.
std::vector<double> loss_gradient(const MlpModel& model,
                                  const std::vector<std::vector<double>>& inputs,
                                  const std::vector<int>& targets,
                                  double l2_penalty = 0.0);
double loss_value(const MlpModel& model,
                  const std::vector<std::vector<double>>& inputs,
                  const std::vector<int>& targets, double l2_penalty = 0.0);
std::vector<double> flatten_weights(const MlpModel& model);
void unflatten_weights(MlpModel& model, const std::vector<double>& flat);

void write_model_json(const std::string& path, const MlpModel& model);
MlpModel read_model_json(const std::string& path);

}  // namespace phasevox
