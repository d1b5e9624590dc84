#pragma once

#include "netload/dataset.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace netload {

// Per-feature min-max scaling to [0,1], fit on the training partition only.
// A constant feature (max == min) scales to 0.
struct MinMaxScaler {
    Eigen::VectorXd min;
    Eigen::VectorXd max;

    void fit(const Eigen::Ref<const Eigen::MatrixXd>& rows);
    Eigen::VectorXd transform(const Eigen::Ref<const Eigen::VectorXd>& x) const;
    Eigen::MatrixXd transform_rows(const Eigen::Ref<const Eigen::MatrixXd>& rows) const;
};

struct TrainConfig {
    double learning_rate = 0.01;
    int epochs = 100;
    int batch_size = 32;
    std::uint64_t seed = 0;
    int hidden_units = 200;
};

// One-hidden-layer regression network: sigmoid hidden layer, linear output,
// min-max scaled inputs and target.
struct MlpModel {
    Eigen::MatrixXd w_ih; // hidden_units x n_features
    Eigen::VectorXd b_h;  // hidden_units
    Eigen::VectorXd w_ho; // hidden_units
    double b_o = 0.0;
    MinMaxScaler input_scaler;
    double target_min = 0.0;
    double target_max = 1.0;

    Eigen::Index hidden_units() const { return w_ih.rows(); }
    Eigen::Index n_features() const { return w_ih.cols(); }
};

inline double sigmoid(double x) {
    return 1.0 / (1.0 + std::exp(-x));
}

// Predicted target (physical units) for one feature row.
double forward(const MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);

// Squared-error loss of a single prediction.
inline double loss(double target, double output) {
    const double e = target - output;
    return 0.5 * e * e;
}

// Mean per-sample loss over scaled data; exposed for training diagnostics.
struct TrainTrace {
    double initial_loss = 0.0;
    double final_loss = 0.0;
    std::vector<double> epoch_loss;
};

// Gradients of the mean squared-error loss over a batch of scaled rows;
// this is the exact update direction train() descends.
struct MlpGradients {
    Eigen::MatrixXd w_ih;
    Eigen::VectorXd b_h;
    Eigen::VectorXd w_ho;
    double b_o = 0.0;
};

MlpGradients loss_gradients(const MlpModel& model, const Eigen::Ref<const Eigen::MatrixXd>& x_scaled,
                            const Eigen::Ref<const Eigen::VectorXd>& y_scaled,
                            double* loss_out = nullptr);

// Mean Eq.-3-style loss of the scaled batch under the current weights.
double batch_loss(const MlpModel& model, const Eigen::Ref<const Eigen::MatrixXd>& x_scaled,
                  const Eigen::Ref<const Eigen::VectorXd>& y_scaled);

// Mini-batch gradient descent on the squared-error loss over scaled data.
// Deterministic given config.seed: weight init and batch shuffling both
// derive from it. Throws DivergenceDetected when the loss leaves the finite
// range (learning rate too large).
MlpModel train(const SupervisedDataset& dataset, const TrainConfig& config,
               TrainTrace* trace = nullptr);

// forward() applied row-wise over the chosen partition, order-preserving.
Eigen::VectorXd predict_series(const MlpModel& model, const SupervisedDataset& dataset,
                               Partition partition);

// Versioned flat-file serialization (decimal text, row-major weight arrays).
void save_mlp(const MlpModel& model, const std::string& path);
MlpModel load_mlp(const std::string& path);

} // namespace netload
