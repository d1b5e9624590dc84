#pragma once

#include "netload/dataset.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace netload {

// Binary regression tree stored as a flat node array; nodes[0] is the root.
// Internal nodes route x[feature] < threshold to `left`, otherwise `right`.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    double value = 0.0; // leaf prediction
    int left = -1;
    int right = -1;

    bool is_leaf() const { return left < 0; }
};

struct RegressionTree {
    std::vector<TreeNode> nodes;
    int max_depth = 0;

    double predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

struct GbmConfig {
    int estimators = 350;
    double shrinkage = 0.1; // step size applied to every stage
    int max_depth = 3;
    std::uint64_t seed = 0;
};

// Additive ensemble over squared-error residuals: prediction is
// init_constant + shrinkage * sum(tree_i(x)).
struct GbmModel {
    double init_constant = 0.0;
    double shrinkage = 0.1;
    Eigen::Index n_features = 0; // 0 = unconstrained (hand-built models)
    std::vector<RegressionTree> trees;

    double predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

// CART-style tree greedily splitting on variance reduction of the residuals;
// leaves predict the mean residual of their region. Split candidates are the
// midpoints between consecutive sorted unique feature values; ties break to
// the lowest feature index, then the lowest threshold.
RegressionTree fit_tree(const Eigen::Ref<const Eigen::MatrixXd>& features,
                        const Eigen::Ref<const Eigen::VectorXd>& residuals, int max_depth);

// Stage-wise fit: tree_i is fit to the current residuals (the negative
// gradient of the squared-error loss), then predictions advance by
// shrinkage * tree_i. Deterministic given config.seed. Per-stage training
// RMSE is exposed through the optional trace.
GbmModel fit(const SupervisedDataset& dataset, const GbmConfig& config,
             std::vector<double>* stage_rmse = nullptr);

Eigen::VectorXd predict_series(const GbmModel& model, const SupervisedDataset& dataset,
                               Partition partition);

// Versioned flat file: init_constant, shrinkage, then a pre-order
// `node_type,feature,threshold,value` list per tree.
void save_gbm(const GbmModel& model, const std::string& path);
GbmModel load_gbm(const std::string& path);

} // namespace netload
