#include "netload/gbm.hpp"

#include "netload/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

namespace netload {

double RegressionTree::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    int i = 0;
    while (!nodes[static_cast<std::size_t>(i)].is_leaf()) {
        const TreeNode& node = nodes[static_cast<std::size_t>(i)];
        if (node.feature >= x.size()) {
            throw DimensionMismatch("tree references feature beyond input width");
        }
        i = x(node.feature) < node.threshold ? node.left : node.right;
    }
    return nodes[static_cast<std::size_t>(i)].value;
}

double GbmModel::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    if (n_features > 0 && x.size() != n_features) {
        throw DimensionMismatch("gbm predict: expected " + std::to_string(n_features) +
                                " features, got " + std::to_string(x.size()));
    }
    // Exact partial-sum recurrence: the k-tree prediction is the (k-1)-tree
    // prediction plus shrinkage * tree_k(x), bit for bit.
    double acc = init_constant;
    for (const RegressionTree& tree : trees) {
        acc += shrinkage * tree.predict(x);
    }
    return acc;
}

namespace {

// Split search over a node's samples, using per-feature index lists kept in
// ascending feature order. The lists are partitioned order-preserving when a
// node splits, so sorting happens once per builder, not once per node.
class TreeBuilder {
public:
    explicit TreeBuilder(const Eigen::Ref<const Eigen::MatrixXd>& features)
        : features_(features) {
        const Eigen::Index n = features_.rows();
        const Eigen::Index f = features_.cols();
        sorted_.resize(static_cast<std::size_t>(f));
        for (Eigen::Index c = 0; c < f; ++c) {
            auto& order = sorted_[static_cast<std::size_t>(c)];
            order.resize(static_cast<std::size_t>(n));
            std::iota(order.begin(), order.end(), Eigen::Index{0});
            std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
                return features_(a, c) < features_(b, c);
            });
        }
    }

    // Builds a tree on the residuals; row_pred (when given) receives each
    // training row's leaf value, matching tree.predict exactly.
    RegressionTree build(const Eigen::Ref<const Eigen::VectorXd>& residuals, int max_depth,
                         Eigen::VectorXd* row_pred) {
        residuals_ = &residuals;
        RegressionTree tree;
        tree.max_depth = max_depth;
        if (row_pred != nullptr) {
            row_pred->resize(features_.rows());
        }
        build_node(sorted_, 0, max_depth, tree, row_pred);
        return tree;
    }

private:
    using IndexLists = std::vector<std::vector<Eigen::Index>>;

    struct Split {
        bool found = false;
        Eigen::Index feature = 0;
        double threshold = 0.0;
    };

    Split best_split(const IndexLists& lists) const {
        const auto& residuals = *residuals_;
        const std::size_t n = lists[0].size();

        double total_sum = 0.0;
        double total_sq = 0.0;
        double r_min = residuals(lists[0][0]);
        double r_max = r_min;
        for (const Eigen::Index row : lists[0]) {
            const double r = residuals(row);
            total_sum += r;
            total_sq += r * r;
            r_min = std::min(r_min, r);
            r_max = std::max(r_max, r);
        }
        if (r_min == r_max) {
            return Split{}; // zero variance, nothing to gain
        }
        const double parent_sse =
            std::max(0.0, total_sq - total_sum * total_sum / static_cast<double>(n));

        Split best;
        double best_gain = 0.0; // SSE(parent) - SSE(children), strictly > 0 to split
        for (std::size_t f = 0; f < lists.size(); ++f) {
            const auto& order = lists[f];
            double left_sum = 0.0;
            double left_sq = 0.0;

            for (std::size_t i = 0; i + 1 < n; ++i) {
                const double r = residuals(order[i]);
                left_sum += r;
                left_sq += r * r;
                const double v = features_(order[i], static_cast<Eigen::Index>(f));
                const double v_next = features_(order[i + 1], static_cast<Eigen::Index>(f));
                if (v == v_next) {
                    continue;
                }
                const double n_left = static_cast<double>(i + 1);
                const double n_right = static_cast<double>(n - i - 1);
                const double right_sum = total_sum - left_sum;
                const double sse_left = std::max(0.0, left_sq - left_sum * left_sum / n_left);
                const double sse_right =
                    std::max(0.0, (total_sq - left_sq) - right_sum * right_sum / n_right);
                const double gain = parent_sse - sse_left - sse_right;
                if (gain > best_gain) {
                    best_gain = gain;
                    best.found = true;
                    best.feature = static_cast<Eigen::Index>(f);
                    best.threshold = 0.5 * (v + v_next);
                }
            }
        }
        return best;
    }

    int build_node(const IndexLists& lists, int depth, int max_depth, RegressionTree& tree,
                   Eigen::VectorXd* row_pred) {
        const auto& residuals = *residuals_;
        const std::size_t n = lists[0].size();

        Split split;
        if (depth < max_depth && n >= 2) {
            split = best_split(lists);
        }
        if (!split.found) {
            double mean = 0.0;
            for (const Eigen::Index row : lists[0]) {
                mean += residuals(row);
            }
            mean /= static_cast<double>(n);
            const int id = static_cast<int>(tree.nodes.size());
            tree.nodes.push_back(TreeNode{-1, 0.0, mean, -1, -1});
            if (row_pred != nullptr) {
                for (const Eigen::Index row : lists[0]) {
                    (*row_pred)(row) = mean;
                }
            }
            return id;
        }

        // Partition every feature's list, preserving order.
        IndexLists left_lists(lists.size());
        IndexLists right_lists(lists.size());
        for (std::size_t f = 0; f < lists.size(); ++f) {
            left_lists[f].reserve(n);
            right_lists[f].reserve(n);
            for (const Eigen::Index row : lists[f]) {
                if (features_(row, split.feature) < split.threshold) {
                    left_lists[f].push_back(row);
                } else {
                    right_lists[f].push_back(row);
                }
            }
        }

        const int id = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(TreeNode{static_cast<int>(split.feature), split.threshold, 0.0, -1, -1});
        const int left = build_node(left_lists, depth + 1, max_depth, tree, row_pred);
        const int right = build_node(right_lists, depth + 1, max_depth, tree, row_pred);
        tree.nodes[static_cast<std::size_t>(id)].left = left;
        tree.nodes[static_cast<std::size_t>(id)].right = right;
        return id;
    }

    Eigen::Ref<const Eigen::MatrixXd> features_;
    const Eigen::Ref<const Eigen::VectorXd>* residuals_ = nullptr;
    IndexLists sorted_;
};

} // namespace

RegressionTree fit_tree(const Eigen::Ref<const Eigen::MatrixXd>& features,
                        const Eigen::Ref<const Eigen::VectorXd>& residuals, int max_depth) {
    if (features.rows() == 0) {
        throw EmptyInput("fit_tree: no rows");
    }
    if (features.rows() != residuals.size()) {
        throw DimensionMismatch("fit_tree: residual count != row count");
    }
    if (max_depth < 0) {
        throw InvalidHyperparameter("fit_tree: negative max_depth");
    }
    TreeBuilder builder(features);
    return builder.build(residuals, max_depth, nullptr);
}

GbmModel fit(const SupervisedDataset& dataset, const GbmConfig& config,
             std::vector<double>* stage_rmse) {
    if (dataset.n_train <= 0) {
        throw EmptyTrainSet("gbm fit: empty training partition");
    }
    if (config.estimators < 1 || config.shrinkage <= 0.0 || config.shrinkage > 1.0 ||
        config.max_depth < 0) {
        throw InvalidHyperparameter("gbm fit: bad hyperparameters");
    }

    const Eigen::MatrixXd train_x = dataset.partition_features(Partition::Train);
    const Eigen::VectorXd train_y = dataset.partition_target(Partition::Train);
    const Eigen::Index n = train_y.size();

    GbmModel model;
    model.shrinkage = config.shrinkage;
    model.init_constant = train_y.mean();
    model.n_features = train_x.cols();
    model.trees.reserve(static_cast<std::size_t>(config.estimators));

    TreeBuilder builder(train_x);
    Eigen::VectorXd residuals = train_y.array() - model.init_constant;
    Eigen::VectorXd row_pred(n);
    if (stage_rmse != nullptr) {
        stage_rmse->clear();
        stage_rmse->reserve(static_cast<std::size_t>(config.estimators));
    }

    for (int stage = 0; stage < config.estimators; ++stage) {
        model.trees.push_back(builder.build(residuals, config.max_depth, &row_pred));
        residuals -= config.shrinkage * row_pred;
        if (stage_rmse != nullptr) {
            stage_rmse->push_back(std::sqrt(residuals.squaredNorm() / static_cast<double>(n)));
        }
    }
    return model;
}

Eigen::VectorXd predict_series(const GbmModel& model, const SupervisedDataset& dataset,
                               Partition partition) {
    const auto rows = dataset.partition_features(partition);
    Eigen::VectorXd out(rows.rows());
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        out(i) = model.predict(rows.row(i).transpose());
    }
    return out;
}

namespace {

void write_tree(std::ostream& out, const RegressionTree& tree, int node) {
    const TreeNode& n = tree.nodes[static_cast<std::size_t>(node)];
    char buf[96];
    if (n.is_leaf()) {
        std::snprintf(buf, sizeof(buf), "leaf,-1,0,%.17g\n", n.value);
        out << buf;
    } else {
        std::snprintf(buf, sizeof(buf), "split,%d,%.17g,0\n", n.feature, n.threshold);
        out << buf;
        write_tree(out, tree, n.left);
        write_tree(out, tree, n.right);
    }
}

int read_tree(std::istream& in, RegressionTree& tree) {
    std::string line;
    if (!std::getline(in, line)) {
        throw SchemaMismatch("gbm file: truncated tree");
    }
    char type[16];
    int feature = 0;
    double threshold = 0.0, value = 0.0;
    if (std::sscanf(line.c_str(), "%15[^,],%d,%lf,%lf", type, &feature, &threshold, &value) != 4) {
        throw SchemaMismatch("gbm file: bad node line: " + line);
    }
    const int id = static_cast<int>(tree.nodes.size());
    if (std::string(type) == "leaf") {
        tree.nodes.push_back(TreeNode{-1, 0.0, value, -1, -1});
        return id;
    }
    tree.nodes.push_back(TreeNode{feature, threshold, 0.0, -1, -1});
    const int left = read_tree(in, tree);
    const int right = read_tree(in, tree);
    tree.nodes[static_cast<std::size_t>(id)].left = left;
    tree.nodes[static_cast<std::size_t>(id)].right = right;
    return id;
}

} // namespace

void save_gbm(const GbmModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw FileNotFound("cannot open for writing: " + path);
    }
    out << "netload-gbm v1\n";
    char buf[96];
    std::snprintf(buf, sizeof(buf), "init_constant %.17g\n", model.init_constant);
    out << buf;
    std::snprintf(buf, sizeof(buf), "shrinkage %.17g\n", model.shrinkage);
    out << buf;
    out << "n_features " << model.n_features << '\n';
    out << "trees " << model.trees.size() << '\n';
    for (const RegressionTree& tree : model.trees) {
        out << "tree " << tree.nodes.size() << ' ' << tree.max_depth << '\n';
        write_tree(out, tree, 0);
    }
}

GbmModel load_gbm(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FileNotFound("cannot open: " + path);
    }
    std::string line;
    std::getline(in, line);
    if (line != "netload-gbm v1") {
        throw SchemaMismatch("not a netload-gbm v1 file: " + path);
    }
    GbmModel model;
    std::string key;
    std::size_t n_trees = 0;
    in >> key >> model.init_constant;
    in >> key >> model.shrinkage;
    in >> key >> model.n_features;
    in >> key >> n_trees;
    std::getline(in, line); // finish the `trees` line
    for (std::size_t t = 0; t < n_trees; ++t) {
        std::size_t n_nodes = 0;
        int max_depth = 0;
        in >> key >> n_nodes >> max_depth;
        std::getline(in, line);
        RegressionTree tree;
        tree.max_depth = max_depth;
        tree.nodes.reserve(n_nodes);
        read_tree(in, tree);
        if (tree.nodes.size() != n_nodes) {
            throw SchemaMismatch("gbm file: node count mismatch");
        }
        model.trees.push_back(std::move(tree));
    }
    return model;
}

} // namespace netload
