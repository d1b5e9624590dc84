#include "netload/mlp.hpp"

#include "netload/errors.hpp"
#include "netload/rng.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace netload {

void MinMaxScaler::fit(const Eigen::Ref<const Eigen::MatrixXd>& rows) {
    min = rows.colwise().minCoeff();
    max = rows.colwise().maxCoeff();
}

Eigen::VectorXd MinMaxScaler::transform(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    Eigen::VectorXd out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double range = max(i) - min(i);
        out(i) = range > 0.0 ? (x(i) - min(i)) / range : 0.0;
    }
    return out;
}

Eigen::MatrixXd MinMaxScaler::transform_rows(const Eigen::Ref<const Eigen::MatrixXd>& rows) const {
    Eigen::MatrixXd out(rows.rows(), rows.cols());
    for (Eigen::Index c = 0; c < rows.cols(); ++c) {
        const double range = max(c) - min(c);
        if (range > 0.0) {
            out.col(c) = (rows.col(c).array() - min(c)) / range;
        } else {
            out.col(c).setZero();
        }
    }
    return out;
}

double forward(const MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (x.size() != model.n_features()) {
        throw DimensionMismatch("forward: expected " + std::to_string(model.n_features()) +
                                " features, got " + std::to_string(x.size()));
    }
    const Eigen::VectorXd xs = model.input_scaler.transform(x);
    const Eigen::VectorXd h = (1.0 / (1.0 + (-(model.w_ih * xs + model.b_h)).array().exp())).matrix();
    const double ys = model.w_ho.dot(h) + model.b_o;
    return ys * (model.target_max - model.target_min) + model.target_min;
}

namespace {

// Hidden activations for a batch of scaled rows.
Eigen::MatrixXd hidden_batch(const MlpModel& model, const Eigen::Ref<const Eigen::MatrixXd>& xs) {
    Eigen::MatrixXd z = xs * model.w_ih.transpose();
    z.rowwise() += model.b_h.transpose();
    return (1.0 / (1.0 + (-z.array()).exp())).matrix();
}

} // namespace

double batch_loss(const MlpModel& model, const Eigen::Ref<const Eigen::MatrixXd>& x_scaled,
                  const Eigen::Ref<const Eigen::VectorXd>& y_scaled) {
    const Eigen::MatrixXd h = hidden_batch(model, x_scaled);
    const Eigen::VectorXd pred = ((h * model.w_ho).array() + model.b_o).matrix();
    return 0.5 * (y_scaled - pred).squaredNorm() / static_cast<double>(y_scaled.size());
}

MlpGradients loss_gradients(const MlpModel& model, const Eigen::Ref<const Eigen::MatrixXd>& x_scaled,
                            const Eigen::Ref<const Eigen::VectorXd>& y_scaled, double* loss_out) {
    const Eigen::MatrixXd h = hidden_batch(model, x_scaled); // b x hidden
    const Eigen::VectorXd err =
        ((h * model.w_ho).array() + model.b_o - y_scaled.array()).matrix(); // d(loss)/d(pred)
    const double inv_b = 1.0 / static_cast<double>(y_scaled.size());
    if (loss_out != nullptr) {
        *loss_out = 0.5 * err.squaredNorm() * inv_b;
    }

    MlpGradients g;
    g.w_ho = h.transpose() * err * inv_b;
    g.b_o = err.sum() * inv_b;
    // backpropagate through the sigmoid: dz = (err * w_ho^T) .* h .* (1-h)
    const Eigen::MatrixXd dz =
        ((err * model.w_ho.transpose()).array() * h.array() * (1.0 - h.array())).matrix();
    g.w_ih = dz.transpose() * x_scaled * inv_b;
    g.b_h = dz.colwise().sum().transpose() * inv_b;
    return g;
}

MlpModel train(const SupervisedDataset& dataset, const TrainConfig& config, TrainTrace* trace) {
    if (dataset.n_train <= 0) {
        throw EmptyTrainSet("train: empty training partition");
    }
    if (config.learning_rate <= 0.0 || config.epochs < 1 || config.batch_size < 1 ||
        config.hidden_units < 1) {
        throw InvalidHyperparameter("train: bad TrainConfig");
    }

    const Eigen::Index n = dataset.n_train;
    const Eigen::Index n_features = dataset.features.cols();
    const Eigen::Index hidden = config.hidden_units;

    MlpModel model;
    model.input_scaler.fit(dataset.partition_features(Partition::Train));
    model.target_min = dataset.partition_target(Partition::Train).minCoeff();
    model.target_max = dataset.partition_target(Partition::Train).maxCoeff();

    // Weight init: uniform in [-0.5, 0.5], drawn in a fixed order so the
    // result is reproducible from the seed alone.
    Rng rng(derive_seed(config.seed, "mlp-init"));
    model.w_ih.resize(hidden, n_features);
    for (Eigen::Index r = 0; r < hidden; ++r) {
        for (Eigen::Index c = 0; c < n_features; ++c) {
            model.w_ih(r, c) = rng.uniform01() - 0.5;
        }
    }
    model.b_h.resize(hidden);
    for (Eigen::Index r = 0; r < hidden; ++r) {
        model.b_h(r) = rng.uniform01() - 0.5;
    }
    model.w_ho.resize(hidden);
    for (Eigen::Index r = 0; r < hidden; ++r) {
        model.w_ho(r) = rng.uniform01() - 0.5;
    }
    model.b_o = rng.uniform01() - 0.5;

    const Eigen::MatrixXd xs = model.input_scaler.transform_rows(dataset.partition_features(Partition::Train));
    const double t_range = model.target_max - model.target_min;
    const Eigen::VectorXd ys =
        t_range > 0.0
            ? ((dataset.partition_target(Partition::Train).array() - model.target_min) / t_range).matrix().eval()
            : Eigen::VectorXd::Zero(n).eval();

    if (trace != nullptr) {
        trace->initial_loss = batch_loss(model, xs, ys);
        trace->epoch_loss.reserve(static_cast<std::size_t>(config.epochs));
    }

    Rng shuffle_rng(derive_seed(config.seed, "mlp-shuffle"));
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});

    const double eta = config.learning_rate;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        double epoch_loss_sum = 0.0;
        for (Eigen::Index start = 0; start < n; start += config.batch_size) {
            const Eigen::Index b = std::min<Eigen::Index>(config.batch_size, n - start);

            Eigen::MatrixXd xb(b, n_features);
            Eigen::VectorXd yb(b);
            for (Eigen::Index i = 0; i < b; ++i) {
                xb.row(i) = xs.row(order[static_cast<std::size_t>(start + i)]);
                yb(i) = ys(order[static_cast<std::size_t>(start + i)]);
            }

            double batch_mean_loss = 0.0;
            const MlpGradients g = loss_gradients(model, xb, yb, &batch_mean_loss);
            epoch_loss_sum += batch_mean_loss * static_cast<double>(b);
            model.w_ho -= eta * g.w_ho;
            model.b_o -= eta * g.b_o;
            model.w_ih -= eta * g.w_ih;
            model.b_h -= eta * g.b_h;
        }
        const double epoch_loss = epoch_loss_sum / static_cast<double>(n);
        if (!std::isfinite(epoch_loss)) {
            throw DivergenceDetected("train: loss became non-finite at epoch " +
                                     std::to_string(epoch) + " (learning rate too large?)");
        }
        if (trace != nullptr) {
            trace->epoch_loss.push_back(epoch_loss);
        }
    }

    if (trace != nullptr) {
        trace->final_loss = batch_loss(model, xs, ys);
    }
    return model;
}

Eigen::VectorXd predict_series(const MlpModel& model, const SupervisedDataset& dataset,
                               Partition partition) {
    if (dataset.features.cols() != model.n_features()) {
        throw DimensionMismatch("predict_series: feature count mismatch");
    }
    const auto rows = dataset.partition_features(partition);
    Eigen::VectorXd out(rows.rows());
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        out(i) = forward(model, rows.row(i).transpose());
    }
    return out;
}

namespace {

void write_vector(std::ostream& out, const Eigen::Ref<const Eigen::VectorXd>& v) {
    char buf[40];
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", v(i));
        out << (i > 0 ? " " : "") << buf;
    }
    out << '\n';
}

Eigen::VectorXd read_vector(std::istream& in, Eigen::Index n, const char* what) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(in >> v(i))) {
            throw SchemaMismatch(std::string("mlp file: truncated ") + what);
        }
    }
    return v;
}

} // namespace

void save_mlp(const MlpModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw FileNotFound("cannot open for writing: " + path);
    }
    out << "netload-mlp v1\n";
    out << "hidden_units " << model.hidden_units() << '\n';
    out << "n_features " << model.n_features() << '\n';
    out << "input_min ";
    write_vector(out, model.input_scaler.min);
    out << "input_max ";
    write_vector(out, model.input_scaler.max);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "target_scale %.17g %.17g\n", model.target_min, model.target_max);
    out << buf;
    out << "w_ih\n";
    for (Eigen::Index r = 0; r < model.hidden_units(); ++r) {
        write_vector(out, model.w_ih.row(r).transpose());
    }
    out << "b_h\n";
    write_vector(out, model.b_h);
    out << "w_ho\n";
    write_vector(out, model.w_ho);
    std::snprintf(buf, sizeof(buf), "b_o %.17g\n", model.b_o);
    out << buf;
}

MlpModel load_mlp(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FileNotFound("cannot open: " + path);
    }
    std::string line;
    std::getline(in, line);
    if (line != "netload-mlp v1") {
        throw SchemaMismatch("not a netload-mlp v1 file: " + path);
    }
    std::string key;
    Eigen::Index hidden = 0, n_features = 0;
    in >> key >> hidden;
    in >> key >> n_features;
    if (hidden <= 0 || n_features <= 0) {
        throw SchemaMismatch("mlp file: bad dimensions");
    }
    MlpModel model;
    in >> key;
    model.input_scaler.min = read_vector(in, n_features, "input_min");
    in >> key;
    model.input_scaler.max = read_vector(in, n_features, "input_max");
    in >> key >> model.target_min >> model.target_max;
    in >> key; // w_ih
    model.w_ih.resize(hidden, n_features);
    for (Eigen::Index r = 0; r < hidden; ++r) {
        model.w_ih.row(r) = read_vector(in, n_features, "w_ih").transpose();
    }
    in >> key; // b_h
    model.b_h = read_vector(in, hidden, "b_h");
    in >> key; // w_ho
    model.w_ho = read_vector(in, hidden, "w_ho");
    in >> key >> model.b_o;
    if (!in) {
        throw SchemaMismatch("mlp file: truncated");
    }
    return model;
}

} // namespace netload
