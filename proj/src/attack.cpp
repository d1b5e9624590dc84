#include "netload/attack.hpp"

#include "netload/errors.hpp"
#include "netload/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace netload {

InjectResult inject(const Eigen::Ref<const Eigen::VectorXd>& values, const NoiseSpec& spec) {
    if (values.size() == 0) {
        throw EmptyInput("inject: empty vector");
    }
    if (spec.fraction < 0.0 || spec.fraction > 1.0 || spec.stddev < 0.0) {
        throw InvalidHyperparameter("inject: bad NoiseSpec");
    }

    const Eigen::Index n = values.size();
    const auto k = static_cast<std::size_t>(std::llround(spec.fraction * static_cast<double>(n)));

    InjectResult result;
    result.values = values;
    if (k == 0) {
        return result;
    }

    Rng rng(spec.seed);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    rng.shuffle_prefix(order, k);
    result.indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(result.indices.begin(), result.indices.end());

    for (const Eigen::Index i : result.indices) {
        result.values(i) += rng.normal(spec.mean, spec.stddev);
    }
    return result;
}

SupervisedDataset apply_to_dataset(const SupervisedDataset& dataset, const AttackTarget& target,
                                   const NoiseSpec& spec, const std::string& column,
                                   AttackAudit* audit) {
    if (!target.train && !target.test) {
        throw InvalidTarget("apply_to_dataset: no partition selected");
    }
    Eigen::Index col = -1;
    if (column != kTargetColumn) {
        col = dataset.feature_index(column);
        if (col < 0) {
            throw UnknownColumn("apply_to_dataset: no column named " + column);
        }
    }

    SupervisedDataset out = dataset;
    const auto attack_partition = [&](Partition p, const char* tag) {
        const Eigen::Index begin = dataset.partition_begin(p);
        const Eigen::Index rows = dataset.partition_rows(p);
        if (rows == 0) {
            return;
        }
        NoiseSpec derived = spec;
        derived.seed = derive_seed(spec.seed, tag);
        const Eigen::VectorXd slice = column == kTargetColumn
                                          ? Eigen::VectorXd(dataset.target.segment(begin, rows))
                                          : Eigen::VectorXd(dataset.features.col(col).segment(begin, rows));
        const InjectResult injected = inject(slice, derived);
        if (column == kTargetColumn) {
            out.target.segment(begin, rows) = injected.values;
        } else {
            out.features.col(col).segment(begin, rows) = injected.values;
        }
        if (audit != nullptr) {
            (*audit)[column + ":" + tag] = injected.indices.size();
        }
    };

    if (target.train) {
        attack_partition(Partition::Train, "train");
    }
    if (target.test) {
        attack_partition(Partition::Test, "test");
    }
    return out;
}

std::vector<Eigen::Index> detect_anomalies(double mean, double stddev,
                                           const Eigen::Ref<const Eigen::VectorXd>& series,
                                           double threshold_z) {
    if (stddev <= 0.0) {
        throw DegenerateStats("detect_anomalies: non-positive stddev");
    }
    if (threshold_z <= 0.0) {
        throw DegenerateStats("detect_anomalies: non-positive threshold");
    }
    std::vector<Eigen::Index> flagged;
    for (Eigen::Index i = 0; i < series.size(); ++i) {
        if (std::abs(series(i) - mean) / stddev > threshold_z) {
            flagged.push_back(i);
        }
    }
    return flagged;
}

} // namespace netload
