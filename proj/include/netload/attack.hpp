#pragma once

#include "netload/dataset.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace netload {

// Additive Gaussian noise on a random subset of points. Noise is applied in
// the raw units of the attacked stream and never clamped.
struct NoiseSpec {
    double fraction = 0.10;
    double mean = 10.0;
    double stddev = 50.0;
    std::uint64_t seed = 0;
};

enum class Stream { Load, Nwp };

struct AttackTarget {
    Stream stream = Stream::Load;
    bool train = false;
    bool test = false;
};

// Name routing a dataset attack at the target vector instead of a feature.
inline const std::string kTargetColumn = "TARGET";

struct InjectResult {
    Eigen::VectorXd values;
    std::vector<Eigen::Index> indices; // attacked positions, ascending
};

// Draws exactly round(fraction * N) distinct indices via a seeded
// Fisher-Yates prefix, then adds one Normal(mean, stddev^2) deviate per
// selected index, in ascending index order. All other entries are
// bit-identical to the input. Deterministic given spec.seed.
InjectResult inject(const Eigen::Ref<const Eigen::VectorXd>& values, const NoiseSpec& spec);

// Attacked (column, partition) pairs and their index counts, keyed as
// "<column>:<train|test>".
using AttackAudit = std::map<std::string, std::size_t>;

// Returns a new dataset with inject() applied to the named column (or the
// target vector when column == kTargetColumn), independently per selected
// partition under seeds derived as derive_seed(spec.seed, "train"/"test").
// The input dataset is never modified.
SupervisedDataset apply_to_dataset(const SupervisedDataset& dataset, const AttackTarget& target,
                                   const NoiseSpec& spec, const std::string& column,
                                   AttackAudit* audit = nullptr);

// Flags indices where |value - mean| / stddev exceeds threshold_z.
// A residual z-score check, not a calibrated detector.
std::vector<Eigen::Index> detect_anomalies(double mean, double stddev,
                                           const Eigen::Ref<const Eigen::VectorXd>& series,
                                           double threshold_z);

} // namespace netload
