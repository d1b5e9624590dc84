#pragma once

#include "netload/calendar.hpp"
#include "netload/time_series.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace netload {

enum class Partition { Train, Test };

// Feature matrix + target with a chronological 70/30 split: the first
// n_train rows are the training partition, the remainder the test partition.
struct SupervisedDataset {
    Eigen::MatrixXd features; // rows = samples
    Eigen::VectorXd target;
    std::vector<std::string> feature_names;
    std::vector<std::int64_t> timestamps;
    std::string target_name;
    Eigen::Index n_train = 0;

    Eigen::Index rows() const { return features.rows(); }
    Eigen::Index n_test() const { return rows() - n_train; }

    Eigen::Index feature_index(const std::string& name) const;

    Eigen::Index partition_begin(Partition p) const { return p == Partition::Train ? 0 : n_train; }
    Eigen::Index partition_rows(Partition p) const { return p == Partition::Train ? n_train : n_test(); }

    auto partition_features(Partition p) const {
        return features.middleRows(partition_begin(p), partition_rows(p));
    }
    auto partition_target(Partition p) const {
        return target.segment(partition_begin(p), partition_rows(p));
    }
};

// floor(0.70 * rows)
Eigen::Index chronological_split(Eigen::Index rows);

// Load model dataset: integer-coded features
// [temp_c, month, day_of_week, day_of_year, holiday, hour_of_day],
// target `load_kw`. Frames must share timestamps.
SupervisedDataset build_load_dataset(const TimeSeriesFrame& load, const TimeSeriesFrame& temp,
                                     const HolidayCalendar& holidays);

// PV model dataset: the weather frame's numeric columns followed by one-hot
// calendar groups month_1..12, dow_0..6, hour_0..23; target `pv_kw`. The
// weather frame must contain `temp_c`.
SupervisedDataset build_pv_dataset(const TimeSeriesFrame& pv, const TimeSeriesFrame& weather);

// First max_rows rows in chronological order, re-split 70/30. max_rows <= 0
// means no limit.
SupervisedDataset subsample(const SupervisedDataset& dataset, Eigen::Index max_rows);

} // namespace netload
