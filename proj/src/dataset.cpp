#include "netload/dataset.hpp"

#include "netload/errors.hpp"

namespace netload {

Eigen::Index SupervisedDataset::feature_index(const std::string& name) const {
    for (std::size_t i = 0; i < feature_names.size(); ++i) {
        if (feature_names[i] == name) {
            return static_cast<Eigen::Index>(i);
        }
    }
    return -1;
}

Eigen::Index chronological_split(Eigen::Index rows) {
    return rows * 7 / 10;
}

namespace {

void require_aligned(const TimeSeriesFrame& a, const TimeSeriesFrame& b) {
    if (a.timestamps != b.timestamps) {
        throw TimestampMismatch("input frames do not share timestamps");
    }
}

} // namespace

SupervisedDataset build_load_dataset(const TimeSeriesFrame& load, const TimeSeriesFrame& temp,
                                     const HolidayCalendar& holidays) {
    require_aligned(load, temp);
    const Eigen::VectorXd load_kw = load.column("load_kw");
    const Eigen::VectorXd temp_c = temp.column("temp_c");
    const Eigen::Index n = load.length();

    SupervisedDataset ds;
    ds.feature_names = {"temp_c", "month", "day_of_week", "day_of_year", "holiday", "hour_of_day"};
    ds.features.resize(n, 6);
    ds.target = load_kw;
    ds.target_name = "load_kw";
    ds.timestamps = load.timestamps;
    for (Eigen::Index i = 0; i < n; ++i) {
        const CalendarFeatures cal = calendar_features(load.timestamps[i], holidays);
        ds.features(i, 0) = temp_c(i);
        ds.features(i, 1) = cal.month;
        ds.features(i, 2) = cal.day_of_week;
        ds.features(i, 3) = cal.day_of_year;
        ds.features(i, 4) = cal.holiday ? 1.0 : 0.0;
        ds.features(i, 5) = cal.hour_of_day;
    }
    ds.n_train = chronological_split(n);
    return ds;
}

SupervisedDataset build_pv_dataset(const TimeSeriesFrame& pv, const TimeSeriesFrame& weather) {
    require_aligned(pv, weather);
    if (!weather.has_column("temp_c")) {
        throw MissingWeatherColumn("weather frame lacks temp_c");
    }
    const Eigen::VectorXd pv_kw = pv.column("pv_kw");
    const Eigen::Index n = pv.length();
    const Eigen::Index n_weather = static_cast<Eigen::Index>(weather.column_names.size());
    const Eigen::Index n_onehot = 12 + 7 + 24;

    SupervisedDataset ds;
    ds.feature_names = weather.column_names;
    for (int m = 1; m <= 12; ++m) {
        ds.feature_names.push_back("month_" + std::to_string(m));
    }
    for (int d = 0; d <= 6; ++d) {
        ds.feature_names.push_back("dow_" + std::to_string(d));
    }
    for (int h = 0; h <= 23; ++h) {
        ds.feature_names.push_back("hour_" + std::to_string(h));
    }
    ds.features = Eigen::MatrixXd::Zero(n, n_weather + n_onehot);
    ds.features.leftCols(n_weather) = weather.values;
    ds.target = pv_kw;
    ds.target_name = "pv_kw";
    ds.timestamps = pv.timestamps;

    const HolidayCalendar none = HolidayCalendar::us_federal(); // holiday unused here
    for (Eigen::Index i = 0; i < n; ++i) {
        const CalendarFeatures cal = calendar_features(pv.timestamps[i], none);
        ds.features(i, n_weather + (cal.month - 1)) = 1.0;
        ds.features(i, n_weather + 12 + cal.day_of_week) = 1.0;
        ds.features(i, n_weather + 19 + cal.hour_of_day) = 1.0;
    }
    ds.n_train = chronological_split(n);
    return ds;
}

SupervisedDataset subsample(const SupervisedDataset& dataset, Eigen::Index max_rows) {
    if (max_rows <= 0 || max_rows >= dataset.rows()) {
        return dataset;
    }
    SupervisedDataset ds;
    ds.features = dataset.features.topRows(max_rows);
    ds.target = dataset.target.head(max_rows);
    ds.feature_names = dataset.feature_names;
    ds.timestamps.assign(dataset.timestamps.begin(), dataset.timestamps.begin() + max_rows);
    ds.target_name = dataset.target_name;
    ds.n_train = chronological_split(max_rows);
    return ds;
}

} // namespace netload
