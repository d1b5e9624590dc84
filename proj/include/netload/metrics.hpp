#pragma once

#include "netload/errors.hpp"

#include <Eigen/Core>

#include <cmath>
#include <cstddef>

namespace netload {

struct MetricPair {
    double mape_pct = 0.0;
    double rmse = 0.0;
};

// Actuals with magnitude at or below this floor are excluded from MAPE (and
// counted via the optional out-parameter). Relevant for PV night-time zeros.
inline constexpr double kMapeFloor = 1e-6;

// Mean absolute percentage error, in percent.
template <typename DA, typename DF>
double mape(const Eigen::MatrixBase<DA>& actual, const Eigen::MatrixBase<DF>& forecast,
            double floor = kMapeFloor, std::size_t* excluded = nullptr) {
    if (actual.size() != forecast.size() || actual.size() == 0) {
        throw LengthMismatch("mape: vectors empty or of different length");
    }
    double sum = 0.0;
    Eigen::Index contributing = 0;
    for (Eigen::Index i = 0; i < actual.size(); ++i) {
        const double y = actual(i);
        if (std::abs(y) <= floor) {
            continue;
        }
        sum += std::abs(y - forecast(i)) / std::abs(y);
        ++contributing;
    }
    if (excluded != nullptr) {
        *excluded = static_cast<std::size_t>(actual.size() - contributing);
    }
    if (contributing == 0) {
        throw AllPointsExcluded("mape: every actual is below the exclusion floor");
    }
    return 100.0 * sum / static_cast<double>(contributing);
}

// Root mean squared error, in units of the target.
template <typename DA, typename DF>
double rmse(const Eigen::MatrixBase<DA>& actual, const Eigen::MatrixBase<DF>& forecast) {
    if (actual.size() != forecast.size() || actual.size() == 0) {
        throw LengthMismatch("rmse: vectors empty or of different length");
    }
    const double mse = (actual - forecast).array().square().sum() /
                       static_cast<double>(actual.size());
    return std::sqrt(mse);
}

// Net load = demand minus renewable generation, elementwise.
template <typename DL, typename DP>
Eigen::VectorXd net_load(const Eigen::MatrixBase<DL>& load, const Eigen::MatrixBase<DP>& pv) {
    if (load.size() != pv.size()) {
        throw LengthMismatch("net_load: vectors of different length");
    }
    return load - pv;
}

} // namespace netload
