#pragma once

#include "netload/config.hpp"
#include "netload/dataset.hpp"

namespace netload {

// Exit codes: 0 success, 1 config error, 2 data error, 3 training error,
// 4 evaluation error.
int run_cli(int argc, const char* const* argv);

struct LoadedData {
    SupervisedDataset load_ds;
    SupervisedDataset pv_ds;
    std::size_t load_gap_count = 0;
    std::size_t solar_gap_count = 0;
};

// Ingests the configured CSVs, builds the virtual weather station and both
// supervised datasets, and applies the configured subsample limit.
LoadedData load_datasets(const RunConfig& config);

} // namespace netload
