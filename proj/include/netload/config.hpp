#pragma once

#include "netload/attack.hpp"
#include "netload/gbm.hpp"
#include "netload/mlp.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace netload {

// Effective run configuration. The on-disk form is a flat key=value file;
// CLI flags override file keys, and the manifest written by every run is
// itself a loadable config.
struct RunConfig {
    std::string load_csv;
    std::vector<std::string> temp_csvs; // one or more wide station files
    std::string solar_csv;
    std::string holidays_file; // optional; empty = built-in US federal rules
    int zone = 21;

    std::vector<std::string> scenarios; // defaults to all seven
    std::vector<std::uint64_t> seeds;
    NoiseSpec noise;
    TrainConfig mlp;
    GbmConfig gbm;

    std::string out_dir = "out";
    int jobs = 1;
    long long subsample = 0; // 0 = no limit
};

RunConfig parse_config_file(const std::string& path);

// Applies one key=value assignment; throws ConfigError on unknown keys.
void apply_config_key(RunConfig& config, const std::string& key, const std::string& value);

// All keys with defaults resolved, loadable by parse_config_file.
void write_manifest(const RunConfig& config, const std::string& path);

// Human-readable problem list; empty when the config is runnable.
// check_paths also verifies that the referenced data files exist.
std::vector<std::string> validate_config(const RunConfig& config, bool check_paths);

std::vector<std::string> split_list(const std::string& text);

} // namespace netload
