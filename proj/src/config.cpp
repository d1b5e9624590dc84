#include "netload/config.hpp"

#include "netload/errors.hpp"
#include "netload/scenario.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace netload {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) {
        const auto begin = item.find_first_not_of(" \t");
        if (begin == std::string::npos) {
            continue;
        }
        out.push_back(item.substr(begin, item.find_last_not_of(" \t") - begin + 1));
    }
    return out;
}

namespace {

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
    try {
        return std::stoull(value);
    } catch (const std::exception&) {
        throw ConfigError("bad integer for " + key + ": " + value);
    }
}

double parse_double(const std::string& value, const std::string& key) {
    try {
        return std::stod(value);
    } catch (const std::exception&) {
        throw ConfigError("bad number for " + key + ": " + value);
    }
}

} // namespace

void apply_config_key(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "load_csv") {
        config.load_csv = value;
    } else if (key == "temp_csv") {
        config.temp_csvs = split_list(value);
    } else if (key == "solar_csv") {
        config.solar_csv = value;
    } else if (key == "holidays_file") {
        config.holidays_file = value;
    } else if (key == "zone") {
        config.zone = static_cast<int>(parse_u64(value, key));
    } else if (key == "scenarios") {
        config.scenarios = value == "all" ? ScenarioSpec::all_ids() : split_list(value);
    } else if (key == "seeds") {
        config.seeds.clear();
        for (const std::string& s : split_list(value)) {
            config.seeds.push_back(parse_u64(s, key));
        }
    } else if (key == "noise_fraction") {
        config.noise.fraction = parse_double(value, key);
    } else if (key == "noise_mean") {
        config.noise.mean = parse_double(value, key);
    } else if (key == "noise_std") {
        config.noise.stddev = parse_double(value, key);
    } else if (key == "noise_seed") {
        config.noise.seed = parse_u64(value, key);
    } else if (key == "mlp_learning_rate") {
        config.mlp.learning_rate = parse_double(value, key);
    } else if (key == "mlp_epochs") {
        config.mlp.epochs = static_cast<int>(parse_u64(value, key));
    } else if (key == "mlp_batch_size") {
        config.mlp.batch_size = static_cast<int>(parse_u64(value, key));
    } else if (key == "mlp_hidden_units") {
        config.mlp.hidden_units = static_cast<int>(parse_u64(value, key));
    } else if (key == "gbm_estimators") {
        config.gbm.estimators = static_cast<int>(parse_u64(value, key));
    } else if (key == "gbm_shrinkage") {
        config.gbm.shrinkage = parse_double(value, key);
    } else if (key == "gbm_max_depth") {
        config.gbm.max_depth = static_cast<int>(parse_u64(value, key));
    } else if (key == "out_dir") {
        config.out_dir = value;
    } else if (key == "jobs") {
        config.jobs = static_cast<int>(parse_u64(value, key));
    } else if (key == "subsample") {
        config.subsample = static_cast<long long>(parse_u64(value, key));
    } else {
        throw ConfigError("unknown config key: " + key);
    }
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config file not found: " + path);
    }
    RunConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos || line[begin] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) {
                return std::string{};
            }
            return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
        };
        apply_config_key(config, strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
    }
    return config;
}

void write_manifest(const RunConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw FileNotFound("cannot open for writing: " + path);
    }
    const auto join = [](const std::vector<std::string>& items) {
        std::string joined;
        for (const std::string& item : items) {
            joined += joined.empty() ? item : "," + item;
        }
        return joined;
    };
    std::vector<std::string> seed_strings;
    for (const std::uint64_t s : config.seeds) {
        seed_strings.push_back(std::to_string(s));
    }

    char buf[64];
    out << "load_csv=" << config.load_csv << '\n';
    out << "temp_csv=" << join(config.temp_csvs) << '\n';
    out << "solar_csv=" << config.solar_csv << '\n';
    out << "holidays_file=" << config.holidays_file << '\n';
    out << "zone=" << config.zone << '\n';
    out << "scenarios=" << join(config.scenarios.empty() ? ScenarioSpec::all_ids() : config.scenarios)
        << '\n';
    out << "seeds=" << join(seed_strings) << '\n';
    std::snprintf(buf, sizeof(buf), "%.17g", config.noise.fraction);
    out << "noise_fraction=" << buf << '\n';
    std::snprintf(buf, sizeof(buf), "%.17g", config.noise.mean);
    out << "noise_mean=" << buf << '\n';
    std::snprintf(buf, sizeof(buf), "%.17g", config.noise.stddev);
    out << "noise_std=" << buf << '\n';
    out << "noise_seed=" << config.noise.seed << '\n';
    std::snprintf(buf, sizeof(buf), "%.17g", config.mlp.learning_rate);
    out << "mlp_learning_rate=" << buf << '\n';
    out << "mlp_epochs=" << config.mlp.epochs << '\n';
    out << "mlp_batch_size=" << config.mlp.batch_size << '\n';
    out << "mlp_hidden_units=" << config.mlp.hidden_units << '\n';
    out << "gbm_estimators=" << config.gbm.estimators << '\n';
    std::snprintf(buf, sizeof(buf), "%.17g", config.gbm.shrinkage);
    out << "gbm_shrinkage=" << buf << '\n';
    out << "gbm_max_depth=" << config.gbm.max_depth << '\n';
    out << "out_dir=" << config.out_dir << '\n';
    out << "jobs=" << config.jobs << '\n';
    out << "subsample=" << config.subsample << '\n';
}

std::vector<std::string> validate_config(const RunConfig& config, bool check_paths) {
    std::vector<std::string> problems;
    const auto check_file = [&](const std::string& path, const std::string& key) {
        if (path.empty()) {
            problems.push_back("missing required key: " + key);
        } else if (check_paths && !std::filesystem::exists(path)) {
            problems.push_back(key + ": file does not exist: " + path);
        }
    };
    check_file(config.load_csv, "load_csv");
    if (config.temp_csvs.empty()) {
        problems.push_back("missing required key: temp_csv");
    } else if (check_paths) {
        for (const std::string& path : config.temp_csvs) {
            if (!std::filesystem::exists(path)) {
                problems.push_back("temp_csv: file does not exist: " + path);
            }
        }
    }
    check_file(config.solar_csv, "solar_csv");
    if (!config.holidays_file.empty() && check_paths &&
        !std::filesystem::exists(config.holidays_file)) {
        problems.push_back("holidays_file: file does not exist: " + config.holidays_file);
    }
    for (const std::string& id : config.scenarios) {
        if (!ScenarioSpec::is_valid_id(id)) {
            problems.push_back("unknown scenario id: " + id);
        }
    }
    if (config.seeds.empty()) {
        problems.push_back("no seeds given (seeds= key, --seeds, or NETLOAD_BENCH_SEED)");
    }
    if (config.noise.fraction < 0.0 || config.noise.fraction > 1.0) {
        problems.push_back("noise_fraction must be in [0,1]");
    }
    if (config.noise.stddev < 0.0) {
        problems.push_back("noise_std must be >= 0");
    }
    if (config.mlp.learning_rate <= 0.0 || config.mlp.epochs < 1 || config.mlp.batch_size < 1 ||
        config.mlp.hidden_units < 1) {
        problems.push_back("bad mlp_* hyperparameters");
    }
    if (config.gbm.estimators < 1 || config.gbm.shrinkage <= 0.0 || config.gbm.shrinkage > 1.0 ||
        config.gbm.max_depth < 0) {
        problems.push_back("bad gbm_* hyperparameters");
    }
    if (config.jobs < 1) {
        problems.push_back("jobs must be >= 1");
    }
    if (config.subsample < 0) {
        problems.push_back("subsample must be >= 0");
    }
    return problems;
}

} // namespace netload
