#include "netload/cli.hpp"

#include "netload/errors.hpp"
#include "netload/gefcom.hpp"
#include "netload/scenario.hpp"
#include "netload/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace netload {

namespace {

HolidayCalendar holidays_for(const RunConfig& config) {
    return config.holidays_file.empty() ? HolidayCalendar::us_federal()
                                        : HolidayCalendar::from_file(config.holidays_file);
}

struct IngestedFrames {
    TimeSeriesFrame load;
    TimeSeriesFrame temp;  // virtual weather station
    TimeSeriesFrame pv;    // pv_kw only
    TimeSeriesFrame weather; // remaining solar columns
};

IngestedFrames ingest_frames(const RunConfig& config) {
    IngestedFrames frames;
    frames.load = load_gefcom_load(config.load_csv, config.zone);

    std::vector<TimeSeriesFrame> stations;
    for (const std::string& path : config.temp_csvs) {
        for (const int id : gefcom_series_ids(path)) {
            stations.push_back(load_gefcom_temperature(path, id));
        }
    }
    frames.temp = virtual_weather_station(stations);
    trim_to_overlap(frames.load, frames.temp);

    const TimeSeriesFrame solar = load_gefcom_solar(config.solar_csv);
    frames.pv.timestamps = solar.timestamps;
    frames.pv.column_names = {"pv_kw"};
    frames.pv.values = solar.column("pv_kw");
    frames.pv.gaps = solar.gaps;

    frames.weather.timestamps = solar.timestamps;
    for (const std::string& name : solar.column_names) {
        if (name != "pv_kw") {
            frames.weather.column_names.push_back(name);
        }
    }
    frames.weather.values.resize(solar.length(),
                                 static_cast<Eigen::Index>(frames.weather.column_names.size()));
    for (std::size_t c = 0; c < frames.weather.column_names.size(); ++c) {
        frames.weather.values.col(static_cast<Eigen::Index>(c)) =
            solar.column(frames.weather.column_names[c]);
    }
    return frames;
}

std::string date_range(const TimeSeriesFrame& frame) {
    return format_iso8601(frame.timestamps.front()) + " .. " +
           format_iso8601(frame.timestamps.back());
}

int cmd_ingest(const RunConfig& config) {
    const IngestedFrames frames = ingest_frames(config);
    std::filesystem::create_directories(config.out_dir);

    write_canonical_csv(frames.load, "load_kw", config.out_dir + "/load_kw.csv");
    write_gap_report(frames.load, config.out_dir + "/load_kw.gaps");
    write_canonical_csv(frames.temp, "temp_c", config.out_dir + "/temp_c.csv");
    write_canonical_csv(frames.pv, "pv_kw", config.out_dir + "/pv_kw.csv");
    write_gap_report(frames.pv, config.out_dir + "/pv_kw.gaps");
    for (const std::string& name : frames.weather.column_names) {
        write_canonical_csv(frames.weather, name, config.out_dir + "/solar_" + name + ".csv");
    }

    std::cout << "load_kw: " << frames.load.length() << " rows, " << date_range(frames.load)
              << ", " << frames.load.gaps.size() << " filled gaps\n";
    std::cout << "temp_c:  " << frames.temp.length() << " rows, " << date_range(frames.temp) << "\n";
    std::cout << "pv_kw:   " << frames.pv.length() << " rows, " << date_range(frames.pv) << ", "
              << frames.pv.gaps.size() << " filled gaps\n";
    std::cout << "wrote canonical CSVs to " << config.out_dir << "\n";
    return 0;
}

void write_report_json(const RunConfig& config, const SuiteResult& suite, const std::string& path) {
    nlohmann::json doc;
    doc["scenarios"] = suite.scenario_ids;
    nlohmann::json seeds = nlohmann::json::array();
    for (const std::uint64_t s : suite.seeds) {
        seeds.push_back(s);
    }
    doc["seeds"] = seeds;

    nlohmann::json config_echo;
    config_echo["noise_fraction"] = config.noise.fraction;
    config_echo["noise_mean"] = config.noise.mean;
    config_echo["noise_std"] = config.noise.stddev;
    config_echo["mlp_epochs"] = config.mlp.epochs;
    config_echo["mlp_hidden_units"] = config.mlp.hidden_units;
    config_echo["mlp_learning_rate"] = config.mlp.learning_rate;
    config_echo["mlp_batch_size"] = config.mlp.batch_size;
    config_echo["gbm_estimators"] = config.gbm.estimators;
    config_echo["gbm_shrinkage"] = config.gbm.shrinkage;
    config_echo["gbm_max_depth"] = config.gbm.max_depth;
    config_echo["subsample"] = config.subsample;
    doc["config"] = config_echo;

    nlohmann::json runs = nlohmann::json::array();
    for (std::size_t k = 0; k < suite.seeds.size(); ++k) {
        for (std::size_t s = 0; s < suite.scenario_ids.size(); ++s) {
            const ExperimentReport& report = suite.report(k, s);
            nlohmann::json entry;
            entry["seed"] = suite.seeds[k];
            entry["scenario"] = report.scenario_id;
            entry["load_mape_pct"] = report.load_mape_pct;
            entry["pv_rmse"] = report.pv_rmse;
            entry["mape_excluded_points"] = report.mape_excluded;
            entry["attacked_columns"] = report.attacked_columns;
            entry["attacked_counts"] = report.attacked_counts;
            runs.push_back(entry);
        }
    }
    doc["runs"] = runs;

    nlohmann::json summary = nlohmann::json::array();
    for (const SummaryRow& row : suite.summary) {
        summary.push_back({{"scenario", row.scenario},
                           {"load_mape_pct", row.load_mape_pct},
                           {"pv_rmse", row.pv_rmse}});
    }
    doc["summary"] = summary;

    std::ofstream out(path);
    if (!out) {
        throw FileNotFound("cannot open for writing: " + path);
    }
    out << doc.dump(2) << '\n';
}

int cmd_run(const RunConfig& config) {
    const std::vector<std::string> problems = validate_config(config, true);
    if (!problems.empty()) {
        for (const std::string& p : problems) {
            std::cerr << "config error: " << p << "\n";
        }
        return 1;
    }
    const std::vector<std::string> ids =
        config.scenarios.empty() ? ScenarioSpec::all_ids() : config.scenarios;

    std::filesystem::create_directories(config.out_dir);
    write_manifest(config, config.out_dir + "/manifest");

    const LoadedData data = load_datasets(config);
    std::cout << "load dataset: " << data.load_ds.rows() << " rows (" << data.load_ds.n_train
              << " train), " << data.load_ds.feature_names.size() << " features\n";
    std::cout << "pv dataset:   " << data.pv_ds.rows() << " rows (" << data.pv_ds.n_train
              << " train), " << data.pv_ds.feature_names.size() << " features\n";

    const SuiteResult suite = run_suite(ids, data.load_ds, data.pv_ds, config.mlp, config.gbm,
                                        config.noise, config.seeds, config.jobs);

    write_results_csv(suite, config.out_dir + "/results.csv");
    write_report_json(config, suite, config.out_dir + "/report.json");

    // Fig-6-style plot data needs the clean run as reference.
    const auto base_pos = std::find(ids.begin(), ids.end(), std::string("base"));
    if (base_pos != ids.end()) {
        const std::size_t base_index = static_cast<std::size_t>(base_pos - ids.begin());
        for (std::size_t s = 0; s < ids.size(); ++s) {
            if (ids[s] == "base") {
                continue;
            }
            write_plot_csv(suite.report(0, base_index), suite.report(0, s),
                           config.out_dir + "/plot_" + ids[s] + ".csv");
        }
    }

    for (const SummaryRow& row : suite.summary) {
        std::printf("%-5s load MAPE %6.2f %%   pv RMSE %6.2f\n", row.scenario.c_str(),
                    row.load_mape_pct, row.pv_rmse);
    }
    std::cout << "artifacts written to " << config.out_dir << "\n";
    return 0;
}

int cmd_validate(const RunConfig& config) {
    const std::vector<std::string> problems = validate_config(config, true);
    if (problems.empty()) {
        std::cout << "OK\n";
        return 0;
    }
    for (const std::string& p : problems) {
        std::cerr << p << "\n";
    }
    return 1;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e) != nullptr) {
        return 1;
    }
    if (dynamic_cast<const DataError*>(&e) != nullptr) {
        return 2;
    }
    if (dynamic_cast<const TrainError*>(&e) != nullptr) {
        return 3;
    }
    if (dynamic_cast<const EvalError*>(&e) != nullptr) {
        return 4;
    }
    return 1;
}

} // namespace

LoadedData load_datasets(const RunConfig& config) {
    const IngestedFrames frames = ingest_frames(config);
    const HolidayCalendar holidays = holidays_for(config);

    LoadedData data;
    data.load_gap_count = frames.load.gaps.size();
    data.solar_gap_count = frames.pv.gaps.size();
    data.load_ds = build_load_dataset(frames.load, frames.temp, holidays);
    data.pv_ds = build_pv_dataset(frames.pv, frames.weather);
    if (config.subsample > 0) {
        data.load_ds = subsample(data.load_ds, static_cast<Eigen::Index>(config.subsample));
        data.pv_ds = subsample(data.pv_ds, static_cast<Eigen::Index>(config.subsample));
    }
    return data;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Net-load forecasting benchmark: hybrid MLP load + GBM PV forecasters "
                 "under seeded Gaussian noise-injection attack scenarios"};
    app.require_subcommand(1);

    std::string config_path;
    RunConfig config;

    // Flag storage; only explicitly passed flags override config-file keys.
    std::string flag_load, flag_solar, flag_out, flag_scenarios, flag_seeds;
    std::vector<std::string> flag_temps;
    int flag_zone = 0, flag_jobs = 0;
    long long flag_subsample = -1;
    double flag_noise_mean = 0.0, flag_noise_std = 0.0, flag_noise_fraction = 0.0;
    bool flag_all = false;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key=value config file");
        cmd->add_option("--out", flag_out, "output directory");
    };

    CLI::App* ingest = app.add_subcommand("ingest", "normalize source CSVs into canonical form");
    add_common(ingest);
    ingest->add_option("--load", flag_load, "GEFCom2012-style wide load CSV");
    ingest->add_option("--temp", flag_temps, "wide temperature CSV(s)");
    ingest->add_option("--solar", flag_solar, "long solar CSV");
    ingest->add_option("--zone", flag_zone, "load zone id (default 21)");

    CLI::App* run = app.add_subcommand("run", "run attack scenarios and write reports");
    add_common(run);
    run->add_option("--scenarios", flag_scenarios, "comma-separated scenario ids");
    run->add_flag("--all", flag_all, "run all seven scenarios");
    run->add_option("--seeds", flag_seeds, "comma-separated master seeds");
    run->add_option("--noise-mean", flag_noise_mean, "noise mean override");
    run->add_option("--noise-std", flag_noise_std, "noise stddev override");
    run->add_option("--noise-fraction", flag_noise_fraction, "attacked fraction override");
    run->add_option("--jobs", flag_jobs, "parallel experiments");
    run->add_option("--subsample", flag_subsample, "limit dataset rows (0 = no limit)");

    CLI::App* validate = app.add_subcommand("validate", "check a config without running");
    add_common(validate);

    CLI::App* synth = app.add_subcommand("synth", "generate demo data in the source formats");
    std::string synth_out = "data";
    std::uint64_t synth_seed = 2012;
    synth->add_option("--out", synth_out, "output directory");
    synth->add_option("--seed", synth_seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (synth->parsed()) {
            const SynthPaths paths = write_synth_dataset(SynthSpec{synth_seed}, synth_out);
            std::cout << "wrote " << paths.load_csv << "\n      " << paths.temperature_csv
                      << "\n      " << paths.solar_csv << "\n";
            return 0;
        }

        if (!config_path.empty()) {
            config = parse_config_file(config_path);
        }
        if (!flag_load.empty()) {
            config.load_csv = flag_load;
        }
        if (!flag_temps.empty()) {
            config.temp_csvs = flag_temps;
        }
        if (!flag_solar.empty()) {
            config.solar_csv = flag_solar;
        }
        if (flag_zone > 0) {
            config.zone = flag_zone;
        }
        if (!flag_out.empty()) {
            config.out_dir = flag_out;
        }
        if (flag_all) {
            config.scenarios = ScenarioSpec::all_ids();
        } else if (!flag_scenarios.empty()) {
            config.scenarios = split_list(flag_scenarios);
        }
        if (!flag_seeds.empty()) {
            config.seeds.clear();
            for (const std::string& s : split_list(flag_seeds)) {
                config.seeds.push_back(std::stoull(s));
            }
        }
        if (run->count("--noise-mean") > 0) {
            config.noise.mean = flag_noise_mean;
        }
        if (run->count("--noise-std") > 0) {
            config.noise.stddev = flag_noise_std;
        }
        if (run->count("--noise-fraction") > 0) {
            config.noise.fraction = flag_noise_fraction;
        }
        if (flag_jobs > 0) {
            config.jobs = flag_jobs;
        }
        if (flag_subsample >= 0) {
            config.subsample = flag_subsample;
        }
        if (config.seeds.empty()) {
            if (const char* env = std::getenv("NETLOAD_BENCH_SEED")) {
                config.seeds.push_back(std::stoull(env));
            }
        }

        if (ingest->parsed()) {
            return cmd_ingest(config);
        }
        if (run->parsed()) {
            return cmd_run(config);
        }
        if (validate->parsed()) {
            return cmd_validate(config);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return 0;
}

} // namespace netload
