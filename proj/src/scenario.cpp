#include "netload/scenario.hpp"

#include "netload/errors.hpp"
#include "netload/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

namespace netload {

namespace {

AttackTarget both_partitions(Stream s) {
    return AttackTarget{s, true, true};
}
AttackTarget train_only(Stream s) {
    return AttackTarget{s, true, false};
}
AttackTarget test_only(Stream s) {
    return AttackTarget{s, false, true};
}

} // namespace

ScenarioSpec ScenarioSpec::builtin(const std::string& id, const NoiseSpec& noise) {
    ScenarioSpec spec;
    spec.id = id;
    spec.noise = noise;
    if (id == "base") {
        spec.domain = Domain::CentralOrIopt;
    } else if (id == "1a") {
        spec.domain = Domain::Central;
        spec.load_attack = both_partitions(Stream::Load);
    } else if (id == "1b") {
        spec.domain = Domain::Central;
        spec.load_attack = train_only(Stream::Load);
    } else if (id == "2a") {
        spec.domain = Domain::CentralOrIopt;
        spec.nwp_attack = both_partitions(Stream::Nwp);
    } else if (id == "2b") {
        spec.domain = Domain::CentralOrIopt;
        spec.nwp_attack = test_only(Stream::Nwp);
    } else if (id == "3a") {
        spec.domain = Domain::Central;
        spec.nwp_attack = both_partitions(Stream::Nwp);
        spec.load_attack = both_partitions(Stream::Load);
    } else if (id == "3b") {
        spec.domain = Domain::Central;
        spec.nwp_attack = both_partitions(Stream::Nwp);
        spec.load_attack = train_only(Stream::Load);
    } else {
        throw ConfigError("unknown scenario id: " + id);
    }
    return spec;
}

const std::vector<std::string>& ScenarioSpec::all_ids() {
    static const std::vector<std::string> ids = {"base", "1a", "1b", "2a", "2b", "3a", "3b"};
    return ids;
}

bool ScenarioSpec::is_valid_id(const std::string& id) {
    const auto& ids = all_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

namespace {

struct HourKey {
    int month;
    int day;
    int hour;
    bool operator<(const HourKey& o) const {
        return std::tie(month, day, hour) < std::tie(o.month, o.day, o.hour);
    }
};

HourKey hour_key(std::int64_t epoch_seconds) {
    const std::int64_t days = epoch_seconds / 86400;
    const CivilDate date = civil_from_days(days);
    return HourKey{date.month, date.day, static_cast<int>((epoch_seconds % 86400) / 3600)};
}

} // namespace

ExperimentReport run_experiment(const ScenarioSpec& spec, const SupervisedDataset& load_ds,
                                const SupervisedDataset& pv_ds, const TrainConfig& mlp_cfg,
                                const GbmConfig& gbm_cfg) {
    ExperimentReport report;
    report.scenario_id = spec.id;

    // Noise streams are keyed by (stream, partition) but not by scenario id:
    // scenarios attacking a superset of the data then see the shared draws
    // plus extra ones (common random numbers), so attack containment holds
    // sample-wise, not just in distribution.
    SupervisedDataset attacked_load = load_ds;
    SupervisedDataset attacked_pv = pv_ds;

    if (spec.load_attack) {
        NoiseSpec noise = spec.noise;
        noise.seed = derive_seed(spec.noise.seed, "load");
        attacked_load =
            apply_to_dataset(attacked_load, *spec.load_attack, noise, kTargetColumn, &report.attacked_counts);
        report.attacked_columns.push_back("load:" + kTargetColumn);
    }
    if (spec.nwp_attack) {
        NoiseSpec noise = spec.noise;
        noise.seed = derive_seed(spec.noise.seed, "nwp.load");
        attacked_load =
            apply_to_dataset(attacked_load, *spec.nwp_attack, noise, "temp_c", &report.attacked_counts);
        noise.seed = derive_seed(spec.noise.seed, "nwp.pv");
        attacked_pv =
            apply_to_dataset(attacked_pv, *spec.nwp_attack, noise, "temp_c", &report.attacked_counts);
        report.attacked_columns.push_back("nwp:temp_c");
    }

    // Train on attacked data, predict on attacked test features, score
    // against the clean test actuals.
    const MlpModel mlp = train(attacked_load, mlp_cfg);
    const GbmModel gbm = fit(attacked_pv, gbm_cfg);

    const Eigen::VectorXd load_pred = predict_series(mlp, attacked_load, Partition::Test);
    const Eigen::VectorXd pv_pred = predict_series(gbm, attacked_pv, Partition::Test);
    const Eigen::VectorXd load_actual = load_ds.partition_target(Partition::Test);
    const Eigen::VectorXd pv_actual = pv_ds.partition_target(Partition::Test);

    report.load_mape_pct = mape(load_actual, load_pred, kMapeFloor, &report.mape_excluded);
    report.pv_rmse = rmse(pv_actual, pv_pred);

    // Net-load series: the PV test window is the axis; the load test window
    // spans more than a year, so each (month, day, hour) key resolves to its
    // first occurrence there.
    std::map<HourKey, Eigen::Index> load_by_key;
    const Eigen::Index load_begin = load_ds.partition_begin(Partition::Test);
    for (Eigen::Index i = 0; i < load_ds.n_test(); ++i) {
        const HourKey key = hour_key(load_ds.timestamps[static_cast<std::size_t>(load_begin + i)]);
        load_by_key.emplace(key, i); // keeps the first occurrence
    }

    const Eigen::Index pv_begin = pv_ds.partition_begin(Partition::Test);
    const Eigen::Index temp_col = pv_ds.feature_index("temp_c");
    report.net_series.reserve(static_cast<std::size_t>(pv_ds.n_test()));
    report.temp_series.reserve(static_cast<std::size_t>(pv_ds.n_test()));
    for (Eigen::Index i = 0; i < pv_ds.n_test(); ++i) {
        const std::int64_t ts = pv_ds.timestamps[static_cast<std::size_t>(pv_begin + i)];
        const auto it = load_by_key.find(hour_key(ts));
        if (it == load_by_key.end()) {
            continue; // hour-of-year absent from the load test window
        }
        const Eigen::Index j = it->second;
        NetPoint point;
        point.timestamp = ts;
        point.actual_net = load_actual(j) - pv_actual(i);
        point.forecast_net = load_pred(j) - pv_pred(i);
        report.net_series.push_back(point);
        if (temp_col >= 0) {
            report.temp_series.push_back(attacked_pv.features(pv_begin + i, temp_col));
        }
    }
    return report;
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

SuiteResult run_suite(const std::vector<std::string>& scenario_ids,
                      const SupervisedDataset& load_ds, const SupervisedDataset& pv_ds,
                      const TrainConfig& mlp_cfg, const GbmConfig& gbm_cfg,
                      const NoiseSpec& noise, const std::vector<std::uint64_t>& seeds,
                      int jobs) {
    if (seeds.empty()) {
        throw ConfigError("run_suite: no seeds");
    }
    for (const std::string& id : scenario_ids) {
        if (!ScenarioSpec::is_valid_id(id)) {
            throw ConfigError("run_suite: unknown scenario id " + id);
        }
    }

    SuiteResult result;
    result.seeds = seeds;
    result.scenario_ids = scenario_ids;
    result.reports.resize(seeds.size() * scenario_ids.size());

    // Flat work list; each experiment owns derived seeds and private copies.
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    enum class FailureKind { Config, Data, Train, Eval, Other };
    FailureKind failure_kind = FailureKind::Other;
    std::mutex failure_mutex;

    const auto worker = [&]() {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= result.reports.size() || failed.load()) {
                return;
            }
            const std::size_t seed_index = task / scenario_ids.size();
            const std::size_t scenario_index = task % scenario_ids.size();
            const std::uint64_t master = seeds[seed_index];

            TrainConfig mlp = mlp_cfg;
            mlp.seed = derive_seed(master, "mlp");
            GbmConfig gbm = gbm_cfg;
            gbm.seed = derive_seed(master, "gbm");
            NoiseSpec noise_cfg = noise;
            noise_cfg.seed = derive_seed(master, "noise");

            const std::string& id = scenario_ids[scenario_index];
            try {
                const ScenarioSpec spec = ScenarioSpec::builtin(id, noise_cfg);
                result.reports[task] = run_experiment(spec, load_ds, pv_ds, mlp, gbm);
            } catch (const std::exception& e) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failed.exchange(true)) {
                    failure = "scenario " + id + ": " + e.what();
                    if (dynamic_cast<const ConfigError*>(&e) != nullptr) {
                        failure_kind = FailureKind::Config;
                    } else if (dynamic_cast<const DataError*>(&e) != nullptr) {
                        failure_kind = FailureKind::Data;
                    } else if (dynamic_cast<const TrainError*>(&e) != nullptr) {
                        failure_kind = FailureKind::Train;
                    } else if (dynamic_cast<const EvalError*>(&e) != nullptr) {
                        failure_kind = FailureKind::Eval;
                    }
                }
                return;
            }
        }
    };

    const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(result.reports.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }
    if (failed.load()) {
        switch (failure_kind) {
        case FailureKind::Config:
            throw ConfigError(failure);
        case FailureKind::Data:
            throw DataError(failure);
        case FailureKind::Eval:
            throw EvalError(failure);
        case FailureKind::Train:
        case FailureKind::Other:
            break;
        }
        throw TrainError(failure);
    }

    for (std::size_t s = 0; s < scenario_ids.size(); ++s) {
        std::vector<double> mapes;
        std::vector<double> rmses;
        for (std::size_t k = 0; k < seeds.size(); ++k) {
            mapes.push_back(result.report(k, s).load_mape_pct);
            rmses.push_back(result.report(k, s).pv_rmse);
        }
        result.summary.push_back(SummaryRow{scenario_ids[s], median(mapes), median(rmses)});
    }
    return result;
}

double attack_surface_comparison(const ExperimentReport& report_a,
                                 const ExperimentReport& report_b, Metric metric) {
    const double e_a = metric == Metric::Mape ? report_a.load_mape_pct : report_a.pv_rmse;
    const double e_b = metric == Metric::Mape ? report_b.load_mape_pct : report_b.pv_rmse;
    if (e_b == 0.0) {
        throw ZeroDenominator("attack_surface_comparison: reference error is zero");
    }
    return 100.0 * (e_a - e_b) / e_b;
}

void write_results_csv(const SuiteResult& suite, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw FileNotFound("cannot open for writing: " + path);
    }
    out << "scenario,load_mape_pct,pv_rmse\n";
    char buf[96];
    for (const SummaryRow& row : suite.summary) {
        std::snprintf(buf, sizeof(buf), "%.6f,%.6f", row.load_mape_pct, row.pv_rmse);
        out << row.scenario << ',' << buf << '\n';
    }
}

void write_plot_csv(const ExperimentReport& base, const ExperimentReport& attacked,
                    const std::string& path) {
    if (base.net_series.size() != attacked.net_series.size()) {
        throw LengthMismatch("plot: base and attacked series differ in length");
    }
    std::ofstream out(path);
    if (!out) {
        throw FileNotFound("cannot open for writing: " + path);
    }
    out << "timestamp,actual_net,forecast_net_clean,forecast_net_attacked,temp_clean,temp_attacked\n";
    char buf[160];
    for (std::size_t i = 0; i < base.net_series.size(); ++i) {
        const NetPoint& b = base.net_series[i];
        const NetPoint& a = attacked.net_series[i];
        const double temp_clean = i < base.temp_series.size() ? base.temp_series[i] : 0.0;
        const double temp_attacked = i < attacked.temp_series.size() ? attacked.temp_series[i] : 0.0;
        std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f,%.6f,%.6f", b.actual_net, b.forecast_net,
                      a.forecast_net, temp_clean, temp_attacked);
        out << format_iso8601(b.timestamp) << ',' << buf << '\n';
    }
}

} // namespace netload
