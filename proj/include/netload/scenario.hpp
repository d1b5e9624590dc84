#pragma once

#include "netload/attack.hpp"
#include "netload/dataset.hpp"
#include "netload/gbm.hpp"
#include "netload/metrics.hpp"
#include "netload/mlp.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace netload {

// Deployment surface a scenario is valid for: Central runs everywhere, an
// edge deployment only sees external streams, so load-measurement attacks
// cannot reach it. Labeling only; the computation is identical.
enum class Domain { Central, CentralOrIopt };

// One attack scenario: which streams are attacked in which partitions.
// The seven built-in ids are base, 1a, 1b, 2a, 2b, 3a and 3b.
struct ScenarioSpec {
    std::string id;
    Domain domain = Domain::Central;
    std::optional<AttackTarget> load_attack;
    std::optional<AttackTarget> nwp_attack;
    NoiseSpec noise;

    static ScenarioSpec builtin(const std::string& id, const NoiseSpec& noise);
    static const std::vector<std::string>& all_ids();
    static bool is_valid_id(const std::string& id);
};

struct NetPoint {
    std::int64_t timestamp = 0;
    double actual_net = 0.0;
    double forecast_net = 0.0;
};

struct ExperimentReport {
    std::string scenario_id;
    double load_mape_pct = 0.0;
    double pv_rmse = 0.0;
    std::vector<NetPoint> net_series; // over the PV test window
    std::vector<std::string> attacked_columns;
    AttackAudit attacked_counts;
    std::size_t mape_excluded = 0;
    std::vector<double> temp_series; // PV-side temp over the net axis, post-attack
};

// Trains both forecasters under the scenario's attacks and evaluates the
// test partitions against the clean actuals. The net-load series overlays
// the load forecast onto the PV test window by (month, day, hour).
ExperimentReport run_experiment(const ScenarioSpec& spec, const SupervisedDataset& load_ds,
                                const SupervisedDataset& pv_ds, const TrainConfig& mlp_cfg,
                                const GbmConfig& gbm_cfg);

struct SummaryRow {
    std::string scenario;
    double load_mape_pct = 0.0; // median across seeds
    double pv_rmse = 0.0;
};

struct SuiteResult {
    std::vector<ExperimentReport> reports; // seed-major, scenario order within
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> scenario_ids;
    std::vector<SummaryRow> summary;

    const ExperimentReport& report(std::size_t seed_index, std::size_t scenario_index) const {
        return reports[seed_index * scenario_ids.size() + scenario_index];
    }
};

// Runs every requested scenario for every master seed. Per seed, the model
// and noise seeds are derived independently, so the same scenario is
// reproducible in isolation. jobs > 1 runs experiments concurrently.
SuiteResult run_suite(const std::vector<std::string>& scenario_ids,
                      const SupervisedDataset& load_ds, const SupervisedDataset& pv_ds,
                      const TrainConfig& mlp_cfg, const GbmConfig& gbm_cfg,
                      const NoiseSpec& noise, const std::vector<std::uint64_t>& seeds,
                      int jobs = 1);

enum class Metric { Mape, Rmse };

// Relative error increase of the larger-exposure report over the
// reduced-surface report, in percent: 100 * (e_a - e_b) / e_b.
double attack_surface_comparison(const ExperimentReport& report_a,
                                 const ExperimentReport& report_b, Metric metric);

// Results CSV: header `scenario,load_mape_pct,pv_rmse`, one summary row per
// scenario.
void write_results_csv(const SuiteResult& suite, const std::string& path);

// Fig-6-style plot data over the net-load axis:
// timestamp,actual_net,forecast_net_clean,forecast_net_attacked,temp_clean,temp_attacked
void write_plot_csv(const ExperimentReport& base, const ExperimentReport& attacked,
                    const std::string& path);

} // namespace netload
