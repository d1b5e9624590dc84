#pragma once

#include <cstdint>
#include <string>

namespace netload {

// Deterministic generator of demo data in the ingestion formats: a wide
// multi-zone load file, a wide multi-station temperature file and a long
// solar file. The series carry the usual structure of hourly utility data
// (seasonal and diurnal cycles, weather response, weekend/holiday effects,
// cloud-driven PV output) plus autocorrelated noise, at building scale.
struct SynthSpec {
    std::uint64_t seed = 2012;

    // Load/temperature span (inclusive dates, whole days).
    int load_start_year = 2004, load_start_month = 1, load_start_day = 1;
    int load_end_year = 2008, load_end_month = 6, load_end_day = 30;

    // Solar span.
    int pv_start_year = 2012, pv_start_month = 4, pv_start_day = 1;
    int pv_end_year = 2014, pv_end_month = 4, pv_end_day = 6;

    int zones = 5;      // per-zone rows, plus the aggregate zone 21
    int stations = 11;  // temperature stations
};

struct SynthPaths {
    std::string load_csv;
    std::string temperature_csv;
    std::string solar_csv;
};

// Writes gefcom2012_load.csv, gefcom2012_temperature.csv and
// gefcom2014_solar.csv under dir (created if needed) and returns the paths.
SynthPaths write_synth_dataset(const SynthSpec& spec, const std::string& dir);

} // namespace netload
