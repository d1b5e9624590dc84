#include "netload/synth.hpp"

#include "netload/calendar.hpp"
#include "netload/rng.hpp"
#include "netload/time_series.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

namespace netload {

namespace {

constexpr double kTau = 6.283185307179586;

struct Ar1 {
    double phi;
    double sigma;
    double state = 0.0;
    double step(Rng& rng) {
        state = phi * state + rng.normal(0.0, sigma);
        return state;
    }
};

double daylight_shape(int hour, int doy) {
    const double half_span = 6.0 + 2.2 * std::sin(kTau * (doy - 80) / 365.25);
    const double x = (hour + 0.5 - 12.0) / half_span;
    if (x <= -1.0 || x >= 1.0) {
        return 0.0;
    }
    return std::pow(std::cos(x * M_PI / 2.0), 1.15);
}

} // namespace

SynthPaths write_synth_dataset(const SynthSpec& spec, const std::string& dir) {
    std::filesystem::create_directories(dir);
    SynthPaths paths{dir + "/gefcom2012_load.csv", dir + "/gefcom2012_temperature.csv",
                     dir + "/gefcom2014_solar.csv"};

    const HolidayCalendar holidays = HolidayCalendar::us_federal();

    // ---- load + temperature site ------------------------------------------
    const std::int64_t load_first =
        days_from_civil(spec.load_start_year, spec.load_start_month, spec.load_start_day);
    const std::int64_t load_last =
        days_from_civil(spec.load_end_year, spec.load_end_month, spec.load_end_day);
    const std::int64_t n_load_days = load_last - load_first + 1;

    Rng temp_rng(derive_seed(spec.seed, "temp"));
    Rng load_rng(derive_seed(spec.seed, "load"));
    Rng station_rng(derive_seed(spec.seed, "stations"));
    Rng zone_rng(derive_seed(spec.seed, "zones"));

    std::vector<double> station_offset(static_cast<std::size_t>(spec.stations));
    for (double& offset : station_offset) {
        offset = station_rng.normal(0.0, 1.5);
    }
    std::vector<double> zone_share(static_cast<std::size_t>(spec.zones));
    double share_sum = 0.0;
    for (double& share : zone_share) {
        share = 0.5 + station_rng.uniform01();
        share_sum += share;
    }
    for (double& share : zone_share) {
        share /= share_sum;
    }

    Ar1 temp_noise{0.90, 3.0};
    Ar1 load_noise{0.70, 0.4};

    const std::size_t n_load_hours = static_cast<std::size_t>(n_load_days) * 24;
    std::vector<double> site_temp(n_load_hours);
    std::vector<double> site_load(n_load_hours);
    for (std::int64_t d = 0; d < n_load_days; ++d) {
        const CivilDate date = civil_from_days(load_first + d);
        const CalendarFeatures cal =
            calendar_features((load_first + d) * 86400, holidays);
        for (int h = 0; h < 24; ++h) {
            const double seasonal_t = 12.0 + 16.0 * std::sin(kTau * (cal.day_of_year - 105) / 365.25);
            const double diurnal_t = 7.0 * std::sin(kTau * (h - 9) / 24.0);
            const double temp = seasonal_t + diurnal_t + temp_noise.step(temp_rng);

            const double seasonal_l = 2.5 * std::cos(kTau * (cal.day_of_year - 20) / 365.25);
            const double diurnal_l = 1.9 * std::sin(kTau * (h - 9) / 24.0);
            const double thermal = 0.30 * std::max(temp - 24.0, 0.0) + 0.20 * std::max(2.0 - temp, 0.0);
            const bool weekend = cal.day_of_week == 0 || cal.day_of_week == 6;
            double load = 25.0 + seasonal_l + diurnal_l + thermal;
            load -= weekend ? 1.7 : 0.0;
            load -= holidays.is_holiday(date.year, date.month, date.day) ? 2.1 : 0.0;
            load += load_noise.step(load_rng);
            site_temp[static_cast<std::size_t>(d * 24 + h)] = temp;
            site_load[static_cast<std::size_t>(d * 24 + h)] = std::max(load, 1.0);
        }
    }

    // Wide load file: zones 1..spec.zones as shares, zone 21 the aggregate.
    std::ofstream load_out(paths.load_csv);
    load_out << "zone_id,year,month,day";
    for (int h = 1; h <= 24; ++h) {
        load_out << ",h" << h;
    }
    load_out << '\n';
    char buf[40];
    const auto write_row = [&](std::ofstream& out, int id, const CivilDate& date,
                               const double* hours) {
        out << id << ',' << date.year << ',' << date.month << ',' << date.day;
        for (int h = 0; h < 24; ++h) {
            std::snprintf(buf, sizeof(buf), "%.4f", hours[h]);
            out << ',' << buf;
        }
        out << '\n';
    };
    std::vector<double> row(24);
    for (std::int64_t d = 0; d < n_load_days; ++d) {
        const CivilDate date = civil_from_days(load_first + d);
        for (int z = 0; z < spec.zones; ++z) {
            for (int h = 0; h < 24; ++h) {
                const double v = site_load[static_cast<std::size_t>(d * 24 + h)];
                row[static_cast<std::size_t>(h)] =
                    v * zone_share[static_cast<std::size_t>(z)] + zone_rng.normal(0.0, 0.4);
            }
            write_row(load_out, z + 1, date, row.data());
        }
        write_row(load_out, 21, date, &site_load[static_cast<std::size_t>(d * 24)]);
    }
    load_out.close();

    // Wide temperature file, one block per station.
    std::ofstream temp_out(paths.temperature_csv);
    temp_out << "station_id,year,month,day";
    for (int h = 1; h <= 24; ++h) {
        temp_out << ",h" << h;
    }
    temp_out << '\n';
    for (int s = 0; s < spec.stations; ++s) {
        Rng noise_rng(derive_seed(spec.seed, "station-noise-" + std::to_string(s)));
        for (std::int64_t d = 0; d < n_load_days; ++d) {
            const CivilDate date = civil_from_days(load_first + d);
            for (int h = 0; h < 24; ++h) {
                row[static_cast<std::size_t>(h)] = site_temp[static_cast<std::size_t>(d * 24 + h)] +
                                                   station_offset[static_cast<std::size_t>(s)] +
                                                   noise_rng.normal(0.0, 0.6);
            }
            write_row(temp_out, s + 1, date, row.data());
        }
    }
    temp_out.close();

    // ---- solar site ---------------------------------------------------------
    // PV output follows a daylight envelope scaled by a persistent cloud
    // process; site temperature carries part of the cloud signal, which is
    // what the PV model can actually learn from its weather input.
    const std::int64_t pv_first =
        days_from_civil(spec.pv_start_year, spec.pv_start_month, spec.pv_start_day);
    const std::int64_t pv_last = days_from_civil(spec.pv_end_year, spec.pv_end_month, spec.pv_end_day);
    const std::int64_t n_pv_days = pv_last - pv_first + 1;

    Rng pv_rng(derive_seed(spec.seed, "pv"));
    Ar1 cloud_driver{0.92, 0.35};
    Ar1 pv_temp_noise{0.90, 2.2};

    const double capacity_kw = 150.0;
    std::ofstream solar_out(paths.solar_csv);
    solar_out << "timestamp,pv_kw,temp_c\n";
    for (std::int64_t d = 0; d < n_pv_days; ++d) {
        const CalendarFeatures cal = calendar_features((pv_first + d) * 86400, holidays);
        for (int h = 0; h < 24; ++h) {
            const double cloudiness = 1.0 / (1.0 + std::exp(-cloud_driver.step(pv_rng)));
            const double clearness = 1.0 - 0.72 * cloudiness;
            const double envelope =
                daylight_shape(h, cal.day_of_year) * (0.82 + 0.18 * std::sin(kTau * (cal.day_of_year - 80) / 365.25));
            double pv = capacity_kw * envelope * clearness;
            if (pv > 0.0) {
                pv = std::max(0.0, pv + pv_rng.normal(0.0, 1.0));
            }

            const double seasonal_t = 14.0 + 14.0 * std::sin(kTau * (cal.day_of_year - 105) / 365.25);
            const double diurnal_t = 7.0 * std::sin(kTau * (h - 9) / 24.0);
            const double temp =
                seasonal_t + diurnal_t - 8.0 * (cloudiness - 0.5) + pv_temp_noise.step(pv_rng);

            const std::int64_t ts = ((pv_first + d) * 24 + h) * 3600;
            char line[96];
            std::snprintf(line, sizeof(line), "%s,%.4f,%.4f", format_iso8601(ts).c_str(), pv, temp);
            solar_out << line << '\n';
        }
    }
    return paths;
}

} // namespace netload
