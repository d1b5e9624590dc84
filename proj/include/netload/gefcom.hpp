#pragma once

#include "netload/time_series.hpp"

#include <string>
#include <vector>

namespace netload {

// GEFCom2012-style wide files: header `zone_id,year,month,day,h1,...,h24`
// (or `station_id,...` for temperature), one row per day, values possibly
// quoted with thousands separators. Blank cells and missing rows are
// forward-filled and recorded in the frame's gap list.

// Load history for one zone, as column `load_kw`.
TimeSeriesFrame load_gefcom_load(const std::string& path, int zone);

// Temperature history for one station, as column `temp_c`.
TimeSeriesFrame load_gefcom_temperature(const std::string& path, int station);

// Distinct ids in a wide file's first column, in order of first appearance.
std::vector<int> gefcom_series_ids(const std::string& path);

// GEFCom2014-style long solar file: header `timestamp,pv_kw,<weather...>`,
// one row per hour. Returns every column.
TimeSeriesFrame load_gefcom_solar(const std::string& path);

// Unweighted mean of the station temperature series at each timestamp, as
// column `temp_c`. All stations must share identical timestamps.
TimeSeriesFrame virtual_weather_station(const std::vector<TimeSeriesFrame>& stations);

} // namespace netload
