#include "netload/gefcom.hpp"

#include "netload/calendar.hpp"
#include "netload/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace netload {

namespace {

// Splits a CSV line honoring double quotes; strips quotes and the thousands
// separators GEFCom2012 uses inside quoted numbers.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (const char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            cells.push_back(cell);
            cell.clear();
        } else if (!(quoted && c == ',')) {
            cell += c;
        }
    }
    // A quoted cell's separators were already skipped above; unquoted cells
    // keep their text as-is.
    cells.push_back(cell);
    if (!cells.empty() && !cells.back().empty() && cells.back().back() == '\r') {
        cells.back().pop_back();
    }
    return cells;
}

std::string strip(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return {};
    }
    return s.substr(begin, s.find_last_not_of(" \t\r\n") - begin + 1);
}

struct WideSchema {
    int id_col = -1;
    int year_col = -1;
    int month_col = -1;
    int day_col = -1;
    int h1_col = -1; // h1..h24 assumed contiguous
};

WideSchema parse_wide_header(const std::string& header, const std::string& path) {
    const std::vector<std::string> names = split_csv_line(header);
    WideSchema schema;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const std::string name = strip(names[i]);
        if (name == "zone_id" || name == "station_id") {
            schema.id_col = static_cast<int>(i);
        } else if (name == "year") {
            schema.year_col = static_cast<int>(i);
        } else if (name == "month") {
            schema.month_col = static_cast<int>(i);
        } else if (name == "day") {
            schema.day_col = static_cast<int>(i);
        } else if (name == "h1") {
            schema.h1_col = static_cast<int>(i);
        }
    }
    if (schema.id_col < 0 || schema.year_col < 0 || schema.month_col < 0 || schema.day_col < 0) {
        throw SchemaMismatch("missing zone_id/station_id/year/month/day column in " + path);
    }
    if (schema.h1_col < 0 || static_cast<std::size_t>(schema.h1_col) + 24 > names.size()) {
        throw SchemaMismatch("missing h1..h24 columns in " + path);
    }
    return schema;
}

TimeSeriesFrame load_wide_series(const std::string& path, int wanted_id, const std::string& column_name) {
    std::ifstream in(path);
    if (!in) {
        throw FileNotFound("cannot open: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw SchemaMismatch("empty file: " + path);
    }
    const WideSchema schema = parse_wide_header(line, path);

    std::vector<std::int64_t> timestamps;
    std::vector<double> values;
    bool id_seen = false;
    while (std::getline(in, line)) {
        if (strip(line).empty()) {
            continue;
        }
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() <= static_cast<std::size_t>(schema.h1_col)) {
            throw SchemaMismatch("short row in " + path + ": " + line);
        }
        if (std::stoi(strip(cells[schema.id_col])) != wanted_id) {
            continue;
        }
        id_seen = true;
        const int year = std::stoi(strip(cells[schema.year_col]));
        const int month = std::stoi(strip(cells[schema.month_col]));
        const int day = std::stoi(strip(cells[schema.day_col]));
        for (int h = 0; h < 24; ++h) {
            const std::size_t col = static_cast<std::size_t>(schema.h1_col) + h;
            const std::string cell = col < cells.size() ? strip(cells[col]) : std::string{};
            if (cell.empty()) {
                continue; // absent hour; assemble_hourly forward-fills interior gaps
            }
            timestamps.push_back(civil_to_epoch_seconds(year, month, day, h));
            values.push_back(std::stod(cell));
        }
    }
    if (!id_seen) {
        throw SchemaMismatch("id " + std::to_string(wanted_id) + " not present in " + path);
    }
    if (timestamps.empty()) {
        throw EmptySeries("no parseable rows for id " + std::to_string(wanted_id) + " in " + path);
    }
    return assemble_hourly(timestamps, values, column_name);
}

} // namespace

TimeSeriesFrame load_gefcom_load(const std::string& path, int zone) {
    return load_wide_series(path, zone, "load_kw");
}

TimeSeriesFrame load_gefcom_temperature(const std::string& path, int station) {
    return load_wide_series(path, station, "temp_c");
}

std::vector<int> gefcom_series_ids(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FileNotFound("cannot open: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw SchemaMismatch("empty file: " + path);
    }
    const WideSchema schema = parse_wide_header(line, path);
    std::vector<int> ids;
    while (std::getline(in, line)) {
        if (strip(line).empty()) {
            continue;
        }
        const std::vector<std::string> cells = split_csv_line(line);
        const int id = std::stoi(strip(cells[schema.id_col]));
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
            ids.push_back(id);
        }
    }
    return ids;
}

TimeSeriesFrame load_gefcom_solar(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FileNotFound("cannot open: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw SchemaMismatch("empty file: " + path);
    }
    const std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 2 || strip(header[0]) != "timestamp") {
        throw SchemaMismatch("expected `timestamp,pv_kw,...` header in " + path);
    }
    std::vector<std::string> columns;
    for (std::size_t i = 1; i < header.size(); ++i) {
        columns.push_back(strip(header[i]));
    }

    std::vector<std::int64_t> timestamps;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (strip(line).empty()) {
            continue;
        }
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw SchemaMismatch("row width mismatch in " + path + ": " + line);
        }
        timestamps.push_back(parse_iso8601(strip(cells[0])));
        std::vector<double> row(columns.size());
        for (std::size_t i = 0; i < columns.size(); ++i) {
            row[i] = std::stod(strip(cells[i + 1]));
        }
        rows.push_back(std::move(row));
    }
    if (timestamps.empty()) {
        throw EmptySeries("no rows in " + path);
    }

    // Assemble per column so interior gaps forward-fill consistently.
    TimeSeriesFrame frame;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        std::vector<double> col(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            col[r] = rows[r][c];
        }
        TimeSeriesFrame one = assemble_hourly(timestamps, col, columns[c]);
        if (c == 0) {
            frame.timestamps = one.timestamps;
            frame.gaps = one.gaps;
            frame.values.resize(one.length(), static_cast<Eigen::Index>(columns.size()));
        }
        frame.values.col(static_cast<Eigen::Index>(c)) = one.values.col(0);
    }
    frame.column_names = columns;
    frame.validate();
    return frame;
}

TimeSeriesFrame virtual_weather_station(const std::vector<TimeSeriesFrame>& stations) {
    if (stations.empty()) {
        throw EmptyInput("no station series given");
    }
    const TimeSeriesFrame& first = stations.front();
    for (const TimeSeriesFrame& station : stations) {
        if (station.timestamps != first.timestamps) {
            throw TimestampMismatch("station series timestamps differ");
        }
    }
    TimeSeriesFrame out;
    out.timestamps = first.timestamps;
    out.column_names = {"temp_c"};
    out.values = Eigen::MatrixXd::Zero(first.length(), 1);
    for (const TimeSeriesFrame& station : stations) {
        out.values.col(0) += station.values.col(0);
    }
    out.values.col(0) /= static_cast<double>(stations.size());
    return out;
}

} // namespace netload
