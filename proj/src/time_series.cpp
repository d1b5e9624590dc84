#include "netload/time_series.hpp"

#include "netload/calendar.hpp"
#include "netload/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace netload {

constexpr std::int64_t kHour = 3600;

Eigen::Index TimeSeriesFrame::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < column_names.size(); ++i) {
        if (column_names[i] == name) {
            return static_cast<Eigen::Index>(i);
        }
    }
    return -1;
}

Eigen::VectorXd TimeSeriesFrame::column(const std::string& name) const {
    const Eigen::Index i = column_index(name);
    if (i < 0) {
        throw SchemaMismatch("no such column: " + name);
    }
    return values.col(i);
}

void TimeSeriesFrame::validate() const {
    if (values.rows() != length()) {
        throw SchemaMismatch("column length does not match timestamp count");
    }
    if (values.cols() != static_cast<Eigen::Index>(column_names.size())) {
        throw SchemaMismatch("column count does not match column names");
    }
    for (std::size_t i = 1; i < timestamps.size(); ++i) {
        if (timestamps[i] - timestamps[i - 1] != kHour) {
            throw TimestampMismatch("non-hourly step at " + format_iso8601(timestamps[i]));
        }
    }
    if (!values.allFinite()) {
        throw SchemaMismatch("frame contains non-finite values");
    }
}

std::int64_t parse_iso8601(const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    // Accept "YYYY-MM-DD HH:MM[:SS]" and "YYYY-MM-DDTHH:MM[:SS][Z]".
    const int n = std::sscanf(text.c_str(), "%d-%d-%d%*c%d:%d:%d", &y, &mo, &d, &h, &mi, &s);
    if (n < 5) {
        throw SchemaMismatch("bad timestamp: " + text);
    }
    return civil_to_epoch_seconds(y, mo, d, h) + mi * 60 + s;
}

std::string format_iso8601(std::int64_t epoch_seconds) {
    const std::int64_t days = epoch_seconds >= 0 ? epoch_seconds / 86400
                                                 : (epoch_seconds - 86399) / 86400;
    const std::int64_t rem = epoch_seconds - days * 86400;
    const CivilDate date = civil_from_days(days);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", date.year, date.month,
                  date.day, static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

void write_canonical_csv(const TimeSeriesFrame& frame, const std::string& column, const std::string& path) {
    const Eigen::Index col = frame.column_index(column);
    if (col < 0) {
        throw SchemaMismatch("no such column: " + column);
    }
    std::ofstream out(path);
    if (!out) {
        throw FileNotFound("cannot open for writing: " + path);
    }
    out << "timestamp,value\n";
    char buf[40];
    for (Eigen::Index i = 0; i < frame.length(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", frame.values(i, col));
        out << format_iso8601(frame.timestamps[i]) << ',' << buf << '\n';
    }
}

TimeSeriesFrame read_canonical_csv(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) {
        throw FileNotFound("cannot open: " + path);
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("timestamp,", 0) != 0) {
        throw SchemaMismatch("expected `timestamp,value` header in " + path);
    }
    std::vector<std::int64_t> ts;
    std::vector<double> vals;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw SchemaMismatch("bad row in " + path + ": " + line);
        }
        ts.push_back(parse_iso8601(line.substr(0, comma)));
        vals.push_back(std::stod(line.substr(comma + 1)));
    }
    if (ts.empty()) {
        throw EmptySeries("no rows in " + path);
    }
    TimeSeriesFrame frame;
    frame.timestamps = std::move(ts);
    frame.column_names = {column};
    frame.values = Eigen::Map<const Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
    frame.validate();
    return frame;
}

void write_gap_report(const TimeSeriesFrame& frame, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw FileNotFound("cannot open for writing: " + path);
    }
    for (const GapFill& gap : frame.gaps) {
        out << format_iso8601(gap.timestamp) << ',' << format_iso8601(gap.source) << '\n';
    }
}

TimeSeriesFrame assemble_hourly(const std::vector<std::int64_t>& timestamps,
                                const std::vector<double>& values,
                                const std::string& column_name) {
    if (timestamps.size() != values.size()) {
        throw LengthMismatch("timestamp/value count mismatch");
    }
    if (timestamps.empty()) {
        throw EmptySeries("no parseable rows for column " + column_name);
    }
    for (std::size_t i = 1; i < timestamps.size(); ++i) {
        if (timestamps[i] <= timestamps[i - 1]) {
            throw TimestampMismatch("timestamps not strictly increasing at " +
                                    format_iso8601(timestamps[i]));
        }
    }

    const std::int64_t first = timestamps.front();
    const std::int64_t last = timestamps.back();
    const Eigen::Index n = static_cast<Eigen::Index>((last - first) / kHour) + 1;

    TimeSeriesFrame frame;
    frame.timestamps.reserve(static_cast<std::size_t>(n));
    frame.column_names = {column_name};
    frame.values.resize(n, 1);

    std::size_t src = 0;
    std::int64_t last_present = first;
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::int64_t t = first + i * kHour;
        frame.timestamps.push_back(t);
        if (src < timestamps.size() && timestamps[src] == t) {
            frame.values(i, 0) = values[src];
            last_present = t;
            ++src;
        } else {
            frame.values(i, 0) = frame.values(i - 1, 0);
            frame.gaps.push_back(GapFill{t, last_present});
        }
    }
    if (src != timestamps.size()) {
        throw TimestampMismatch("source rows not aligned to the hourly grid for " + column_name);
    }
    return frame;
}

TimeSeriesFrame slice_frame(const TimeSeriesFrame& frame, std::int64_t first, std::int64_t last) {
    const auto begin = std::lower_bound(frame.timestamps.begin(), frame.timestamps.end(), first);
    const auto end = std::upper_bound(frame.timestamps.begin(), frame.timestamps.end(), last);
    if (begin >= end) {
        throw EmptySeries("slice window contains no rows");
    }
    const Eigen::Index offset = begin - frame.timestamps.begin();
    const Eigen::Index rows = end - begin;

    TimeSeriesFrame out;
    out.timestamps.assign(begin, end);
    out.column_names = frame.column_names;
    out.values = frame.values.middleRows(offset, rows);
    for (const GapFill& gap : frame.gaps) {
        if (gap.timestamp >= first && gap.timestamp <= last) {
            out.gaps.push_back(gap);
        }
    }
    return out;
}

void trim_to_overlap(TimeSeriesFrame& a, TimeSeriesFrame& b) {
    const std::int64_t first = std::max(a.timestamps.front(), b.timestamps.front());
    const std::int64_t last = std::min(a.timestamps.back(), b.timestamps.back());
    if (first > last) {
        throw EmptySeries("frames do not overlap in time");
    }
    a = slice_frame(a, first, last);
    b = slice_frame(b, first, last);
}

} // namespace netload
