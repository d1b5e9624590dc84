#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace netload {

// Hour that was absent from the source file and forward-filled.
struct GapFill {
    std::int64_t timestamp = 0; // filled hour
    std::int64_t source = 0;    // hour the value was copied from
};

// Timestamp-aligned columns of hourly measurements. Timestamps are UTC epoch
// seconds, strictly increasing with a uniform 1-hour step; forward-filled
// hours are listed in `gaps`.
struct TimeSeriesFrame {
    std::vector<std::int64_t> timestamps;
    std::vector<std::string> column_names;
    Eigen::MatrixXd values; // rows align with timestamps, one column per name
    std::vector<GapFill> gaps;

    Eigen::Index length() const { return static_cast<Eigen::Index>(timestamps.size()); }

    Eigen::Index column_index(const std::string& name) const;
    bool has_column(const std::string& name) const { return column_index(name) >= 0; }
    Eigen::VectorXd column(const std::string& name) const;

    // Checks the frame invariants: uniform hourly cadence, matching column
    // lengths, no NaN values. Throws on violation.
    void validate() const;
};

std::int64_t parse_iso8601(const std::string& text);
std::string format_iso8601(std::int64_t epoch_seconds);

// Canonical long format: header `timestamp,value`, one row per hour, values
// printed with round-trip precision.
void write_canonical_csv(const TimeSeriesFrame& frame, const std::string& column, const std::string& path);
TimeSeriesFrame read_canonical_csv(const std::string& path, const std::string& column);

// Plain-text gap report, one `timestamp,fill_source` line per filled hour.
void write_gap_report(const TimeSeriesFrame& frame, const std::string& path);

// Reindexes sparse hourly (timestamp, value) records onto the full hourly
// grid between the first and last record, forward-filling missing hours and
// recording them as gaps. Records must be strictly increasing in time.
TimeSeriesFrame assemble_hourly(const std::vector<std::int64_t>& timestamps,
                                const std::vector<double>& values,
                                const std::string& column_name);

// Copy of the frame restricted to [first, last] (epoch seconds, inclusive).
TimeSeriesFrame slice_frame(const TimeSeriesFrame& frame, std::int64_t first, std::int64_t last);

// Trims both frames to their overlapping time window. Throws EmptySeries
// when the windows do not intersect.
void trim_to_overlap(TimeSeriesFrame& a, TimeSeriesFrame& b);

} // namespace netload
