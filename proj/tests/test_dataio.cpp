#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netload/calendar.hpp"
#include "netload/dataset.hpp"
#include "netload/errors.hpp"
#include "netload/gefcom.hpp"
#include "netload/rng.hpp"
#include "netload/time_series.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace netload;

namespace {

std::string write_temp_file(const std::string& name, const std::string& contents) {
    const std::string path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path);
    out << contents;
    return path;
}

std::string wide_header() {
    std::string h = "zone_id,year,month,day";
    for (int i = 1; i <= 24; ++i) {
        h += ",h" + std::to_string(i);
    }
    return h + "\n";
}

std::string day_row(int zone, int y, int m, int d, double start) {
    std::string row = std::to_string(zone) + "," + std::to_string(y) + "," + std::to_string(m) +
                      "," + std::to_string(d);
    for (int h = 0; h < 24; ++h) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), ",%.1f", start + h);
        row += buf;
    }
    return row + "\n";
}

TimeSeriesFrame constant_frame(const std::string& column, double value, int hours,
                               std::int64_t start = 0) {
    TimeSeriesFrame f;
    f.column_names = {column};
    f.values = Eigen::MatrixXd::Constant(hours, 1, value);
    for (int i = 0; i < hours; ++i) {
        f.timestamps.push_back(start + i * 3600);
    }
    return f;
}

} // namespace

TEST_CASE("calendar features for known dates") {
    const HolidayCalendar cal = HolidayCalendar::us_federal();

    // 2004-01-01 was a Thursday.
    CalendarFeatures f = calendar_features(civil_to_epoch_seconds(2004, 1, 1, 0), cal);
    CHECK(f.month == 1);
    CHECK(f.day_of_week == 4);
    CHECK(f.day_of_year == 1);
    CHECK(f.hour_of_day == 0);
    CHECK(f.holiday); // New Year's Day

    // 2004 is a leap year.
    f = calendar_features(civil_to_epoch_seconds(2004, 12, 31, 23), cal);
    CHECK(f.day_of_year == 366);
    CHECK(f.hour_of_day == 23);

    // Thanksgiving 2004: fourth Thursday of November = Nov 25.
    CHECK(cal.is_holiday(2004, 11, 25));
    CHECK_FALSE(cal.is_holiday(2004, 11, 18));
    // Memorial Day 2004: last Monday of May = May 31.
    CHECK(cal.is_holiday(2004, 5, 31));
    // MLK 2004: third Monday of January = Jan 19.
    CHECK(cal.is_holiday(2004, 1, 19));
    CHECK(cal.is_holiday(2004, 7, 4));
    CHECK_FALSE(cal.is_holiday(2004, 3, 9));
    // Juneteenth only from 2021 on.
    CHECK_FALSE(cal.is_holiday(2008, 6, 19));
    CHECK(cal.is_holiday(2021, 6, 19));
}

TEST_CASE("holiday list file overrides the rules") {
    const std::string path =
        write_temp_file("netload_holidays.txt", "# custom\n2004-03-09\n2004-03-10\n");
    const HolidayCalendar cal = HolidayCalendar::from_file(path);
    CHECK(cal.is_holiday(2004, 3, 9));
    CHECK_FALSE(cal.is_holiday(2004, 7, 4));
    CHECK_THROWS_AS(HolidayCalendar::from_file("/nonexistent/holidays"), FileNotFound);
}

TEST_CASE("iso8601 parse and format round trip") {
    const std::int64_t t = civil_to_epoch_seconds(2008, 6, 30, 23);
    CHECK(format_iso8601(t) == "2008-06-30T23:00:00Z");
    CHECK(parse_iso8601("2008-06-30T23:00:00Z") == t);
    CHECK(parse_iso8601("2008-06-30 23:00") == t);
    CHECK_THROWS_AS(parse_iso8601("not a date"), SchemaMismatch);
}

TEST_CASE("gefcom wide load: identity ingestion of a complete file") {
    const std::string path = write_temp_file(
        "netload_load1.csv", wide_header() + day_row(1, 2004, 1, 1, 100) + day_row(1, 2004, 1, 2, 200));
    const TimeSeriesFrame frame = load_gefcom_load(path, 1);
    CHECK(frame.length() == 48);
    CHECK(frame.column_names == std::vector<std::string>{"load_kw"});
    CHECK(frame.values(0, 0) == 100.0);
    CHECK(frame.values(47, 0) == 223.0);
    CHECK(frame.gaps.empty());
    frame.validate();
}

TEST_CASE("gefcom wide load: missing hour forward-filled with gap report") {
    // h3 of the first day left blank.
    std::string row = "21,2004,1,1,10.0,11.0,,13.0";
    for (int h = 5; h <= 24; ++h) {
        row += "," + std::to_string(h + 9) + ".0";
    }
    const std::string path = write_temp_file("netload_load2.csv", wide_header() + row + "\n");
    const TimeSeriesFrame frame = load_gefcom_load(path, 21);
    CHECK(frame.length() == 24);
    REQUIRE(frame.gaps.size() == 1);
    CHECK(frame.gaps[0].timestamp == civil_to_epoch_seconds(2004, 1, 1, 2));
    CHECK(frame.gaps[0].source == civil_to_epoch_seconds(2004, 1, 1, 1));
    CHECK(frame.values(2, 0) == 11.0); // forward-filled from h2
    CHECK(frame.values(3, 0) == 13.0);
}

TEST_CASE("gefcom wide load: quoted thousands separators") {
    std::string row = "21,2004,1,1";
    for (int h = 0; h < 24; ++h) {
        row += ",\"1,234\"";
    }
    const std::string path = write_temp_file("netload_load3.csv", wide_header() + row + "\n");
    const TimeSeriesFrame frame = load_gefcom_load(path, 21);
    CHECK(frame.values(5, 0) == 1234.0);
}

TEST_CASE("gefcom wide load: error cases") {
    CHECK_THROWS_AS(load_gefcom_load("/nonexistent/file.csv", 21), FileNotFound);

    const std::string bad_header =
        write_temp_file("netload_load4.csv", "zone,year,month,day,h1\n1,2004,1,1,5\n");
    CHECK_THROWS_AS(load_gefcom_load(bad_header, 1), SchemaMismatch);

    const std::string no_zone =
        write_temp_file("netload_load5.csv", wide_header() + day_row(3, 2004, 1, 1, 0));
    CHECK_THROWS_AS(load_gefcom_load(no_zone, 21), SchemaMismatch);

    // Zone present but every cell blank: an empty series.
    std::string blank = "21,2004,1,1";
    for (int h = 0; h < 24; ++h) {
        blank += ",";
    }
    const std::string empty_path =
        write_temp_file("netload_load6.csv", wide_header() + blank + "\n");
    CHECK_THROWS_AS(load_gefcom_load(empty_path, 21), EmptySeries);
}

TEST_CASE("gefcom series ids") {
    const std::string path =
        write_temp_file("netload_ids.csv", wide_header() + day_row(2, 2004, 1, 1, 0) +
                                               day_row(7, 2004, 1, 1, 0) + day_row(2, 2004, 1, 2, 0));
    CHECK(gefcom_series_ids(path) == std::vector<int>{2, 7});
}

TEST_CASE("gefcom solar long file") {
    const std::string path = write_temp_file("netload_solar.csv",
                                             "timestamp,pv_kw,temp_c\n"
                                             "2012-04-01T00:00:00Z,0.0,11.5\n"
                                             "2012-04-01T01:00:00Z,0.5,12.5\n"
                                             "2012-04-01T02:00:00Z,3.5,13.5\n");
    const TimeSeriesFrame frame = load_gefcom_solar(path);
    CHECK(frame.length() == 3);
    CHECK(frame.column_names == std::vector<std::string>{"pv_kw", "temp_c"});
    CHECK(frame.column("temp_c")(1) == 12.5);

    const std::string bad = write_temp_file("netload_solar_bad.csv", "time,pv\n1,2\n");
    CHECK_THROWS_AS(load_gefcom_solar(bad), SchemaMismatch);
    const std::string empty = write_temp_file("netload_solar_empty.csv", "timestamp,pv_kw\n");
    CHECK_THROWS_AS(load_gefcom_solar(empty), EmptySeries);
}

TEST_CASE("virtual weather station") {
    SUBCASE("single station is the identity") {
        const TimeSeriesFrame station = constant_frame("temp_c", 17.25, 10);
        const TimeSeriesFrame avg = virtual_weather_station({station});
        CHECK(avg.values == station.values);
        CHECK(avg.timestamps == station.timestamps);
    }
    SUBCASE("two constant series at 10 and 20 average to 15") {
        const TimeSeriesFrame avg =
            virtual_weather_station({constant_frame("t", 10, 6), constant_frame("t", 20, 6)});
        for (Eigen::Index i = 0; i < 6; ++i) {
            CHECK(avg.values(i, 0) == 15.0);
        }
    }
    SUBCASE("11 random stations match brute-force recomputation") {
        Rng rng(99);
        std::vector<TimeSeriesFrame> stations;
        for (int s = 0; s < 11; ++s) {
            TimeSeriesFrame f = constant_frame("t", 0, 50);
            for (int i = 0; i < 50; ++i) {
                f.values(i, 0) = rng.normal(10.0, 8.0);
            }
            stations.push_back(std::move(f));
        }
        const TimeSeriesFrame avg = virtual_weather_station(stations);
        for (int i = 0; i < 50; ++i) {
            double sum = 0.0;
            for (const auto& s : stations) {
                sum += s.values(i, 0);
            }
            CHECK(avg.values(i, 0) == doctest::Approx(sum / 11.0).epsilon(1e-15));
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(virtual_weather_station({}), EmptyInput);
        TimeSeriesFrame shifted = constant_frame("t", 1, 6, 3600);
        CHECK_THROWS_AS(virtual_weather_station({constant_frame("t", 1, 6), shifted}),
                        TimestampMismatch);
    }
}

TEST_CASE("canonical csv round trip is bit-exact") {
    Rng rng(4);
    TimeSeriesFrame frame = constant_frame("load_kw", 0, 100, civil_to_epoch_seconds(2004, 1, 1, 0));
    for (int i = 0; i < 100; ++i) {
        frame.values(i, 0) = rng.normal(1234.5678, 99.0) * (i % 7 == 0 ? 1e-7 : 1e3);
    }
    const std::string path =
        (std::filesystem::temp_directory_path() / "netload_roundtrip.csv").string();
    write_canonical_csv(frame, "load_kw", path);
    const TimeSeriesFrame back = read_canonical_csv(path, "load_kw");
    REQUIRE(back.length() == frame.length());
    CHECK(back.timestamps == frame.timestamps);
    for (int i = 0; i < 100; ++i) {
        CHECK(back.values(i, 0) == frame.values(i, 0)); // bit-identical
    }
}

TEST_CASE("gap report format") {
    TimeSeriesFrame frame = constant_frame("x", 1, 3);
    frame.gaps.push_back(GapFill{3600, 0});
    const std::string path = (std::filesystem::temp_directory_path() / "netload_gaps.txt").string();
    write_gap_report(frame, path);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "1970-01-01T01:00:00Z,1970-01-01T00:00:00Z");
}

TEST_CASE("chronological split arithmetic") {
    CHECK(chronological_split(1000) == 700);
    CHECK(chronological_split(10) == 7);
    CHECK(chronological_split(1) == 0);
}

TEST_CASE("build_load_dataset") {
    const std::int64_t start = civil_to_epoch_seconds(2004, 1, 1, 0);
    TimeSeriesFrame load = constant_frame("load_kw", 0, 1000, start);
    TimeSeriesFrame temp = constant_frame("temp_c", 0, 1000, start);
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        load.values(i, 0) = 50 + rng.uniform01();
        temp.values(i, 0) = 10 + rng.uniform01();
    }
    const HolidayCalendar cal = HolidayCalendar::us_federal();
    const SupervisedDataset ds = build_load_dataset(load, temp, cal);

    CHECK(ds.rows() == 1000);
    CHECK(ds.n_train == 700);
    CHECK(ds.n_test() == 300);
    CHECK(ds.feature_names == std::vector<std::string>{"temp_c", "month", "day_of_week",
                                                       "day_of_year", "holiday", "hour_of_day"});
    CHECK(ds.target_name == "load_kw");

    // Split invariance: train strictly precedes test in time.
    CHECK(ds.timestamps[699] < ds.timestamps[700]);

    // Feature encoding spot checks: first row is 2004-01-01T00 (holiday, Thursday).
    CHECK(ds.features(0, 0) == temp.values(0, 0));
    CHECK(ds.features(0, 1) == 1.0);
    CHECK(ds.features(0, 2) == 4.0);
    CHECK(ds.features(0, 3) == 1.0);
    CHECK(ds.features(0, 4) == 1.0);
    CHECK(ds.features(0, 5) == 0.0);
    CHECK(ds.features(25, 5) == 1.0); // hour wraps daily

    TimeSeriesFrame shifted = constant_frame("temp_c", 0, 1000, start + 3600);
    CHECK_THROWS_AS(build_load_dataset(load, shifted, cal), TimestampMismatch);
}

TEST_CASE("build_load_dataset split arithmetic on 10 rows") {
    const std::int64_t start = civil_to_epoch_seconds(2006, 5, 1, 0);
    const SupervisedDataset ds = build_load_dataset(constant_frame("load_kw", 5, 10, start),
                                                    constant_frame("temp_c", 6, 10, start),
                                                    HolidayCalendar::us_federal());
    CHECK(ds.n_train == 7);
    CHECK(ds.n_test() == 3);
}

TEST_CASE("build_pv_dataset one-hot structure") {
    const std::int64_t start = civil_to_epoch_seconds(2012, 1, 1, 0); // January
    TimeSeriesFrame pv = constant_frame("pv_kw", 1.5, 500, start);
    TimeSeriesFrame weather = constant_frame("temp_c", 9.0, 500, start);
    const SupervisedDataset ds = build_pv_dataset(pv, weather);

    CHECK(ds.rows() == 500);
    CHECK(ds.feature_names.size() == 1 + 12 + 7 + 24);
    CHECK(ds.feature_names[0] == "temp_c");
    CHECK(ds.feature_names[1] == "month_1");
    CHECK(ds.feature_names[13] == "dow_0");
    CHECK(ds.feature_names[20] == "hour_0");
    CHECK(ds.target_name == "pv_kw");

    // month=1 row: one-hot month vector (1,0,...,0).
    CHECK(ds.features(0, ds.feature_index("month_1")) == 1.0);
    for (int m = 2; m <= 12; ++m) {
        CHECK(ds.features(0, ds.feature_index("month_" + std::to_string(m))) == 0.0);
    }

    // Every one-hot group sums to exactly 1 on every row.
    for (Eigen::Index i = 0; i < ds.rows(); ++i) {
        CHECK(ds.features.row(i).segment(1, 12).sum() == 1.0);
        CHECK(ds.features.row(i).segment(13, 7).sum() == 1.0);
        CHECK(ds.features.row(i).segment(20, 24).sum() == 1.0);
    }

    TimeSeriesFrame wrong = constant_frame("humidity", 1.0, 500, start);
    CHECK_THROWS_AS(build_pv_dataset(pv, wrong), MissingWeatherColumn);
}

TEST_CASE("subsample keeps the chronological prefix and re-splits") {
    const std::int64_t start = civil_to_epoch_seconds(2004, 1, 1, 0);
    const SupervisedDataset ds = build_load_dataset(constant_frame("load_kw", 5, 100, start),
                                                    constant_frame("temp_c", 6, 100, start),
                                                    HolidayCalendar::us_federal());
    const SupervisedDataset small = subsample(ds, 10);
    CHECK(small.rows() == 10);
    CHECK(small.n_train == 7);
    CHECK(small.timestamps.front() == ds.timestamps.front());
    const SupervisedDataset unchanged = subsample(ds, 0);
    CHECK(unchanged.rows() == 100);
}

TEST_CASE("slice and overlap trimming") {
    TimeSeriesFrame a = constant_frame("x", 1, 48, 0);
    TimeSeriesFrame b = constant_frame("x", 2, 48, 24 * 3600);
    trim_to_overlap(a, b);
    CHECK(a.length() == 24);
    CHECK(b.length() == 24);
    CHECK(a.timestamps == b.timestamps);

    TimeSeriesFrame c = constant_frame("x", 1, 5, 0);
    TimeSeriesFrame d = constant_frame("x", 1, 5, 100 * 3600);
    CHECK_THROWS_AS(trim_to_overlap(c, d), EmptySeries);
}
