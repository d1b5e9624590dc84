#pragma once

#include <cstdint>
#include <set>
#include <string>

namespace netload {

// Calendar inputs derived from an hourly timestamp. day_of_week uses
// 0 = Sunday .. 6 = Saturday; day_of_year is 1-based (1..366).
struct CalendarFeatures {
    int month = 1;       // 1..12
    int day_of_week = 0; // 0..6, 0 = Sunday
    int day_of_year = 1; // 1..366
    bool holiday = false;
    int hour_of_day = 0; // 0..23
};

struct CivilDate {
    int year = 1970;
    int month = 1;
    int day = 1;
};

// Proleptic Gregorian conversions (days relative to 1970-01-01).
std::int64_t days_from_civil(int year, int month, int day);
CivilDate civil_from_days(std::int64_t days);

inline std::int64_t civil_to_epoch_seconds(int year, int month, int day, int hour) {
    return (days_from_civil(year, month, day) * 24 + hour) * 3600;
}

// Holiday calendar. The default rule set is the US federal holidays computed
// from date rules (no observed-day shifting). An explicit date list loaded
// from a file overrides the rules entirely.
class HolidayCalendar {
public:
    static HolidayCalendar us_federal();
    // One ISO date (YYYY-MM-DD) per line; '#' starts a comment.
    static HolidayCalendar from_file(const std::string& path);

    bool is_holiday(int year, int month, int day) const;

private:
    bool use_rules_ = true;
    std::set<std::int64_t> explicit_days_; // days since epoch
};

// Features for an hourly UTC timestamp given in epoch seconds.
CalendarFeatures calendar_features(std::int64_t epoch_seconds, const HolidayCalendar& holidays);

} // namespace netload
