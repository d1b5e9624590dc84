#include "netload/calendar.hpp"

#include "netload/errors.hpp"

#include <cstdio>
#include <fstream>

namespace netload {

// Howard Hinnant's public-domain civil calendar algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 + static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

namespace {

int weekday_of(int year, int month, int day) {
    // 1970-01-01 was a Thursday; 0 = Sunday.
    const std::int64_t z = days_from_civil(year, month, day);
    return static_cast<int>(((z % 7) + 11) % 7);
}

// Day of month of the n-th given weekday (1-based n) in a month.
int nth_weekday(int year, int month, int weekday, int n) {
    const int first = weekday_of(year, month, 1);
    const int offset = (weekday - first + 7) % 7;
    return 1 + offset + (n - 1) * 7;
}

int last_weekday(int year, int month, int weekday) {
    static const int month_days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int days = month_days[month - 1];
    if (month == 2 && ((year % 4 == 0 && year % 100 != 0) || year % 400 == 0)) {
        days = 29;
    }
    const int last = weekday_of(year, month, days);
    return days - (last - weekday + 7) % 7;
}

bool us_federal_rule(int year, int month, int day) {
    switch (month) {
    case 1:
        return day == 1 || day == nth_weekday(year, 1, 1, 3); // New Year, MLK Day
    case 2:
        return day == nth_weekday(year, 2, 1, 3); // Washington's Birthday
    case 5:
        return day == last_weekday(year, 5, 1); // Memorial Day
    case 6:
        return year >= 2021 && day == 19; // Juneteenth
    case 7:
        return day == 4; // Independence Day
    case 9:
        return day == nth_weekday(year, 9, 1, 1); // Labor Day
    case 10:
        return day == nth_weekday(year, 10, 1, 2); // Columbus Day
    case 11:
        return day == 11 || day == nth_weekday(year, 11, 4, 4); // Veterans Day, Thanksgiving
    case 12:
        return day == 25; // Christmas
    default:
        return false;
    }
}

} // namespace

HolidayCalendar HolidayCalendar::us_federal() {
    return HolidayCalendar{};
}

HolidayCalendar HolidayCalendar::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FileNotFound("holiday list not found: " + path);
    }
    HolidayCalendar cal;
    cal.use_rules_ = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        int y = 0, m = 0, d = 0;
        if (std::sscanf(line.c_str(), "%d-%d-%d", &y, &m, &d) != 3) {
            throw SchemaMismatch("bad holiday date line: " + line);
        }
        cal.explicit_days_.insert(days_from_civil(y, m, d));
    }
    return cal;
}

bool HolidayCalendar::is_holiday(int year, int month, int day) const {
    if (use_rules_) {
        return us_federal_rule(year, month, day);
    }
    return explicit_days_.count(days_from_civil(year, month, day)) > 0;
}

CalendarFeatures calendar_features(std::int64_t epoch_seconds, const HolidayCalendar& holidays) {
    const std::int64_t days = epoch_seconds >= 0 ? epoch_seconds / 86400
                                                 : (epoch_seconds - 86399) / 86400;
    const int hour = static_cast<int>((epoch_seconds - days * 86400) / 3600);
    const CivilDate date = civil_from_days(days);

    CalendarFeatures f;
    f.month = date.month;
    f.day_of_week = static_cast<int>(((days % 7) + 11) % 7);
    f.day_of_year = static_cast<int>(days - days_from_civil(date.year, 1, 1)) + 1;
    f.holiday = holidays.is_holiday(date.year, date.month, date.day);
    f.hour_of_day = hour;
    return f;
}

} // namespace netload
