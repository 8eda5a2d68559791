#include "loadsift/date.hpp"

#include <array>
#include <cstdio>

#include "loadsift/errors.hpp"

namespace loadsift {

namespace {

// Civil-from-days / days-from-civil via the standard era decomposition
// (valid over the whole int range used here).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy =
        (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
        static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct Civil {
    int year;
    int month;
    int day;
};

Civil civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return {static_cast<int>(y + (m <= 2)), static_cast<int>(m),
            static_cast<int>(d)};
}

} // namespace

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                    31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap_year(year)) return 29;
    return lengths[static_cast<std::size_t>(month - 1)];
}

Date::Date(int year, int month, int day) {
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month))
        fail("format-error", "invalid calendar date " + std::to_string(year) +
                                 "-" + std::to_string(month) + "-" +
                                 std::to_string(day));
    days_ = days_from_civil(year, month, day);
}

Date Date::from_serial(std::int64_t days) {
    Date d;
    d.days_ = days;
    return d;
}

Date Date::parse(std::string_view text) {
    int y = 0, m = 0, d = 0;
    char extra = '\0';
    const std::string buf(text);
    if (std::sscanf(buf.c_str(), "%4d-%2d-%2d%c", &y, &m, &d, &extra) != 3 ||
        buf.size() != 10)
        fail("format-error", "expected YYYY-MM-DD, got '" + buf + "'");
    return Date(y, m, d);
}

int Date::year() const { return civil_from_days(days_).year; }
int Date::month() const { return civil_from_days(days_).month; }
int Date::day() const { return civil_from_days(days_).day; }

int Date::weekday_index() const {
    // 1970-01-01 was a Thursday (index 3).
    return static_cast<int>(((days_ % 7) + 7 + 3) % 7);
}

int Date::day_of_year() const {
    const Civil c = civil_from_days(days_);
    return static_cast<int>(days_ - days_from_civil(c.year, 1, 1)) + 1;
}

std::string Date::to_string() const {
    const Civil c = civil_from_days(days_);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", c.year, c.month, c.day);
    return buf;
}

DateRange::DateRange(Date f, Date l) : first(f), last(l) {
    if (last < first)
        fail("format-error",
             "date range end " + last.to_string() + " precedes start " +
                 first.to_string());
}

DateRange DateRange::parse(std::string_view text) {
    const auto pos = text.find("..");
    if (pos == std::string_view::npos)
        fail("format-error",
             "expected YYYY-MM-DD..YYYY-MM-DD, got '" + std::string(text) + "'");
    return DateRange(Date::parse(text.substr(0, pos)),
                     Date::parse(text.substr(pos + 2)));
}

std::string DateRange::to_string() const {
    return first.to_string() + ".." + last.to_string();
}

} // namespace loadsift
