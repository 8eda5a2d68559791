#include "loadsift/timezone.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "loadsift/errors.hpp"

namespace loadsift {

Date last_weekday_of_month(int year, int month, int weekday_index) {
    Date d(year, month, days_in_month(year, month));
    while (d.weekday_index() != weekday_index) d = d - 1;
    return d;
}

UtcOffset UtcOffset::fixed(int minutes) {
    UtcOffset o;
    o.standard_minutes_ = minutes;
    return o;
}

UtcOffset UtcOffset::eu_rule(int standard_minutes) {
    UtcOffset o;
    o.standard_minutes_ = standard_minutes;
    o.eu_dst_ = true;
    return o;
}

UtcOffset UtcOffset::parse(std::string_view text) {
    std::string s(text);
    bool eu = false;
    if (s.rfind("EU", 0) == 0) {
        eu = true;
        s = s.substr(2);
    }
    int hh = 0, mm = 0;
    char sign = '\0', extra = '\0';
    if (std::sscanf(s.c_str(), "%c%2d:%2d%c", &sign, &hh, &mm, &extra) != 3 ||
        (sign != '+' && sign != '-') || hh > 14 || mm > 59)
        fail("format-error",
             "expected UTC offset like '+02:00' or 'EU+02:00', got '" +
                 std::string(text) + "'");
    const int minutes = (sign == '-' ? -1 : 1) * (hh * 60 + mm);
    return eu ? eu_rule(minutes) : fixed(minutes);
}

int UtcOffset::offset_minutes(Date local_date, double local_hour) const {
    if (!eu_dst_) return standard_minutes_;

    // Candidate UTC instant assuming the standard offset; DST applies while
    // it falls in [last Sun of March 01:00 UTC, last Sun of October 01:00 UTC).
    const double utc_min = static_cast<double>(local_date.serial()) * 1440.0 +
                           local_hour * 60.0 -
                           static_cast<double>(standard_minutes_);
    const int year = local_date.year();
    const Date dst_on = last_weekday_of_month(year, 3, 6);
    const Date dst_off = last_weekday_of_month(year, 10, 6);
    const double on_min = static_cast<double>(dst_on.serial()) * 1440.0 + 60.0;
    const double off_min = static_cast<double>(dst_off.serial()) * 1440.0 + 60.0;
    if (utc_min >= on_min && utc_min < off_min) return standard_minutes_ + 60;
    return standard_minutes_;
}

std::string UtcOffset::to_string() const {
    const int m = standard_minutes_;
    char buf[16];
    std::snprintf(buf, sizeof buf, "%s%c%02d:%02d", eu_dst_ ? "EU" : "",
                  m < 0 ? '-' : '+', std::abs(m) / 60, std::abs(m) % 60);
    return buf;
}

} // namespace loadsift
