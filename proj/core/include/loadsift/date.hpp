#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace loadsift {

/// Proleptic Gregorian calendar date backed by a serial day number
/// (days since 1970-01-01). Cheap to copy, totally ordered, and safe for
/// day arithmetic across month and year boundaries.
class Date {
public:
    Date() = default;
    Date(int year, int month, int day);

    static Date from_serial(std::int64_t days);

    /// Parses strict `YYYY-MM-DD`.
    static Date parse(std::string_view text);

    int year() const;
    int month() const;
    int day() const;
    std::int64_t serial() const { return days_; }

    /// Monday = 0 ... Sunday = 6.
    int weekday_index() const;

    /// 1-based ordinal day within the year.
    int day_of_year() const;

    std::string to_string() const;

    Date operator+(std::int64_t days) const { return from_serial(days_ + days); }
    Date operator-(std::int64_t days) const { return from_serial(days_ - days); }
    std::int64_t operator-(Date other) const { return days_ - other.days_; }
    Date& operator++() { ++days_; return *this; }

    auto operator<=>(const Date&) const = default;

private:
    std::int64_t days_ = 0;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);

/// Inclusive span of calendar days.
struct DateRange {
    Date first;
    Date last;

    DateRange() = default;
    DateRange(Date f, Date l);

    /// Parses `YYYY-MM-DD..YYYY-MM-DD`.
    static DateRange parse(std::string_view text);

    std::int64_t length() const { return last - first + 1; }
    bool contains(Date d) const { return first <= d && d <= last; }
    bool contains(const DateRange& r) const {
        return contains(r.first) && contains(r.last);
    }
    bool overlaps(const DateRange& r) const {
        return first <= r.last && r.first <= last;
    }
    std::string to_string() const;

    bool operator==(const DateRange&) const = default;
};

} // namespace loadsift
