#include <doctest.h>

#include "loadsift/date.hpp"
#include "loadsift/errors.hpp"
#include "loadsift/timezone.hpp"

using namespace loadsift;

TEST_CASE("date parsing and formatting round-trip") {
    const Date d = Date::parse("2020-03-12");
    CHECK(d.year() == 2020);
    CHECK(d.month() == 3);
    CHECK(d.day() == 12);
    CHECK(d.to_string() == "2020-03-12");

    CHECK_THROWS_AS(Date::parse("2020-3-12"), Error);
    CHECK_THROWS_AS(Date::parse("2020-13-01"), Error);
    CHECK_THROWS_AS(Date::parse("not a date"), Error);
}

TEST_CASE("2020-03-12 was a Thursday") {
    CHECK(Date(2020, 3, 12).weekday_index() == 3);
    CHECK(Date(2020, 3, 9).weekday_index() == 0);   // Monday
    CHECK(Date(2020, 3, 15).weekday_index() == 6);  // Sunday
}

TEST_CASE("leap years") {
    CHECK(is_leap_year(2020));
    CHECK(!is_leap_year(2019));
    CHECK(!is_leap_year(1900));
    CHECK(is_leap_year(2000));
    CHECK(Date(2020, 2, 29).to_string() == "2020-02-29");
    CHECK_THROWS_AS(Date(2019, 2, 29), Error);
    CHECK(Date(2020, 2, 28) + 1 == Date(2020, 2, 29));
    CHECK(Date(2019, 2, 28) + 1 == Date(2019, 3, 1));
}

TEST_CASE("arithmetic and day-of-year") {
    const Date a(2019, 12, 31);
    const Date b(2020, 1, 1);
    CHECK(b - a == 1);
    CHECK(a + 1 == b);
    CHECK(b.day_of_year() == 1);
    CHECK(Date(2020, 12, 31).day_of_year() == 366);
    CHECK(Date(2019, 12, 31).day_of_year() == 365);
}

TEST_CASE("weekday rotates by one day with wraparound") {
    Date d(2021, 6, 1);
    for (int i = 0; i < 30; ++i) {
        CHECK((d + 1).weekday_index() == (d.weekday_index() + 1) % 7);
        ++d;
    }
}

TEST_CASE("date ranges") {
    const DateRange r = DateRange::parse("2020-02-01..2020-02-29");
    CHECK(r.length() == 29);
    CHECK(r.contains(Date(2020, 2, 15)));
    CHECK(!r.contains(Date(2020, 3, 1)));
    CHECK(r.to_string() == "2020-02-01..2020-02-29");
    CHECK_THROWS_AS(DateRange::parse("2020-02-29..2020-02-01"), Error);
    CHECK_THROWS_AS(DateRange::parse("2020-02-01"), Error);

    CHECK(DateRange::parse("2020-01-01..2020-01-10")
              .overlaps(DateRange::parse("2020-01-10..2020-01-20")));
    CHECK(!DateRange::parse("2020-01-01..2020-01-10")
               .overlaps(DateRange::parse("2020-01-11..2020-01-20")));
}

TEST_CASE("utc offset rules") {
    const UtcOffset fixed = UtcOffset::parse("+02:00");
    CHECK(fixed.offset_minutes(Date(2020, 1, 15), 12.0) == 120);
    CHECK(fixed.offset_minutes(Date(2020, 7, 15), 12.0) == 120);

    const UtcOffset eu = UtcOffset::parse("EU+02:00");
    CHECK(eu.offset_minutes(Date(2020, 1, 15), 12.0) == 120);
    CHECK(eu.offset_minutes(Date(2020, 7, 15), 12.0) == 180);
    // 2020 transitions: March 29 and October 25.
    CHECK(eu.offset_minutes(Date(2020, 3, 28), 12.0) == 120);
    CHECK(eu.offset_minutes(Date(2020, 3, 29), 12.0) == 180);
    CHECK(eu.offset_minutes(Date(2020, 10, 24), 12.0) == 180);
    CHECK(eu.offset_minutes(Date(2020, 10, 25), 12.0) == 120);

    CHECK(UtcOffset::parse("-05:30").offset_minutes(Date(2020, 1, 1), 0.0) ==
          -330);
    CHECK_THROWS_AS(UtcOffset::parse("02:00"), Error);
    CHECK(eu.to_string() == "EU+02:00");
}

TEST_CASE("last weekday of month") {
    CHECK(last_weekday_of_month(2020, 3, 6) == Date(2020, 3, 29));
    CHECK(last_weekday_of_month(2020, 10, 6) == Date(2020, 10, 25));
    CHECK(last_weekday_of_month(2019, 3, 6) == Date(2019, 3, 31));
}
