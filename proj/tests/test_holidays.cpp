#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <utility>

#include "loadsift/errors.hpp"
#include "loadsift/holidays.hpp"

using namespace loadsift;

namespace {

HolidayCalendar calendar_of(const std::string& text) {
    std::istringstream in(text);
    return HolidayCalendar::parse(in);
}

/// Residual series over [start, start + days) whose rho is `value(date)`.
template <typename F>
ResidualSeries series_from(Date start, int days, F value) {
    ResidualSeries rs;
    rs.start_date = start;
    for (int i = 0; i < days; ++i) {
        const double v = value(start + i);
        rs.raw.push_back(v);
        rs.normalized.push_back(v);
        rs.denominators.push_back(1.0);
    }
    return rs;
}

double md_value(Date d) {
    return 0.001 * static_cast<double>(d.month() * 100 + d.day());
}

} // namespace

TEST_CASE("holiday calendar parsing") {
    const HolidayCalendar cal = calendar_of(
        "# Estonian state holidays\n"
        "fixed 05-01 May Day\n"
        "fixed 06-24 Midsummer Day\n"
        "movable 2019-04-19 Good Friday\n"
        "movable 2020-04-10 Good Friday\n"
        "align 2019-04-18..2019-04-20 2020-04-09..2020-04-12 Good Friday\n");
    CHECK(cal.fixed.size() == 2);
    CHECK(cal.fixed[0].month == 5);
    CHECK(cal.fixed[0].name == "May Day");
    CHECK(cal.movable.size() == 2);
    REQUIRE(cal.alignments.size() == 1);
    CHECK(cal.alignments[0].range_a.length() == 3);
    CHECK(cal.alignments[0].range_b.length() == 4);
    CHECK(cal.alignments[0].name == "Good Friday");

    CHECK_THROWS_AS(calendar_of("fixed May Day\n"), Error);
    CHECK_THROWS_AS(calendar_of("nonsense 01-01 x\n"), Error);
}

TEST_CASE("overlapping alignment ranges within a year are rejected") {
    CHECK_THROWS_WITH_AS(
        calendar_of(
            "align 2019-04-18..2019-04-20 2020-04-09..2020-04-12 Good Friday\n"
            "align 2019-04-19..2019-04-21 2020-05-01..2020-05-02 Clash\n"),
        doctest::Contains("overlap"), Error);
}

TEST_CASE("identical series difference to zero without a calendar") {
    // Two non-leap years: every slot pairs equal month-days.
    const auto a = series_from(Date(2021, 2, 1), 100, md_value);
    const auto b = series_from(Date(2022, 2, 1), 100, md_value);
    const DifferenceSeries diff = year_difference(a, b);
    CHECK(diff.slots.size() == 100);
    for (const DifferenceSlot& slot : diff.slots)
        CHECK(slot.difference == doctest::Approx(0.0));
}

TEST_CASE("leap pairing: output length equals the leap series length") {
    // 2019 spans Feb-June (150 days); 2020 spans the same months with
    // February 29 in the middle (151 days).
    const auto a = series_from(Date(2019, 2, 1), 150, md_value);
    const auto b = series_from(Date(2020, 2, 1), 151, md_value);
    const DifferenceSeries diff = year_difference(a, b);
    CHECK(diff.slots.size() == 151);

    // Feb 28 of 2019 pairs with both Feb 28 and Feb 29 of 2020.
    int feb28_uses = 0;
    bool leap_label = false;
    for (const DifferenceSlot& slot : diff.slots) {
        if (slot.date_a == Date(2019, 2, 28)) ++feb28_uses;
        if (slot.label == "leap-feb28") {
            leap_label = true;
            CHECK(slot.date_b == Date(2020, 2, 29));
            CHECK(slot.date_a == Date(2019, 2, 28));
        }
    }
    CHECK(feb28_uses == 2);
    CHECK(leap_label);
}

TEST_CASE("swapped holiday dips cancel at aligned slots") {
    // Both series are flat at -0.01 except for the Good Friday dips, which
    // fall on different dates in the two years but carry equal means.
    const DateRange gf2019(Date(2019, 4, 18), Date(2019, 4, 20));
    const DateRange gf2020(Date(2020, 4, 9), Date(2020, 4, 12));
    const auto a = series_from(Date(2019, 2, 1), 150, [&](Date d) {
        return gf2019.contains(d) ? -0.25 : -0.01;
    });
    const auto b = series_from(Date(2020, 2, 1), 151, [&](Date d) {
        return gf2020.contains(d) ? -0.25 : -0.01;
    });
    const HolidayCalendar cal = calendar_of(
        "align 2019-04-18..2019-04-20 2020-04-09..2020-04-12 Good Friday\n");

    const DifferenceSeries diff = year_difference(a, b, cal);
    int aligned = 0;
    int swapped = 0;
    for (const DifferenceSlot& slot : diff.slots) {
        CHECK(slot.difference == doctest::Approx(0.0));
        if (slot.label.rfind("aligned:", 0) == 0) ++aligned;
        if (slot.label.rfind("aligned-swap:", 0) == 0) ++swapped;
    }
    CHECK(aligned == 4);  // one per day of the 2020-side declared range
    CHECK(swapped == 3);  // the 2020 dates matching the 2019-side range
}

TEST_CASE("unequal dips are compared mean against mean") {
    const DateRange gf2019(Date(2019, 4, 18), Date(2019, 4, 20));
    const DateRange gf2020(Date(2020, 4, 9), Date(2020, 4, 12));
    // 2019 dip mean -0.30, 2020 dip mean -0.10 -> aligned diff -0.20.
    const auto a = series_from(Date(2019, 2, 1), 150, [&](Date d) {
        return gf2019.contains(d) ? -0.30 : 0.0;
    });
    const auto b = series_from(Date(2020, 2, 1), 151, [&](Date d) {
        return gf2020.contains(d) ? -0.10 : 0.0;
    });
    const HolidayCalendar cal = calendar_of(
        "align 2019-04-18..2019-04-20 2020-04-09..2020-04-12 Good Friday\n");
    const DifferenceSeries diff = year_difference(a, b, cal);
    for (const DifferenceSlot& slot : diff.slots) {
        if (slot.label.rfind("aligned:", 0) == 0)
            CHECK(slot.difference == doctest::Approx(-0.20));
        else if (slot.label.rfind("aligned-swap:", 0) == 0)
            CHECK(slot.difference == doctest::Approx(0.0));
    }
}

TEST_CASE("year difference is antisymmetric day by day") {
    std::mt19937 rng(19);
    const auto noise = [&rng](Date) {
        return (static_cast<double>(rng() % 2000) - 1000.0) / 5000.0;
    };
    const auto a = series_from(Date(2021, 3, 1), 90, noise);
    const auto b = series_from(Date(2022, 3, 1), 90, noise);

    const DifferenceSeries ab = year_difference(a, b);
    const DifferenceSeries ba = year_difference(b, a);
    REQUIRE(ab.slots.size() == ba.slots.size());
    for (std::size_t i = 0; i < ab.slots.size(); ++i) {
        CHECK(ab.slots[i].difference ==
              doctest::Approx(-ba.slots[i].difference).epsilon(1e-12));
        CHECK(ab.slots[i].date_b == ba.slots[i].date_a);
        CHECK(ab.slots[i].date_a == ba.slots[i].date_b);
    }
}

TEST_CASE("swapping the series mirrors aligned slots with negated values") {
    // Aligned slots are indexed by the driving year's calendar, so the
    // mirror of slot (date_a, date_b, d) in the swapped call is
    // (date_b, date_a, -d).
    std::mt19937 rng(23);
    const auto noise = [&rng](Date) {
        return (static_cast<double>(rng() % 2000) - 1000.0) / 5000.0;
    };
    const auto a = series_from(Date(2021, 3, 1), 90, noise);
    const auto b = series_from(Date(2022, 3, 1), 90, noise);
    const HolidayCalendar cal = calendar_of(
        "align 2021-04-02..2021-04-04 2022-04-15..2022-04-17 Easter\n");

    const DifferenceSeries ab = year_difference(a, b, cal);
    const DifferenceSeries ba = year_difference(b, a, cal);
    REQUIRE(ab.slots.size() == ba.slots.size());

    std::map<std::pair<std::int64_t, std::int64_t>, double> forward;
    for (const DifferenceSlot& slot : ab.slots)
        forward[{slot.date_a.serial(), slot.date_b.serial()}] = slot.difference;
    for (const DifferenceSlot& slot : ba.slots) {
        const auto it =
            forward.find({slot.date_b.serial(), slot.date_a.serial()});
        REQUIRE(it != forward.end());
        CHECK(slot.difference == doctest::Approx(-it->second).epsilon(1e-12));
    }
}

TEST_CASE("alignment ranges outside either series are a calendar error") {
    const auto a = series_from(Date(2019, 2, 1), 50, md_value);  // ends Mar 22
    const auto b = series_from(Date(2020, 2, 1), 51, md_value);
    const HolidayCalendar cal = calendar_of(
        "align 2019-04-18..2019-04-20 2020-04-09..2020-04-12 Good Friday\n");
    CHECK_THROWS_AS(year_difference(a, b, cal), Error);

    // A pair for unrelated years is silently ignored.
    const HolidayCalendar other_years = calendar_of(
        "align 2024-04-18..2024-04-20 2025-04-09..2025-04-12 Good Friday\n");
    CHECK(!year_difference(a, b, other_years).slots.empty());
}
