#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "loadsift/consumption.hpp"
#include "loadsift/errors.hpp"

using namespace loadsift;

namespace {

std::vector<ConsumptionRecord> parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_consumption(in);
}

ConsumptionSeries series_of(std::vector<double> values,
                            Date start = Date(2020, 1, 1)) {
    ConsumptionSeries s;
    s.region = "testland";
    s.consumer_class = ConsumerClass::business;
    s.start_date = start;
    s.values = std::move(values);
    return s;
}

} // namespace

TEST_CASE("consumption parsing and class names") {
    const auto records = parse_text(
        "date,region,class,kwh\n"
        "2020-03-12,harju,business,120.5\n"
        "2020-03-12,harju,private,80.25\n");
    REQUIRE(records.size() == 2);
    CHECK(records[0].consumer_class == ConsumerClass::business);
    CHECK(records[1].consumer_class == ConsumerClass::household);
    CHECK(records[1].energy_kwh == doctest::Approx(80.25));

    CHECK_THROWS_AS(parse_text("date,region,class,kwh\n"
                               "2020-03-12,harju,industrial,10\n"),
                    Error);
    CHECK_THROWS_AS(parse_text("date,region,class,kwh\n"
                               "2020-03-12,harju,business,-1\n"),
                    Error);
    CHECK_THROWS_AS(parse_text("kwh,region\n"), Error);
}

TEST_CASE("aggregation sums meters within a day and filters by class") {
    const auto records = parse_text(
        "date,region,class,kwh\n"
        "2020-03-12,harju,business,3\n"
        "2020-03-12,harju,business,4\n"
        "2020-03-12,harju,private,100\n"
        "2020-03-13,harju,business,5\n"
        "2020-03-12,saare,business,7\n");
    const ConsumptionSeries s =
        aggregate(records, "harju", ConsumerClass::business);
    REQUIRE(s.values.size() == 2);
    CHECK(s.values[0] == doctest::Approx(7.0));  // 3 + 4
    CHECK(s.values[1] == doctest::Approx(5.0));
    CHECK(s.start_date == Date(2020, 3, 12));
}

TEST_CASE("aggregation enforces contiguity across the leap day") {
    // 2020 is a leap year: Feb 28 .. Mar 1 is three days, so a missing
    // Feb 29 is a hole.
    const auto records = parse_text(
        "date,region,class,kwh\n"
        "2020-02-28,harju,business,1\n"
        "2020-03-01,harju,business,2\n");
    try {
        aggregate(records, "harju", ConsumerClass::business);
        FAIL("expected contiguity error");
    } catch (const Error& e) {
        CHECK(e.cause() == "contiguity-error");
        CHECK(std::string(e.what()).find("2020-02-29") != std::string::npos);
    }

    const auto complete = parse_text(
        "date,region,class,kwh\n"
        "2020-02-28,harju,business,1\n"
        "2020-02-29,harju,business,3\n"
        "2020-03-01,harju,business,2\n");
    CHECK(aggregate(complete, "harju", ConsumerClass::business).values.size() ==
          3);
}

TEST_CASE("empty selection is a no-data error") {
    const auto records = parse_text(
        "date,region,class,kwh\n"
        "2020-03-12,harju,business,3\n");
    CHECK_THROWS_WITH_AS(aggregate(records, "saare", ConsumerClass::business),
                         doctest::Contains("no consumption records"), Error);
}

TEST_CASE("aggregation is order-independent and sum-preserving") {
    std::mt19937 rng(7);
    std::vector<ConsumptionRecord> records;
    double total = 0.0;
    for (int day = 0; day < 20; ++day)
        for (int meter = 0; meter < 5; ++meter) {
            const double kwh =
                static_cast<double>((rng() % 1000)) / 10.0;
            records.push_back({Date(2020, 1, 1) + day, "harju",
                               ConsumerClass::business, kwh});
            total += kwh;
        }
    const ConsumptionSeries a =
        aggregate(records, "harju", ConsumerClass::business);
    std::shuffle(records.begin(), records.end(), rng);
    const ConsumptionSeries b =
        aggregate(records, "harju", ConsumerClass::business);
    CHECK(a.values == b.values);

    double aggregated = 0.0;
    for (double v : a.values) aggregated += v;
    CHECK(aggregated == doctest::Approx(total).epsilon(1e-12));
}

TEST_CASE("outlier repair replaces a dead day in a flat series") {
    std::vector<double> values(15, 100.0);
    values[7] = 0.0;
    const RepairResult r = repair_consumption_outliers(series_of(values));
    CHECK(r.series.values[7] == doctest::Approx(100.0));
    REQUIRE(r.log.size() == 1);
    CHECK(r.log[0].date == Date(2020, 1, 8));
    CHECK(r.log[0].old_value == doctest::Approx(0.0));
    CHECK(r.log[0].new_value == doctest::Approx(100.0));
}

TEST_CASE("clean series pass through bit-identical with an empty log") {
    const ConsumptionSeries s = series_of({100, 101, 99, 100, 102, 98, 100,
                                           101, 99, 100, 100, 101});
    const RepairResult r = repair_consumption_outliers(s);
    CHECK(r.log.empty());
    CHECK(r.series.values == s.values);
}

TEST_CASE("windowed median/MAD flags a single spike") {
    // Window around the 500: the six neighbours are all 100, so the median
    // is 100 and the MAD is 0; |500 - 100| > 4 * 0 flags it, and the
    // neighbour mean puts 100 back.
    const ConsumptionSeries s =
        series_of({100, 100, 100, 500, 100, 100, 100, 100});
    const RepairResult r = repair_consumption_outliers(s);
    REQUIRE(r.log.size() == 1);
    CHECK(r.log[0].old_value == doctest::Approx(500.0));
    CHECK(r.series.values[3] == doctest::Approx(100.0));
    for (std::size_t i = 0; i < s.values.size(); ++i)
        if (i != 3) CHECK(r.series.values[i] == s.values[i]);
}

TEST_CASE("repair refuses when more than 10% of days are flagged") {
    std::vector<double> values(20, 100.0);
    values[5] = 1000.0;
    values[10] = 1200.0;
    values[15] = 900.0;  // 3 of 20 = 15%
    CHECK_THROWS_WITH_AS(repair_consumption_outliers(series_of(values)),
                         doctest::Contains("10%"), Error);
}

TEST_CASE("repair parameter checks") {
    const ConsumptionSeries s = series_of(std::vector<double>(10, 1.0));
    CHECK_THROWS_AS(repair_consumption_outliers(s, 4), Error);   // even window
    CHECK_THROWS_AS(repair_consumption_outliers(s, 11), Error);  // too long
    CHECK_THROWS_AS(repair_consumption_outliers(s, 7, 0.0), Error);
}
