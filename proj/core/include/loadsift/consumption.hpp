#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loadsift/date.hpp"

namespace loadsift {

enum class ConsumerClass { business, household };

/// Wire names are `business` and `private`.
std::string to_string(ConsumerClass cls);
ConsumerClass consumer_class_from_string(std::string_view text);

struct ConsumptionRecord {
    Date date;
    std::string region;
    ConsumerClass consumer_class = ConsumerClass::business;
    double energy_kwh = 0.0;  // >= 0
};

/// Contiguous daily totals for one (region, consumer class) group.
struct ConsumptionSeries {
    std::string region;
    ConsumerClass consumer_class = ConsumerClass::business;
    Date start_date;
    std::vector<double> values;  // kWh per day

    std::size_t size() const { return values.size(); }
    Date date_at(std::size_t i) const {
        return start_date + static_cast<std::int64_t>(i);
    }
    std::optional<std::size_t> index_of(Date d) const {
        const std::int64_t off = d - start_date;
        if (off < 0 || off >= static_cast<std::int64_t>(values.size()))
            return std::nullopt;
        return static_cast<std::size_t>(off);
    }
    DateRange range() const {
        return DateRange(start_date,
                         start_date + static_cast<std::int64_t>(values.size()) - 1);
    }
};

/// Parses the consumption CSV (`date,region,class,kwh`).
std::vector<ConsumptionRecord> parse_consumption(std::istream& in);
std::vector<ConsumptionRecord> parse_consumption_file(const std::string& path);

/// Sums matching records into one daily series. Interior dates with no
/// records abort with a contiguity error listing them; an empty selection is
/// a no-data error.
ConsumptionSeries aggregate(const std::vector<ConsumptionRecord>& records,
                            std::string_view region, ConsumerClass cls);

struct RepairEntry {
    Date date;
    double old_value = 0.0;
    double new_value = 0.0;
};

struct RepairResult {
    ConsumptionSeries series;
    std::vector<RepairEntry> log;
};

/**
 * Windowed median/MAD outlier repair. A day is an outlier when its absolute
 * deviation from the median of the surrounding `window_days`-day window
 * (self excluded) exceeds `mad_threshold` times that window's MAD. Outliers
 * are replaced with the mean of the nearest non-outlier neighbours on each
 * side. Refuses when more than 10% of days are flagged - that is a systematic
 * data problem, not a handful of bad meters.
 */
RepairResult repair_consumption_outliers(const ConsumptionSeries& series,
                                         int window_days = 7,
                                         double mad_threshold = 4.0);

void write_consumption_csv(std::ostream& out, const ConsumptionSeries& series);

} // namespace loadsift
