#include "loadsift/consumption.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

#include "loadsift/csv.hpp"
#include "loadsift/errors.hpp"

namespace loadsift {

namespace {
constexpr const char* kHeader = "date,region,class,kwh";
}

std::string to_string(ConsumerClass cls) {
    return cls == ConsumerClass::business ? "business" : "private";
}

ConsumerClass consumer_class_from_string(std::string_view text) {
    if (text == "business") return ConsumerClass::business;
    if (text == "private") return ConsumerClass::household;
    fail("validation-error", "consumer class must be 'business' or 'private', got '" +
                                 std::string(text) + "'");
}

std::vector<ConsumptionRecord> parse_consumption(std::istream& in) {
    std::vector<ConsumptionRecord> records;
    std::string line;
    if (!std::getline(in, line)) return records;
    if (csv::trim(line) != kHeader)
        fail("format-error", "consumption CSV header must be '" +
                                 std::string(kHeader) + "', got '" +
                                 csv::trim(line) + "'");

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) continue;
        const auto fields = csv::split(line);
        if (fields.size() != 4)
            fail("format-error", "row " + std::to_string(line_no) +
                                     ": expected 4 fields, got " +
                                     std::to_string(fields.size()));
        ConsumptionRecord r;
        try {
            r.date = Date::parse(csv::trim(fields[0]));
        } catch (const Error& e) {
            fail("format-error",
                 "row " + std::to_string(line_no) + ": " + e.what());
        }
        r.region = csv::trim(fields[1]);
        if (r.region.empty())
            fail("validation-error",
                 "row " + std::to_string(line_no) + ": empty region");
        r.consumer_class = consumer_class_from_string(csv::trim(fields[2]));
        if (!csv::parse_double(fields[3], r.energy_kwh))
            fail("format-error", "row " + std::to_string(line_no) +
                                     ": unreadable kwh '" +
                                     csv::trim(fields[3]) + "'");
        if (r.energy_kwh < 0.0)
            fail("validation-error", "row " + std::to_string(line_no) +
                                         ": kwh " +
                                         csv::format_double(r.energy_kwh) +
                                         " is negative");
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<ConsumptionRecord> parse_consumption_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("consumption-file-not-found", path);
    return parse_consumption(in);
}

ConsumptionSeries aggregate(const std::vector<ConsumptionRecord>& records,
                            std::string_view region, ConsumerClass cls) {
    std::map<std::int64_t, std::vector<double>> per_day;
    for (const ConsumptionRecord& r : records)
        if (r.region == region && r.consumer_class == cls)
            per_day[r.date.serial()].push_back(r.energy_kwh);

    if (per_day.empty())
        fail("no-data", "no consumption records for region '" +
                            std::string(region) + "', class '" +
                            to_string(cls) + "'");

    ConsumptionSeries series;
    series.region = std::string(region);
    series.consumer_class = cls;
    series.start_date = Date::from_serial(per_day.begin()->first);
    const std::int64_t last = per_day.rbegin()->first;

    std::vector<std::string> missing;
    for (std::int64_t s = per_day.begin()->first; s <= last; ++s) {
        const auto it = per_day.find(s);
        if (it == per_day.end()) {
            if (missing.size() < 10)
                missing.push_back(Date::from_serial(s).to_string());
            continue;
        }
        // Summing in sorted order makes the total independent of the input
        // record order, not just up to rounding.
        std::sort(it->second.begin(), it->second.end());
        double sum = 0.0;
        for (double v : it->second) sum += v;
        series.values.push_back(sum);
    }
    if (!missing.empty()) {
        std::string list = missing.front();
        for (std::size_t i = 1; i < missing.size(); ++i) list += ", " + missing[i];
        fail("contiguity-error",
             "missing interior dates for region '" + std::string(region) +
                 "': " + list);
    }
    return series;
}

RepairResult repair_consumption_outliers(const ConsumptionSeries& series,
                                         int window_days, double mad_threshold) {
    const std::size_t n = series.values.size();
    if (window_days < 3 || window_days % 2 == 0)
        fail("parameter-error", "outlier window must be odd and >= 3, got " +
                                    std::to_string(window_days));
    if (mad_threshold <= 0.0)
        fail("parameter-error", "mad threshold must be positive");
    if (n <= static_cast<std::size_t>(window_days))
        fail("parameter-error", "series length " + std::to_string(n) +
                                    " must exceed the outlier window " +
                                    std::to_string(window_days));

    const auto median_of = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const std::size_t m = v.size() / 2;
        return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
    };

    const int half = window_days / 2;
    std::vector<bool> outlier(n, false);
    std::size_t flagged = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> window;
        const std::int64_t lo = static_cast<std::int64_t>(i) - half;
        const std::int64_t hi = static_cast<std::int64_t>(i) + half;
        for (std::int64_t j = lo; j <= hi; ++j) {
            if (j < 0 || j >= static_cast<std::int64_t>(n) ||
                j == static_cast<std::int64_t>(i))
                continue;
            window.push_back(series.values[static_cast<std::size_t>(j)]);
        }
        // Too few neighbours at the very edges to judge reliably.
        if (window.size() < 4) continue;
        const double med = median_of(window);
        std::vector<double> dev;
        dev.reserve(window.size());
        for (double v : window) dev.push_back(std::abs(v - med));
        const double mad = median_of(dev);
        if (std::abs(series.values[i] - med) > mad_threshold * mad) {
            outlier[i] = true;
            ++flagged;
        }
    }

    // A single flagged day is never systematic, whatever the series length.
    if (flagged > 1 && flagged * 10 > n)
        fail("too-many-outliers",
             std::to_string(flagged) + " of " + std::to_string(n) +
                 " days flagged (> 10%); input looks systematically broken");

    RepairResult result;
    result.series = series;
    for (std::size_t i = 0; i < n; ++i) {
        if (!outlier[i]) continue;
        std::optional<double> prev;
        for (std::int64_t j = static_cast<std::int64_t>(i) - 1; j >= 0; --j)
            if (!outlier[static_cast<std::size_t>(j)]) {
                prev = series.values[static_cast<std::size_t>(j)];
                break;
            }
        std::optional<double> next;
        for (std::size_t j = i + 1; j < n; ++j)
            if (!outlier[j]) {
                next = series.values[j];
                break;
            }
        if (!prev && !next)
            fail("too-many-outliers", "no clean neighbours left to repair " +
                                          series.date_at(i).to_string());
        const double repaired = prev && next ? 0.5 * (*prev + *next)
                                             : (prev ? *prev : *next);
        result.log.push_back({series.date_at(i), series.values[i], repaired});
        result.series.values[i] = repaired;
    }
    return result;
}

void write_consumption_csv(std::ostream& out, const ConsumptionSeries& series) {
    out << kHeader << '\n';
    for (std::size_t i = 0; i < series.values.size(); ++i)
        out << series.date_at(i).to_string() << ',' << series.region << ','
            << to_string(series.consumer_class) << ','
            << csv::format_double(series.values[i]) << '\n';
}

} // namespace loadsift
