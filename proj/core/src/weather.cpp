#include "loadsift/weather.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "loadsift/csv.hpp"
#include "loadsift/errors.hpp"

namespace loadsift {

namespace {

constexpr const char* kHeader = "timestamp,temp_c,wind_ms,cloud";

std::string slot_string(std::int64_t slot) {
    const Date d = Date::from_serial(slot >= 0 ? slot / 24 : (slot - 23) / 24);
    const int h = static_cast<int>(slot - d.serial() * 24);
    char buf[24];
    std::snprintf(buf, sizeof buf, "%sT%02d:00", d.to_string().c_str(), h);
    return buf;
}

bool parse_timestamp(const std::string& field, Date& date, int& hour,
                     std::string& why) {
    const std::string t = csv::trim(field);
    // ISO-8601 local, minute resolution: YYYY-MM-DDTHH:MM
    if (t.size() != 16 || t[10] != 'T' || t[13] != ':') {
        why = "expected YYYY-MM-DDTHH:MM";
        return false;
    }
    int h = 0, m = 0;
    if (!csv::parse_int(t.substr(11, 2), h) || !csv::parse_int(t.substr(14, 2), m)) {
        why = "unreadable time of day";
        return false;
    }
    if (h < 0 || h > 23) {
        why = "hour out of range";
        return false;
    }
    if (m != 0) {
        why = "timestamps must be on the hour";
        return false;
    }
    try {
        date = Date::parse(t.substr(0, 10));
    } catch (const Error& e) {
        why = e.what();
        return false;
    }
    hour = h;
    return true;
}

} // namespace

WeatherParseResult parse_weather(std::istream& in, const WeatherFormat& format) {
    WeatherParseResult result;
    std::string line;
    if (!std::getline(in, line)) return result;  // empty input -> empty list
    if (csv::trim(line) != kHeader)
        fail("format-error", "weather CSV header must be '" +
                                 std::string(kHeader) + "', got '" +
                                 csv::trim(line) + "'");

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) continue;
        const auto fields = csv::split(line);
        if (fields.size() != 4) {
            result.issues.push_back({line_no, "expected 4 fields, got " +
                                                  std::to_string(fields.size())});
            continue;
        }

        WeatherSample s;
        std::string why;
        if (!parse_timestamp(fields[0], s.date, s.hour, why)) {
            result.issues.push_back({line_no, "bad timestamp: " + why});
            continue;
        }

        bool row_ok = true;
        const auto read_field = [&](const std::string& field, const char* name,
                                    std::optional<double>& out) {
            const std::string t = csv::trim(field);
            if (t.empty()) return;  // missing value
            double v = 0.0;
            if (!csv::parse_double(t, v)) {
                result.issues.push_back(
                    {line_no, std::string("unreadable ") + name + " '" + t + "'"});
                row_ok = false;
                return;
            }
            out = v;
        };
        read_field(fields[1], "temp_c", s.temperature);
        read_field(fields[2], "wind_ms", s.wind_speed);
        read_field(fields[3], "cloud", s.cloud_cover);
        if (!row_ok) continue;

        if (s.wind_speed && *s.wind_speed < 0.0)
            fail("validation-error",
                 "row " + std::to_string(line_no) + ": wind_ms " +
                     csv::format_double(*s.wind_speed) + " is negative");
        if (s.cloud_cover) {
            if (format.cloud_in_oktas) {
                const double oktas = *s.cloud_cover;
                if (oktas < 0.0 || oktas > 9.0)
                    fail("validation-error",
                         "row " + std::to_string(line_no) + ": cloud oktas " +
                             csv::format_double(oktas) + " outside [0, 9]");
                s.cloud_cover = std::min(oktas / 8.0, 1.0);
            } else if (*s.cloud_cover < 0.0 || *s.cloud_cover > 1.0) {
                fail("validation-error",
                     "row " + std::to_string(line_no) + ": cloud " +
                         csv::format_double(*s.cloud_cover) + " outside [0, 1]");
            }
        }
        result.samples.push_back(s);
    }

    std::sort(result.samples.begin(), result.samples.end(),
              [](const WeatherSample& a, const WeatherSample& b) {
                  return a.slot() < b.slot();
              });
    for (std::size_t i = 1; i < result.samples.size(); ++i)
        if (result.samples[i].slot() == result.samples[i - 1].slot())
            fail("validation-error", "duplicate timestamp " +
                                         slot_string(result.samples[i].slot()));
    return result;
}

WeatherParseResult parse_weather_file(const std::string& path,
                                      const WeatherFormat& format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("weather-file-not-found", path);
    return parse_weather(in, format);
}

namespace {

// One field's view over the hourly grid: fetch an optional value and store a
// filled value back with its provenance flag.
struct FieldAccess {
    const char* name;
    std::optional<double> WeatherSample::* value;
    bool WeatherSample::* filled;
};

constexpr std::array<FieldAccess, 3> kFields = {{
    {"temp_c", &WeatherSample::temperature, &WeatherSample::temperature_filled},
    {"wind_ms", &WeatherSample::wind_speed, &WeatherSample::wind_filled},
    {"cloud", &WeatherSample::cloud_cover, &WeatherSample::cloud_filled},
}};

} // namespace

std::vector<WeatherSample> fill_weather_gaps(std::vector<WeatherSample> samples,
                                             int max_gap_hours) {
    if (samples.empty()) return samples;
    if (max_gap_hours < 1) fail("parameter-error", "max_gap_hours must be >= 1");

    const std::int64_t first = samples.front().slot();
    const std::int64_t last = samples.back().slot();
    const std::size_t n = static_cast<std::size_t>(last - first + 1);

    // Expand to the full hourly grid; absent rows become all-missing samples.
    std::vector<WeatherSample> grid(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t slot = first + static_cast<std::int64_t>(i);
        grid[i].date = Date::from_serial(slot >= 0 ? slot / 24 : (slot - 23) / 24);
        grid[i].hour = static_cast<int>(slot - grid[i].date.serial() * 24);
    }
    for (const WeatherSample& s : samples)
        grid[static_cast<std::size_t>(s.slot() - first)] = s;

    for (const FieldAccess& field : kFields) {
        std::vector<std::size_t> valid;
        for (std::size_t i = 0; i < n; ++i)
            if (grid[i].*(field.value)) valid.push_back(i);
        if (valid.size() < 2)
            fail("validation-error",
                 std::string("gap fill needs at least two valid ") + field.name +
                     " samples, found " + std::to_string(valid.size()));

        const auto check_gap = [&](std::int64_t missing_run, std::size_t from,
                                   std::size_t to) {
            if (missing_run > max_gap_hours)
                fail("gap-too-long",
                     std::string(field.name) + " missing for " +
                         std::to_string(missing_run) + " h (limit " +
                         std::to_string(max_gap_hours) + ") between " +
                         slot_string(first + static_cast<std::int64_t>(from)) +
                         " and " +
                         slot_string(first + static_cast<std::int64_t>(to)));
        };
        check_gap(static_cast<std::int64_t>(valid.front()), 0, valid.front());
        check_gap(static_cast<std::int64_t>(n - 1 - valid.back()), valid.back(),
                  n - 1);
        for (std::size_t k = 1; k < valid.size(); ++k)
            check_gap(static_cast<std::int64_t>(valid[k] - valid[k - 1] - 1),
                      valid[k - 1], valid[k]);

        // Leading and trailing gaps copy the nearest value; interior gaps
        // interpolate linearly in time.
        std::size_t seg = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (grid[i].*(field.value)) continue;
            while (seg + 1 < valid.size() && valid[seg + 1] < i) ++seg;
            double v = 0.0;
            if (i < valid.front()) {
                v = *(grid[valid.front()].*(field.value));
            } else if (i > valid.back()) {
                v = *(grid[valid.back()].*(field.value));
            } else {
                const std::size_t lo = valid[seg];
                const std::size_t hi = valid[seg + 1];
                const double t = static_cast<double>(i - lo) /
                                 static_cast<double>(hi - lo);
                v = *(grid[lo].*(field.value)) * (1.0 - t) +
                    *(grid[hi].*(field.value)) * t;
            }
            grid[i].*(field.value) = v;
            grid[i].*(field.filled) = true;
        }
    }
    return grid;
}

DailyWeatherResult daily_weather(const std::vector<WeatherSample>& samples) {
    DailyWeatherResult result;
    std::map<std::int64_t, std::array<const WeatherSample*, 24>> by_day;
    for (const WeatherSample& s : samples) {
        if (!s.complete())
            fail("validation-error",
                 "daily aggregation requires gap-filled samples; " +
                     slot_string(s.slot()) + " has missing fields");
        by_day[s.date.serial()][static_cast<std::size_t>(s.hour)] = &s;
    }

    for (const auto& [serial, hours] : by_day) {
        int present = 0;
        for (const WeatherSample* p : hours) present += p != nullptr;
        if (present < 24) {
            result.warnings.push_back(
                "dropped partial day " + Date::from_serial(serial).to_string() +
                " (" + std::to_string(present) + " of 24 hours)");
            continue;
        }
        DailyWeather day;
        day.date = Date::from_serial(serial);
        double temp_sum = 0.0;
        double wind_sq_sum = 0.0;
        for (std::size_t h = 0; h < 24; ++h) {
            temp_sum += *hours[h]->temperature;
            wind_sq_sum += *hours[h]->wind_speed * *hours[h]->wind_speed;
            day.hourly_cloud[h] = *hours[h]->cloud_cover;
        }
        day.mean_temperature = temp_sum / 24.0;
        day.mean_sq_wind = wind_sq_sum / 24.0;
        result.days.push_back(day);
    }
    return result;
}

void write_weather_csv(std::ostream& out, const std::vector<WeatherSample>& samples) {
    out << kHeader << '\n';
    for (const WeatherSample& s : samples) {
        out << slot_string(s.slot()) << ',';
        if (s.temperature) out << csv::format_double(*s.temperature);
        out << ',';
        if (s.wind_speed) out << csv::format_double(*s.wind_speed);
        out << ',';
        if (s.cloud_cover) out << csv::format_double(*s.cloud_cover);
        out << '\n';
    }
}

} // namespace loadsift
