#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "loadsift/date.hpp"

namespace loadsift {

/**
 * One hourly meteorological observation in local civil time. Fields may be
 * missing straight after parsing; `fill_weather_gaps` produces complete
 * samples and flags everything it synthesised.
 */
struct WeatherSample {
    Date date;
    int hour = 0;

    std::optional<double> temperature;  // degrees Celsius
    std::optional<double> wind_speed;   // m/s, >= 0
    std::optional<double> cloud_cover;  // fraction of sky in [0, 1]

    bool temperature_filled = false;
    bool wind_filled = false;
    bool cloud_filled = false;

    /// Hours since epoch; the hourly grid key.
    std::int64_t slot() const { return date.serial() * 24 + hour; }
    bool complete() const {
        return temperature && wind_speed && cloud_cover;
    }
};

struct WeatherFormat {
    /// When set, the cloud column is read as oktas 0-8 and divided by 8;
    /// 9 (sky obscured) maps to 1.0.
    bool cloud_in_oktas = false;
};

struct WeatherParseIssue {
    int line;  // 1-based, header is line 1
    std::string message;
};

struct WeatherParseResult {
    std::vector<WeatherSample> samples;  // sorted by timestamp
    std::vector<WeatherParseIssue> issues;
};

/// Parses the weather CSV (`timestamp,temp_c,wind_ms,cloud`). Empty fields
/// are missing values; rows that cannot be parsed are skipped and reported
/// with their line number. Out-of-range cloud or wind values abort with a
/// validation error naming the row.
WeatherParseResult parse_weather(std::istream& in, const WeatherFormat& format = {});
WeatherParseResult parse_weather_file(const std::string& path,
                                      const WeatherFormat& format = {});

/**
 * Fills every hourly slot between the first and last observation. Missing
 * values are linear interpolations between the nearest valid neighbours of
 * the same field; gaps at either edge copy the nearest valid value. Original
 * samples are never altered, and filled values carry provenance flags.
 * A per-field gap longer than `max_gap_hours` aborts naming the span.
 */
std::vector<WeatherSample> fill_weather_gaps(std::vector<WeatherSample> samples,
                                             int max_gap_hours = 72);

/// Per-day aggregate the model consumes.
struct DailyWeather {
    Date date;
    double mean_temperature = 0.0;  // arithmetic mean of 24 hourly readings
    double mean_sq_wind = 0.0;      // mean of squared hourly wind speeds
    std::array<double, 24> hourly_cloud{};
};

struct DailyWeatherResult {
    std::vector<DailyWeather> days;
    std::vector<std::string> warnings;  // dropped partial edge days
};

/// Collapses gap-filled hourly samples into whole days. Days without all 24
/// hours (series edges) are dropped with a warning.
DailyWeatherResult daily_weather(const std::vector<WeatherSample>& samples);

void write_weather_csv(std::ostream& out, const std::vector<WeatherSample>& samples);

} // namespace loadsift
