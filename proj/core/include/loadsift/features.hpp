#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "loadsift/date.hpp"
#include "loadsift/solar.hpp"
#include "loadsift/weather.hpp"

namespace loadsift {

inline constexpr std::size_t kFactorCount = 10;

/// Fixed column order: seven weekday indicators, then the weather-driven
/// factors. Coefficient dumps and feature exports follow this order.
enum Factor : std::size_t {
    factor_mon = 0,
    factor_tue,
    factor_wed,
    factor_thu,
    factor_fri,
    factor_sat,
    factor_sun,
    factor_thermal,    // |T - reference|
    factor_daylight,   // effective daylight hours
    factor_wind_loss,  // mean squared wind x thermal
};

inline constexpr std::array<const char*, kFactorCount> kFactorNames = {
    "mon", "tue", "wed", "thu", "fri", "sat", "sun",
    "thermal", "daylight", "wind_loss"};

using FeatureRow = std::array<double, kFactorCount>;

/// One-hot weekday indicators, Monday first.
std::array<double, 7> weekday_factors(Date date);

/// Heating/cooling proxy: absolute distance from the reference temperature.
double thermal_factor(double mean_temperature_c, double reference_c = 20.0);

/// Wind-driven heat-loss proxy: mean squared wind speed times the thermal
/// factor.
double wind_loss_factor(double mean_sq_wind, double thermal);

struct FeatureOptions {
    double reference_temperature_c = 20.0;
    double cloud_attenuation = 0.75;
};

struct FeatureMatrix {
    Date start_date;
    std::vector<FeatureRow> rows;

    std::size_t size() const { return rows.size(); }
    Date date_at(std::size_t i) const {
        return start_date + static_cast<std::int64_t>(i);
    }
    std::optional<std::size_t> index_of(Date d) const {
        const std::int64_t off = d - start_date;
        if (off < 0 || off >= static_cast<std::int64_t>(rows.size()))
            return std::nullopt;
        return static_cast<std::size_t>(off);
    }
    DateRange range() const {
        return DateRange(start_date,
                         start_date + static_cast<std::int64_t>(rows.size()) - 1);
    }

    /// Rows covering `span`; a span outside coverage is a coverage error.
    FeatureMatrix slice(const DateRange& span) const;
};

/// One row per day of `span`. Daily weather and solar days must cover every
/// requested date; missing dates abort with a coverage error listing them.
FeatureMatrix build_features(const DateRange& span,
                             const std::vector<DailyWeather>& weather,
                             const std::vector<SolarDay>& solar,
                             const FeatureOptions& options = {});

void write_features_csv(std::ostream& out, const FeatureMatrix& features);

} // namespace loadsift
