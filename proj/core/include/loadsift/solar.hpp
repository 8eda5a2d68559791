#pragma once

#include <array>

#include "loadsift/date.hpp"
#include "loadsift/timezone.hpp"

namespace loadsift {

/// Observation site. Latitude positive north, longitude positive east.
struct Site {
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    UtcOffset utc_offset;
    double cloud_attenuation = 0.75;

    void validate() const;
};

/**
 * Low-precision solar ephemeris: declination and equation of time as
 * truncated Fourier series of the fractional-year angle, elevation from
 *   sin(alt) = sin(lat) sin(decl) + cos(lat) cos(decl) cos(hour angle).
 * Accuracy is a fraction of a degree, far below the model's noise floor,
 * and the series is valid for years 1950-2100.
 */
double fractional_year_rad(Date utc_date, double utc_hour);
double solar_declination_rad(double fractional_year);
double equation_of_time_minutes(double fractional_year);

/// Local solar noon in fractional UTC hours for the given longitude and day.
double solar_noon_utc_hour(double longitude_deg, Date utc_date);

/// Solar elevation angle in degrees for a UTC instant.
double solar_elevation_deg(double latitude_deg, double longitude_deg,
                           Date utc_date, double utc_hour);

/// Solar elevation angle in degrees for a local civil instant at the site.
double solar_position(const Site& site, Date local_date, double local_hour);

/// Elevation sampled at each local clock hour, mid-hour (00:30 ... 23:30).
struct SolarDay {
    Date date;
    std::array<double, 24> hourly_altitude{};  // degrees
};

SolarDay solar_day(const Site& site, Date date);

/**
 * Effective hours of available daylight: for each hour,
 * clamp(sin(altitude), 0, 1) weighted down by cloud cover,
 *   weight = 1 - cloud_attenuation * cloud.
 * Result is in [0, 24].
 */
double effective_daylight(const SolarDay& solar,
                          const std::array<double, 24>& hourly_cloud,
                          double cloud_attenuation = 0.75);

} // namespace loadsift
