#include "loadsift/solar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "loadsift/csv.hpp"
#include "loadsift/errors.hpp"

namespace loadsift {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegToRad = kPi / 180.0;
constexpr double kRadToDeg = 180.0 / kPi;
constexpr int kMinYear = 1950;
constexpr int kMaxYear = 2100;

void check_instant(Date utc_date) {
    const int y = utc_date.year();
    if (y < kMinYear || y > kMaxYear)
        fail("domain-error", "instant " + utc_date.to_string() +
                                 " outside the ephemeris validity range " +
                                 std::to_string(kMinYear) + "-" +
                                 std::to_string(kMaxYear));
}

} // namespace

void Site::validate() const {
    if (latitude_deg < -90.0 || latitude_deg > 90.0)
        fail("config-error", "latitude " + csv::format_double(latitude_deg) +
                                 " outside [-90, 90]");
    if (longitude_deg < -180.0 || longitude_deg > 180.0)
        fail("config-error", "longitude " + csv::format_double(longitude_deg) +
                                 " outside [-180, 180]");
    if (cloud_attenuation < 0.0 || cloud_attenuation > 1.0)
        fail("config-error",
             "cloud_attenuation " + csv::format_double(cloud_attenuation) +
                 " outside [0, 1]");
}

double fractional_year_rad(Date utc_date, double utc_hour) {
    return 2.0 * kPi / 365.0 *
           (utc_date.day_of_year() - 1 + (utc_hour - 12.0) / 24.0);
}

double solar_declination_rad(double g) {
    return 0.006918 - 0.399912 * std::cos(g) + 0.070257 * std::sin(g) -
           0.006758 * std::cos(2.0 * g) + 0.000907 * std::sin(2.0 * g) -
           0.002697 * std::cos(3.0 * g) + 0.001480 * std::sin(3.0 * g);
}

double equation_of_time_minutes(double g) {
    return 229.18 * (0.000075 + 0.001868 * std::cos(g) -
                     0.032077 * std::sin(g) - 0.014615 * std::cos(2.0 * g) -
                     0.040849 * std::sin(2.0 * g));
}

double solar_noon_utc_hour(double longitude_deg, Date utc_date) {
    check_instant(utc_date);
    const double g = fractional_year_rad(utc_date, 12.0);
    return (720.0 - 4.0 * longitude_deg - equation_of_time_minutes(g)) / 60.0;
}

double solar_elevation_deg(double latitude_deg, double longitude_deg,
                           Date utc_date, double utc_hour) {
    check_instant(utc_date);
    const double g = fractional_year_rad(utc_date, utc_hour);
    const double decl = solar_declination_rad(g);
    const double eqtime = equation_of_time_minutes(g);

    // True solar time in minutes, then the hour angle.
    const double tst = utc_hour * 60.0 + eqtime + 4.0 * longitude_deg;
    const double hour_angle_rad = (tst / 4.0 - 180.0) * kDegToRad;

    const double lat = latitude_deg * kDegToRad;
    const double sin_alt = std::sin(lat) * std::sin(decl) +
                           std::cos(lat) * std::cos(decl) *
                               std::cos(hour_angle_rad);
    return std::asin(std::clamp(sin_alt, -1.0, 1.0)) * kRadToDeg;
}

double solar_position(const Site& site, Date local_date, double local_hour) {
    const int offset = site.utc_offset.offset_minutes(local_date, local_hour);
    double total_min = static_cast<double>(local_date.serial()) * 1440.0 +
                       local_hour * 60.0 - static_cast<double>(offset);
    const std::int64_t day = static_cast<std::int64_t>(
        std::floor(total_min / 1440.0));
    const double utc_hour = (total_min - static_cast<double>(day) * 1440.0) / 60.0;
    return solar_elevation_deg(site.latitude_deg, site.longitude_deg,
                               Date::from_serial(day), utc_hour);
}

SolarDay solar_day(const Site& site, Date date) {
    SolarDay day;
    day.date = date;
    for (int h = 0; h < 24; ++h)
        day.hourly_altitude[static_cast<std::size_t>(h)] =
            solar_position(site, date, h + 0.5);
    return day;
}

double effective_daylight(const SolarDay& solar,
                          const std::array<double, 24>& hourly_cloud,
                          double cloud_attenuation) {
    if (cloud_attenuation < 0.0 || cloud_attenuation > 1.0)
        fail("parameter-error",
             "cloud_attenuation " + csv::format_double(cloud_attenuation) +
                 " outside [0, 1]");
    double hours = 0.0;
    for (std::size_t h = 0; h < 24; ++h) {
        const double cloud = hourly_cloud[h];
        if (cloud < 0.0 || cloud > 1.0)
            fail("validation-error", "cloud fraction " +
                                         csv::format_double(cloud) +
                                         " outside [0, 1] at hour " +
                                         std::to_string(h));
        const double sun = std::clamp(
            std::sin(solar.hourly_altitude[h] * kDegToRad), 0.0, 1.0);
        hours += sun * (1.0 - cloud_attenuation * cloud);
    }
    return hours;
}

} // namespace loadsift
