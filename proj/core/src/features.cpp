#include "loadsift/features.hpp"

#include <cmath>
#include <map>
#include <ostream>

#include "loadsift/csv.hpp"
#include "loadsift/errors.hpp"

namespace loadsift {

std::array<double, 7> weekday_factors(Date date) {
    std::array<double, 7> f{};
    f[static_cast<std::size_t>(date.weekday_index())] = 1.0;
    return f;
}

double thermal_factor(double mean_temperature_c, double reference_c) {
    return std::abs(mean_temperature_c - reference_c);
}

double wind_loss_factor(double mean_sq_wind, double thermal) {
    return mean_sq_wind * thermal;
}

FeatureMatrix FeatureMatrix::slice(const DateRange& span) const {
    if (rows.empty() || !range().contains(span))
        fail("coverage-error", "feature matrix covers " +
                                   (rows.empty() ? std::string("nothing")
                                                 : range().to_string()) +
                                   ", requested " + span.to_string());
    FeatureMatrix out;
    out.start_date = span.first;
    const std::size_t begin = *index_of(span.first);
    out.rows.assign(rows.begin() + static_cast<std::ptrdiff_t>(begin),
                    rows.begin() + static_cast<std::ptrdiff_t>(
                                       begin + static_cast<std::size_t>(span.length())));
    return out;
}

FeatureMatrix build_features(const DateRange& span,
                             const std::vector<DailyWeather>& weather,
                             const std::vector<SolarDay>& solar,
                             const FeatureOptions& options) {
    std::map<std::int64_t, const DailyWeather*> weather_by_day;
    for (const DailyWeather& d : weather) weather_by_day[d.date.serial()] = &d;
    std::map<std::int64_t, const SolarDay*> solar_by_day;
    for (const SolarDay& d : solar) solar_by_day[d.date.serial()] = &d;

    std::string missing;
    int missing_count = 0;
    const auto note_missing = [&](Date d, const char* what) {
        ++missing_count;
        if (missing_count <= 10)
            missing += (missing.empty() ? "" : ", ") + d.to_string() +
                       std::string(" (") + what + ")";
    };

    FeatureMatrix m;
    m.start_date = span.first;
    m.rows.reserve(static_cast<std::size_t>(span.length()));
    for (Date d = span.first; d <= span.last; ++d) {
        const auto w = weather_by_day.find(d.serial());
        const auto s = solar_by_day.find(d.serial());
        if (w == weather_by_day.end()) note_missing(d, "weather");
        if (s == solar_by_day.end()) note_missing(d, "solar");
        if (w == weather_by_day.end() || s == solar_by_day.end()) continue;

        FeatureRow row{};
        const auto wd = weekday_factors(d);
        for (std::size_t i = 0; i < 7; ++i) row[i] = wd[i];
        row[factor_thermal] = thermal_factor(w->second->mean_temperature,
                                             options.reference_temperature_c);
        row[factor_daylight] =
            effective_daylight(*s->second, w->second->hourly_cloud,
                               options.cloud_attenuation);
        row[factor_wind_loss] =
            wind_loss_factor(w->second->mean_sq_wind, row[factor_thermal]);
        m.rows.push_back(row);
    }
    if (missing_count > 0)
        fail("coverage-error",
             std::to_string(missing_count) + " day(s) lack inputs: " + missing +
                 (missing_count > 10 ? ", ..." : ""));
    return m;
}

void write_features_csv(std::ostream& out, const FeatureMatrix& features) {
    out << "date";
    for (const char* name : kFactorNames) out << ',' << name;
    out << '\n';
    for (std::size_t i = 0; i < features.rows.size(); ++i) {
        out << features.date_at(i).to_string();
        for (double v : features.rows[i]) out << ',' << csv::format_double(v);
        out << '\n';
    }
}

} // namespace loadsift
