#include "loadsift/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <json.hpp>

#include "loadsift/csv.hpp"
#include "loadsift/errors.hpp"
#include "loadsift/io.hpp"

namespace loadsift {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Explicit transforms on top of mt19937_64 keep the streams identical across
// standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // (0, 1)
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(kTwoPi * u2);
        have_spare_ = true;
        return r * std::cos(kTwoPi * u2);
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

constexpr std::uint64_t kConsumptionStream = 0x9e3779b97f4a7c15ULL;

} // namespace

void ScenarioSpec::validate() const {
    site.validate();
    if (days < 1)
        fail("config-error", "scenario must span at least one day");
    if (noise_sigma < 0.0)
        fail("config-error", "noise_sigma must be >= 0");
    for (const Intervention& iv : interventions) {
        if (!(iv.step_factor > 0.0))
            fail("config-error", "intervention step factor must be > 0, got " +
                                     csv::format_double(iv.step_factor));
        if (!(iv.weekly_damping > 0.0) || iv.weekly_damping > 1.0)
            fail("config-error",
                 "intervention weekly damping must be in (0, 1], got " +
                     csv::format_double(iv.weekly_damping));
    }
}

std::vector<WeatherSample> generate_weather(const ScenarioSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);

    std::vector<WeatherSample> samples;
    samples.reserve(static_cast<std::size_t>(spec.days) * 24);

    // Besides the annual cycle, each field carries deterministic
    // synoptic-scale oscillations (4-27 day periods, evaluated in continuous
    // time so hourly steps stay small). Realistic day-to-day swings keep the
    // derived factor columns well conditioned inside any 30-day training
    // window even at zero noise, where a constant wind would make the
    // wind-loss column an exact multiple of the thermal one.
    double wind_ar = 0.0;
    for (int d = 0; d < spec.days; ++d) {
        const Date date = spec.start + d;
        for (int h = 0; h < 24; ++h) {
            const double t = date.day_of_year() + h / 24.0;
            const double season = std::cos(kTwoPi * (t - 197.0) / 365.25);
            WeatherSample s;
            s.date = date;
            s.hour = h;

            s.temperature = 5.5 + 11.0 * season +
                            4.0 * std::cos(kTwoPi * t / 13.7) +
                            2.5 * std::cos(kTwoPi * t / 5.3 + 1.7) +
                            2.5 * std::cos(kTwoPi * (h - 15) / 24.0) +
                            200.0 * spec.noise_sigma * rng.gauss();

            const double wind_base = 4.5 +
                                     1.5 * std::cos(kTwoPi * (t - 40.0) / 365.25) +
                                     1.2 * std::cos(kTwoPi * t / 27.3 + 0.9) +
                                     0.8 * std::cos(kTwoPi * t / 6.1 + 2.3) +
                                     0.8 * std::sin(kTwoPi * (h - 13) / 24.0);
            wind_ar = 0.9 * wind_ar + 100.0 * spec.noise_sigma * rng.gauss();
            s.wind_speed = std::clamp(wind_base + wind_ar, 0.0, 30.0);

            const double cloud_base = 0.55 - 0.20 * season +
                                      0.30 * std::cos(kTwoPi * t / 9.3) +
                                      0.25 * std::cos(kTwoPi * t / 4.1 + 0.7);
            s.cloud_cover = std::clamp(
                cloud_base + 80.0 * spec.noise_sigma * (rng.uniform() - 0.5),
                0.0, 1.0);
            samples.push_back(s);
        }
    }
    return samples;
}

ConsumptionSeries generate_consumption(const ScenarioSpec& spec,
                                       const FeatureMatrix& features) {
    spec.validate();
    if (!features.index_of(spec.span().first) ||
        !features.index_of(spec.span().last))
        fail("coverage-error", "features cover " + features.range().to_string() +
                                   ", scenario spans " + spec.span().to_string());

    double weekday_mean = 0.0;
    for (std::size_t i = 0; i < 7; ++i)
        weekday_mean += spec.true_coefficients[i];
    weekday_mean /= 7.0;

    Rng rng(spec.seed ^ kConsumptionStream);
    ConsumptionSeries series;
    series.region = spec.region;
    series.consumer_class = spec.consumer_class;
    series.start_date = spec.start;
    series.values.reserve(static_cast<std::size_t>(spec.days));

    const std::size_t f0 = *features.index_of(spec.start);
    for (int d = 0; d < spec.days; ++d) {
        const Date date = spec.start + d;
        double step = 1.0;
        double damping = 1.0;
        for (const Intervention& iv : spec.interventions)
            if (date >= iv.start) {
                step *= iv.step_factor;
                damping *= iv.weekly_damping;
            }

        const FeatureRow& row = features.rows[f0 + static_cast<std::size_t>(d)];
        double weekday_part = 0.0;
        for (std::size_t mu = 0; mu < 7; ++mu)
            weekday_part += spec.true_coefficients[mu] * row[mu];
        double rest = 0.0;
        for (std::size_t mu = 7; mu < kFactorCount; ++mu)
            rest += spec.true_coefficients[mu] * row[mu];

        // Damping shrinks the weekly cycle towards its mean level without
        // moving that level; the step factor then scales everything.
        const double base =
            weekday_mean + damping * (weekday_part - weekday_mean) + rest;
        const double noise = 1.0 + spec.noise_sigma * rng.gauss();
        const double value = step * base * noise;
        if (value < 0.0)
            fail("generation-error",
                 "generated consumption is negative on " + date.to_string() +
                     "; scenario coefficients or noise are pathological");
        series.values.push_back(value);
    }
    return series;
}

namespace {

Site site_from_json(const nlohmann::json& j, const std::string& origin) {
    Site site;
    site.latitude_deg = j.at("latitude").get<double>();
    site.longitude_deg = j.at("longitude").get<double>();
    site.utc_offset = UtcOffset::parse(j.at("utc_offset").get<std::string>());
    if (j.contains("cloud_attenuation"))
        site.cloud_attenuation = j.at("cloud_attenuation").get<double>();
    for (const auto& [key, value] : j.items())
        if (key != "latitude" && key != "longitude" && key != "utc_offset" &&
            key != "cloud_attenuation")
            fail("config-error", origin + ": unknown site key '" + key + "'");
    return site;
}

} // namespace

ScenarioSpec ScenarioSpec::load_json_text(const std::string& text,
                                          const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail("format-error", origin + ": " + e.what());
    }

    ScenarioSpec spec;
    try {
        static constexpr const char* known[] = {
            "region", "class", "site", "start", "days", "true_coefficients",
            "noise_sigma", "interventions", "seed"};
        for (const auto& [key, value] : j.items())
            if (std::find(std::begin(known), std::end(known), key) ==
                std::end(known))
                fail("config-error", origin + ": unknown scenario key '" + key + "'");

        if (j.contains("region")) spec.region = j.at("region").get<std::string>();
        if (j.contains("class"))
            spec.consumer_class =
                consumer_class_from_string(j.at("class").get<std::string>());
        spec.site = site_from_json(j.at("site"), origin);
        spec.start = Date::parse(j.at("start").get<std::string>());
        spec.days = j.at("days").get<int>();
        const auto& coeffs = j.at("true_coefficients");
        if (!coeffs.is_array() || coeffs.size() != kFactorCount)
            fail("config-error", origin + ": true_coefficients must hold " +
                                     std::to_string(kFactorCount) + " numbers");
        for (std::size_t i = 0; i < kFactorCount; ++i)
            spec.true_coefficients[i] = coeffs[i].get<double>();
        if (j.contains("noise_sigma"))
            spec.noise_sigma = j.at("noise_sigma").get<double>();
        if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("interventions")) {
            for (const auto& item : j.at("interventions")) {
                Intervention iv;
                iv.start = Date::parse(item.at("start").get<std::string>());
                iv.step_factor = item.at("step").get<double>();
                if (item.contains("weekly_damping"))
                    iv.weekly_damping = item.at("weekly_damping").get<double>();
                spec.interventions.push_back(iv);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        fail("config-error", origin + ": " + e.what());
    }
    spec.validate();
    return spec;
}

ScenarioSpec ScenarioSpec::load_file(const std::string& path) {
    return load_json_text(io::read_text_file(path, "scenario-file-not-found"),
                          path);
}

} // namespace loadsift
