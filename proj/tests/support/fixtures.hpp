#pragma once

// Shared synthetic setups: a Tallinn-like site and a business-profile
// scenario whose consumption is an exact linear combination of the
// pipeline's own factors.

#include <filesystem>
#include <string>

#include "loadsift/commands.hpp"
#include "loadsift/synth.hpp"

namespace fixtures {

inline loadsift::Site tallinn_site() {
    loadsift::Site site;
    site.latitude_deg = 59.41;
    site.longitude_deg = 24.83;
    site.utc_offset = loadsift::UtcOffset::eu_rule(120);
    site.cloud_attenuation = 0.75;
    return site;
}

/// Weekday levels with a pronounced weekly cycle, heating demand, daylight
/// savings, and a wind-loss term; all in kWh/day at county-feeder scale.
/// The weekday spread is deliberately wide enough that the windowed MAD
/// outlier rule stays quiet on clean generated data.
inline std::array<double, loadsift::kFactorCount> business_coefficients() {
    return {9100.0, 9900.0, 10200.0, 9700.0, 9300.0, 8700.0, 8300.0,
            55.0, -120.0, 0.8};
}

inline loadsift::ScenarioSpec base_scenario(int days, std::uint64_t seed,
                                            double noise_sigma) {
    loadsift::ScenarioSpec spec;
    spec.region = "synthville";
    spec.consumer_class = loadsift::ConsumerClass::business;
    spec.site = tallinn_site();
    spec.start = loadsift::Date(2019, 1, 1);
    spec.days = days;
    spec.true_coefficients = business_coefficients();
    spec.noise_sigma = noise_sigma;
    spec.seed = seed;
    return spec;
}

/// Thirty days starting with the scenario's second month. For a January 1
/// start that is February, where daylight changes fast enough to identify
/// the daylight coefficient; midwinter windows are the regime the model
/// itself warns about.
inline loadsift::DateRange training_window(const loadsift::ScenarioSpec& spec) {
    return loadsift::DateRange(spec.start + 31, spec.start + 60);
}

struct Dataset {
    loadsift::ScenarioSpec spec;
    std::vector<loadsift::DailyWeather> daily;
    std::vector<loadsift::SolarDay> solar;
    loadsift::FeatureMatrix features;
    loadsift::ConsumptionSeries consumption;
};

/// Runs the scenario through the real ingest/solar/feature stages, then
/// generates consumption from the resulting factor matrix.
inline Dataset make_dataset(const loadsift::ScenarioSpec& spec) {
    Dataset data;
    data.spec = spec;
    const auto weather = loadsift::generate_weather(spec);
    data.daily = loadsift::daily_weather(weather).days;
    for (loadsift::Date d = spec.span().first; d <= spec.span().last; ++d)
        data.solar.push_back(loadsift::solar_day(spec.site, d));
    loadsift::FeatureOptions options;
    options.cloud_attenuation = spec.site.cloud_attenuation;
    data.features =
        loadsift::build_features(spec.span(), data.daily, data.solar, options);
    data.consumption = loadsift::generate_consumption(spec, data.features);
    return data;
}

/// Fresh scratch directory under the test binary's working directory.
class TempDir {
public:
    explicit TempDir(const std::string& name)
        : path_(std::filesystem::path("scratch") / name) {
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string str() const { return path_.string(); }
    std::filesystem::path path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace fixtures
