#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "loadsift/consumption.hpp"
#include "loadsift/date.hpp"
#include "loadsift/features.hpp"
#include "loadsift/solar.hpp"
#include "loadsift/weather.hpp"

namespace loadsift {

/// A step change in demand starting at `start`: the whole level is
/// multiplied by `step_factor` and the weekly cycle's amplitude is
/// additionally damped towards its mean by `weekly_damping`.
struct Intervention {
    Date start;
    double step_factor = 1.0;     // > 0
    double weekly_damping = 1.0;  // in (0, 1]
};

/**
 * Fully seeded synthetic dataset description. The generated consumption is
 * an exact linear combination of the pipeline's own factors with known
 * coefficients, multiplicative Gaussian noise, and optional interventions,
 * so every downstream estimate can be checked against ground truth.
 */
struct ScenarioSpec {
    std::string region = "synthville";
    ConsumerClass consumer_class = ConsumerClass::business;
    Site site;
    Date start;
    int days = 0;
    std::array<double, kFactorCount> true_coefficients{};
    double noise_sigma = 0.0;  // fraction of the day's model value
    std::vector<Intervention> interventions;
    std::uint64_t seed = 0;

    DateRange span() const {
        return DateRange(start, start + static_cast<std::int64_t>(days) - 1);
    }
    void validate() const;

    /// Reads the JSON scenario file.
    static ScenarioSpec load_file(const std::string& path);
    static ScenarioSpec load_json_text(const std::string& text,
                                       const std::string& origin);
};

/// Hourly weather over the span: a seasonal temperature curve with a diurnal
/// swing, autocorrelated wind, and seasonally biased cloud cover. All
/// stochastic terms scale with noise_sigma and are reproducible from the
/// seed alone.
std::vector<WeatherSample> generate_weather(const ScenarioSpec& spec);

/// c_i = interventions_i x (damped factor combination) x (1 + noise).
ConsumptionSeries generate_consumption(const ScenarioSpec& spec,
                                       const FeatureMatrix& features);

} // namespace loadsift
