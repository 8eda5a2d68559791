#pragma once

#include <optional>
#include <string>

#include "loadsift/consumption.hpp"
#include "loadsift/date.hpp"
#include "loadsift/solar.hpp"

namespace loadsift {

/**
 * One analysis run: where the data lives, which (region, class) series to
 * model, the training window, and the optional onset/rescaling setup.
 * Loaded from a JSON document; every value can be overridden by the CLI
 * flag of the same name.
 */
struct RunConfig {
    Site site;

    std::string weather_path;
    std::string consumption_path;
    std::string holidays_path;  // optional

    std::string region;
    ConsumerClass consumer_class = ConsumerClass::business;

    std::optional<Date> train_start;
    int train_days = 30;

    std::optional<Date> onset;
    std::optional<DateRange> scale_window;

    std::optional<Date> predict_start;  // default: full feature coverage
    std::optional<Date> predict_end;
    std::optional<DateRange> summary_range;

    std::string out_dir = "out";
    bool dump_features = false;

    double reference_temperature_c = 20.0;
    bool cloud_in_oktas = false;
    int max_gap_hours = 72;
    // Pipeline default is deliberately looser than the operation's 4.0:
    // strong weekly cycles and synoptic weather swings reach deviation/MAD
    // ratios around 10 on perfectly clean series, while genuine meter
    // glitches (zero or doubled days) sit beyond 20.
    int outlier_window_days = 7;
    double outlier_mad_threshold = 16.0;
    double condition_limit = 1e12;

    static RunConfig load_file(const std::string& path);
    static RunConfig load_json_text(const std::string& text,
                                    const std::string& origin);

    /// Structural checks plus referenced-path existence; called by every
    /// command before touching data.
    void validate() const;

    DateRange training_window() const;
};

} // namespace loadsift
