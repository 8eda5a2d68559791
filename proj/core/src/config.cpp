#include "loadsift/config.hpp"

#include <algorithm>

#include <json.hpp>

#include "loadsift/errors.hpp"
#include "loadsift/io.hpp"

namespace loadsift {

RunConfig RunConfig::load_json_text(const std::string& text,
                                    const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail("format-error", origin + ": " + e.what());
    }

    RunConfig cfg;
    try {
        static constexpr const char* known[] = {
            "site", "weather", "consumption", "holidays", "region", "class",
            "train_start", "train_days", "onset", "scale_window",
            "predict_start", "predict_end", "summary_range", "out",
            "dump_features", "reference_temperature", "cloud_oktas",
            "max_gap_hours", "outlier_window", "outlier_mad_threshold",
            "condition_limit"};
        for (const auto& [key, value] : j.items())
            if (std::find(std::begin(known), std::end(known), key) ==
                std::end(known))
                fail("config-error", origin + ": unknown key '" + key + "'");

        if (j.contains("site")) {
            const auto& s = j.at("site");
            cfg.site.latitude_deg = s.at("latitude").get<double>();
            cfg.site.longitude_deg = s.at("longitude").get<double>();
            cfg.site.utc_offset =
                UtcOffset::parse(s.at("utc_offset").get<std::string>());
            if (s.contains("cloud_attenuation"))
                cfg.site.cloud_attenuation =
                    s.at("cloud_attenuation").get<double>();
        }
        if (j.contains("weather"))
            cfg.weather_path = j.at("weather").get<std::string>();
        if (j.contains("consumption"))
            cfg.consumption_path = j.at("consumption").get<std::string>();
        if (j.contains("holidays"))
            cfg.holidays_path = j.at("holidays").get<std::string>();
        if (j.contains("region")) cfg.region = j.at("region").get<std::string>();
        if (j.contains("class"))
            cfg.consumer_class =
                consumer_class_from_string(j.at("class").get<std::string>());
        if (j.contains("train_start"))
            cfg.train_start = Date::parse(j.at("train_start").get<std::string>());
        if (j.contains("train_days"))
            cfg.train_days = j.at("train_days").get<int>();
        if (j.contains("onset"))
            cfg.onset = Date::parse(j.at("onset").get<std::string>());
        if (j.contains("scale_window"))
            cfg.scale_window =
                DateRange::parse(j.at("scale_window").get<std::string>());
        if (j.contains("predict_start"))
            cfg.predict_start =
                Date::parse(j.at("predict_start").get<std::string>());
        if (j.contains("predict_end"))
            cfg.predict_end = Date::parse(j.at("predict_end").get<std::string>());
        if (j.contains("summary_range"))
            cfg.summary_range =
                DateRange::parse(j.at("summary_range").get<std::string>());
        if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
        if (j.contains("dump_features"))
            cfg.dump_features = j.at("dump_features").get<bool>();
        if (j.contains("reference_temperature"))
            cfg.reference_temperature_c =
                j.at("reference_temperature").get<double>();
        if (j.contains("cloud_oktas"))
            cfg.cloud_in_oktas = j.at("cloud_oktas").get<bool>();
        if (j.contains("max_gap_hours"))
            cfg.max_gap_hours = j.at("max_gap_hours").get<int>();
        if (j.contains("outlier_window"))
            cfg.outlier_window_days = j.at("outlier_window").get<int>();
        if (j.contains("outlier_mad_threshold"))
            cfg.outlier_mad_threshold =
                j.at("outlier_mad_threshold").get<double>();
        if (j.contains("condition_limit"))
            cfg.condition_limit = j.at("condition_limit").get<double>();
    } catch (const nlohmann::json::exception& e) {
        fail("config-error", origin + ": " + e.what());
    }
    return cfg;
}

RunConfig RunConfig::load_file(const std::string& path) {
    return load_json_text(io::read_text_file(path, "config-file-not-found"),
                          path);
}

DateRange RunConfig::training_window() const {
    if (!train_start) fail("config-error", "train_start is required");
    if (train_days < 1)
        fail("config-error", "train_days must be >= 1, got " +
                                 std::to_string(train_days));
    return DateRange(*train_start, *train_start + train_days - 1);
}

void RunConfig::validate() const {
    site.validate();
    if (weather_path.empty()) fail("config-error", "weather path is required");
    if (consumption_path.empty())
        fail("config-error", "consumption path is required");
    if (region.empty()) fail("config-error", "region is required");
    const DateRange train = training_window();

    if (onset && !(train.last < *onset))
        fail("config-error", "training window " + train.to_string() +
                                 " must precede the onset " +
                                 onset->to_string());
    if (scale_window) {
        if (!onset)
            fail("config-error",
                 "scale_window requires an onset date to rescale from");
        if (scale_window->first < *onset)
            fail("config-error", "scale_window " + scale_window->to_string() +
                                     " starts before the onset " +
                                     onset->to_string());
    }
    if (predict_start && predict_end && *predict_end < *predict_start)
        fail("config-error", "predict_end precedes predict_start");

    if (!io::file_exists(weather_path))
        fail("weather-file-not-found", weather_path);
    if (!io::file_exists(consumption_path))
        fail("consumption-file-not-found", consumption_path);
    if (!holidays_path.empty() && !io::file_exists(holidays_path))
        fail("holidays-file-not-found", holidays_path);
}

} // namespace loadsift
