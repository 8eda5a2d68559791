#include "cli_app.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>

#include <CLI11.hpp>

#include "loadsift/commands.hpp"
#include "loadsift/csv.hpp"
#include "loadsift/errors.hpp"

namespace loadsift::cli {

namespace {

/// Unparsed flag values; applied on top of the config file after parsing so
/// a flag always wins over the file.
struct Overrides {
    std::string config_path;
    std::string weather;
    std::string consumption;
    std::string region;
    std::string consumer_class;
    std::string train_start;
    int train_days = -1;
    std::string onset;
    std::string scale_window;
    std::string holidays;
    std::string out;
    bool dump_features = false;
    std::string predict_start;
    std::string predict_end;
    std::string summary_range;
    double reference_temperature = std::numeric_limits<double>::quiet_NaN();
    double cloud_attenuation = std::numeric_limits<double>::quiet_NaN();
    bool oktas = false;
};

void add_common_flags(CLI::App* cmd, Overrides& o, bool with_config = true) {
    if (with_config)
        cmd->add_option("--config", o.config_path, "Run configuration file (JSON)");
    cmd->add_option("--weather", o.weather, "Weather CSV path");
    cmd->add_option("--consumption", o.consumption, "Consumption CSV path");
    cmd->add_option("--region", o.region, "Region to analyse");
    cmd->add_option("--class", o.consumer_class,
                    "Consumer class: business or private");
    cmd->add_option("--train-start", o.train_start,
                    "Training window start (YYYY-MM-DD)");
    cmd->add_option("--train-days", o.train_days, "Training window length in days");
    cmd->add_option("--onset", o.onset, "Onset date (YYYY-MM-DD)");
    cmd->add_option("--scale-window", o.scale_window,
                    "Rescaling estimation window (YYYY-MM-DD..YYYY-MM-DD)");
    cmd->add_option("--holidays", o.holidays, "Holiday calendar file");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_flag("--dump-features", o.dump_features,
                  "Also write the feature matrix as CSV");
    cmd->add_option("--predict-start", o.predict_start,
                    "Prediction span start (YYYY-MM-DD)");
    cmd->add_option("--predict-end", o.predict_end,
                    "Prediction span end (YYYY-MM-DD)");
    cmd->add_option("--summary-range", o.summary_range,
                    "Summary range (YYYY-MM-DD..YYYY-MM-DD)");
    cmd->add_option("--reference-temperature", o.reference_temperature,
                    "Thermal factor reference temperature, degrees C");
    cmd->add_option("--cloud-attenuation", o.cloud_attenuation,
                    "Daylight cloud attenuation in [0, 1]");
    cmd->add_flag("--oktas", o.oktas, "Read the cloud column as oktas 0-8");
}

/// Flag values are user input on the command line, so their parse failures
/// are usage errors, not data errors.
template <typename F>
auto usage_checked(const std::string& flag, F&& parse) {
    try {
        return parse();
    } catch (const Error& e) {
        throw Error("usage-error", flag + ": " + e.what(), ErrorClass::usage);
    }
}

RunConfig materialize(const Overrides& o) {
    RunConfig cfg;
    if (!o.config_path.empty()) cfg = RunConfig::load_file(o.config_path);
    if (!o.weather.empty()) cfg.weather_path = o.weather;
    if (!o.consumption.empty()) cfg.consumption_path = o.consumption;
    if (!o.region.empty()) cfg.region = o.region;
    if (!o.consumer_class.empty())
        cfg.consumer_class = usage_checked("--class", [&] {
            return consumer_class_from_string(o.consumer_class);
        });
    if (!o.train_start.empty())
        cfg.train_start = usage_checked("--train-start", [&] {
            return Date::parse(o.train_start);
        });
    if (o.train_days >= 0) cfg.train_days = o.train_days;
    if (!o.onset.empty())
        cfg.onset = usage_checked("--onset", [&] { return Date::parse(o.onset); });
    if (!o.scale_window.empty())
        cfg.scale_window = usage_checked("--scale-window", [&] {
            return DateRange::parse(o.scale_window);
        });
    if (!o.holidays.empty()) cfg.holidays_path = o.holidays;
    if (!o.out.empty()) cfg.out_dir = o.out;
    if (o.dump_features) cfg.dump_features = true;
    if (!o.predict_start.empty())
        cfg.predict_start = usage_checked("--predict-start", [&] {
            return Date::parse(o.predict_start);
        });
    if (!o.predict_end.empty())
        cfg.predict_end = usage_checked("--predict-end", [&] {
            return Date::parse(o.predict_end);
        });
    if (!o.summary_range.empty())
        cfg.summary_range = usage_checked("--summary-range", [&] {
            return DateRange::parse(o.summary_range);
        });
    if (!std::isnan(o.reference_temperature))
        cfg.reference_temperature_c = o.reference_temperature;
    if (!std::isnan(o.cloud_attenuation))
        cfg.site.cloud_attenuation = o.cloud_attenuation;
    if (o.oktas) cfg.cloud_in_oktas = true;
    return cfg;
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"Decomposes daily electricity consumption into weekly-cycle, "
                 "temperature, daylight and wind components and isolates the "
                 "unexplained residual demand"};
    app.require_subcommand(1);

    Overrides fit_o, analyze_o;
    std::vector<std::string> compare_configs;
    Overrides compare_o;
    std::vector<std::string> summary_configs;
    Overrides summary_o;
    std::string scenario_path;
    std::string synth_out = "out";
    std::optional<std::uint64_t> synth_seed;

    CLI::App* fit_cmd =
        app.add_subcommand("fit", "Fit the 10-factor model on a training window");
    add_common_flags(fit_cmd, fit_o);

    CLI::App* analyze_cmd = app.add_subcommand(
        "analyze", "Fit, extrapolate, and write the residual series and plot");
    add_common_flags(analyze_cmd, analyze_o);

    CLI::App* compare_cmd = app.add_subcommand(
        "compare", "Difference two analysed years with calendar alignment");
    compare_cmd
        ->add_option("configs", compare_configs,
                     "Two run configuration files (series A, series B)")
        ->expected(2);
    compare_cmd->add_option("--holidays", compare_o.holidays,
                            "Holiday calendar file (overrides both configs)");
    compare_cmd->add_option("--out", compare_o.out, "Output directory");

    CLI::App* summary_cmd = app.add_subcommand(
        "summary", "Mean residual change per (region, class) as a bar chart");
    summary_cmd
        ->add_option("configs", summary_configs, "Run configuration files")
        ->expected(-1)
        ->required();
    summary_cmd->add_option("--summary-range", summary_o.summary_range,
                            "Range applied to every series "
                            "(YYYY-MM-DD..YYYY-MM-DD)");
    summary_cmd->add_option("--out", summary_o.out, "Output directory");

    CLI::App* synth_cmd = app.add_subcommand(
        "synth", "Generate a synthetic weather/consumption dataset");
    synth_cmd->add_option("scenario", scenario_path, "Scenario file (JSON)")
        ->required();
    synth_cmd->add_option("--out", synth_out, "Output directory");
    synth_cmd->add_option("--seed", synth_seed, "Override the scenario seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        // CLI11 prints help or the usage message itself; squeeze its exit
        // codes into the documented 0 (help) / 1 (usage error) pair.
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (fit_cmd->parsed()) {
        const RunConfig cfg = materialize(fit_o);
        const FitResult result = cmd_fit(cfg);
        std::cout << "fit: " << cfg.region << " (" << to_string(cfg.consumer_class)
                  << ") window " << result.fit.training_window().to_string()
                  << "\n"
                  << "  gram condition " << csv::format_double(result.fit.gram_condition)
                  << ", mean |rho| " << csv::format_double(result.mean_abs_rho)
                  << ", max |rho| " << csv::format_double(result.max_abs_rho)
                  << "\n";
        if (result.solstice_warning)
            std::cout << "  warning: " << *result.solstice_warning << "\n";
        std::cout << "  wrote " << cfg.out_dir << "/coefficients.csv, "
                  << cfg.out_dir << "/fit_report.txt\n";
    } else if (analyze_cmd->parsed()) {
        const RunConfig cfg = materialize(analyze_o);
        const AnalyzeResult result = cmd_analyze(cfg);
        std::cout << "analyze: " << cfg.region << " ("
                  << to_string(cfg.consumer_class) << ") over "
                  << result.residuals.range().to_string() << "\n";
        if (cfg.scale_window)
            std::cout << "  post-onset scale factor "
                      << csv::format_double(result.scale) << "\n";
        std::cout << "  wrote " << cfg.out_dir << "/residuals.csv, "
                  << cfg.out_dir << "/residuals.svg\n";
    } else if (compare_cmd->parsed()) {
        const RunConfig cfg_a = RunConfig::load_file(compare_configs[0]);
        const RunConfig cfg_b = RunConfig::load_file(compare_configs[1]);
        const std::string out =
            !compare_o.out.empty() ? compare_o.out : cfg_a.out_dir;
        const DifferenceSeries diff =
            cmd_compare(cfg_a, cfg_b, out, compare_o.holidays);
        std::cout << "compare: " << diff.slots.size() << " paired days, wrote "
                  << out << "/compare.csv, " << out << "/compare.svg\n";
    } else if (summary_cmd->parsed()) {
        std::vector<RunConfig> configs;
        for (const std::string& path : summary_configs)
            configs.push_back(RunConfig::load_file(path));
        std::optional<DateRange> range;
        if (!summary_o.summary_range.empty())
            range = usage_checked("--summary-range", [&] {
                return DateRange::parse(summary_o.summary_range);
            });
        const std::string out =
            !summary_o.out.empty() ? summary_o.out
                                   : (configs.empty() ? "out" : configs[0].out_dir);
        const auto rows = cmd_summary(configs, out, range);
        for (const SummaryRow& row : rows)
            std::cout << "summary: " << row.region << " ("
                      << to_string(row.consumer_class) << ") "
                      << row.range.to_string() << " mean rho "
                      << csv::format_double(row.mean_rho) << "\n";
        std::cout << "  wrote " << out << "/summary.csv, " << out
                  << "/summary.svg\n";
    } else if (synth_cmd->parsed()) {
        ScenarioSpec spec = ScenarioSpec::load_file(scenario_path);
        if (synth_seed) spec.seed = *synth_seed;
        cmd_synth(spec, synth_out);
        std::cout << "synth: " << spec.days << " days for " << spec.region
                  << " (" << to_string(spec.consumer_class) << "), wrote "
                  << synth_out << "/weather.csv, " << synth_out
                  << "/consumption.csv\n";
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
    try {
        return dispatch(args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.error_class() == ErrorClass::usage ? 1 : 2;
    }
}

} // namespace loadsift::cli
