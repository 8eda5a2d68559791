#include "loadsift/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "loadsift/csv.hpp"
#include "loadsift/errors.hpp"
#include "loadsift/io.hpp"
#include "loadsift/svg.hpp"

namespace loadsift {

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty()) return name;
    return dir.back() == '/' ? dir + name : dir + "/" + name;
}

} // namespace

PipelineData load_pipeline(const RunConfig& config) {
    config.validate();

    WeatherFormat format;
    format.cloud_in_oktas = config.cloud_in_oktas;
    WeatherParseResult parsed =
        parse_weather_file(config.weather_path, format);
    PipelineData data;
    for (const WeatherParseIssue& issue : parsed.issues)
        data.warnings.push_back(config.weather_path + " line " +
                                std::to_string(issue.line) + ": " +
                                issue.message);

    const std::vector<WeatherSample> filled =
        fill_weather_gaps(std::move(parsed.samples), config.max_gap_hours);
    DailyWeatherResult daily = daily_weather(filled);
    data.daily = std::move(daily.days);
    for (std::string& w : daily.warnings) data.warnings.push_back(std::move(w));
    if (data.daily.empty())
        fail("no-data", config.weather_path + " holds no complete days");

    const auto records = parse_consumption_file(config.consumption_path);
    RepairResult repaired = repair_consumption_outliers(
        aggregate(records, config.region, config.consumer_class),
        config.outlier_window_days, config.outlier_mad_threshold);
    data.consumption = std::move(repaired.series);
    data.repairs = std::move(repaired.log);

    const Date first =
        std::max(data.daily.front().date, data.consumption.start_date);
    const Date last =
        std::min(data.daily.back().date, data.consumption.range().last);
    if (last < first)
        fail("no-data", "weather and consumption series do not overlap");
    const DateRange span(first, last);

    data.solar.reserve(static_cast<std::size_t>(span.length()));
    for (Date d = span.first; d <= span.last; ++d)
        data.solar.push_back(solar_day(config.site, d));

    FeatureOptions options;
    options.reference_temperature_c = config.reference_temperature_c;
    options.cloud_attenuation = config.site.cloud_attenuation;
    data.features = build_features(span, data.daily, data.solar, options);
    return data;
}

namespace {

struct TrainingStats {
    double mean_abs_rho = 0.0;
    double max_abs_rho = 0.0;
};

TrainingStats training_residual_stats(const PipelineData& data,
                                      const RegressionFit& fit,
                                      const DateRange& window) {
    const Prediction pred = predict(fit, data.features.slice(window), 1.0);
    std::vector<double> raw(pred.values.size());
    const std::size_t c0 = *data.consumption.index_of(window.first);
    for (std::size_t i = 0; i < raw.size(); ++i)
        raw[i] = data.consumption.values[c0 + i] - pred.values[i];
    const ResidualSeries rs =
        normalize(window.first, raw, data.consumption, std::nullopt);

    TrainingStats stats;
    for (double rho : rs.normalized) {
        stats.mean_abs_rho += std::abs(rho);
        stats.max_abs_rho = std::max(stats.max_abs_rho, std::abs(rho));
    }
    stats.mean_abs_rho /= static_cast<double>(rs.size());
    return stats;
}

FitResult fit_and_report(const RunConfig& config, const PipelineData& data) {
    const DateRange window = config.training_window();
    FitResult result;
    result.fit = fit(data.features, data.consumption, window,
                     config.condition_limit);
    const TrainingStats stats = training_residual_stats(data, result.fit, window);
    result.mean_abs_rho = stats.mean_abs_rho;
    result.max_abs_rho = stats.max_abs_rho;
    result.repaired_days = data.repairs.size();
    result.solstice_warning = near_solstice_warning(window);

    std::ostringstream coeffs;
    write_coefficients_csv(coeffs, result.fit);
    io::atomic_write_file(join_path(config.out_dir, "coefficients.csv"),
                          coeffs.str());

    std::ostringstream report;
    report << "region=" << config.region << '\n';
    report << "class=" << to_string(config.consumer_class) << '\n';
    report << "training_window=" << window.to_string() << '\n';
    report << "gram_condition=" << csv::format_double(result.fit.gram_condition)
           << '\n';
    report << "mean_abs_rho=" << csv::format_double(result.mean_abs_rho) << '\n';
    report << "max_abs_rho=" << csv::format_double(result.max_abs_rho) << '\n';
    report << "repaired_days=" << result.repaired_days << '\n';
    if (result.solstice_warning)
        report << "warning=" << *result.solstice_warning << '\n';
    for (const std::string& w : data.warnings) report << "warning=" << w << '\n';
    io::atomic_write_file(join_path(config.out_dir, "fit_report.txt"),
                          report.str());
    return result;
}

struct AnalyzedSeries {
    FitResult fit_result;
    AnalyzeResult analysis;
    DateRange predict_range;
};

/// Fit, extrapolate, optionally rescale post-onset predictions, normalize.
/// Pure computation; callers decide what gets written where.
AnalyzedSeries analyze_series(const RunConfig& config, const PipelineData& data) {
    AnalyzedSeries out;
    out.fit_result.fit =
        fit(data.features, data.consumption, config.training_window(),
            config.condition_limit);
    const RegressionFit& model = out.fit_result.fit;

    const DateRange coverage = data.features.range();
    const DateRange prange(config.predict_start.value_or(coverage.first),
                           config.predict_end.value_or(coverage.last));
    out.predict_range = prange;

    double scale = 1.0;
    if (config.scale_window)
        scale = estimate_scale(model, data.features, data.consumption,
                               *config.scale_window);

    const Prediction pred = predict(model, data.features.slice(prange), 1.0);
    std::vector<double> raw(pred.values.size());
    const std::size_t c0 = *data.consumption.index_of(prange.first);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const Date d = prange.first + static_cast<std::int64_t>(i);
        const double s = (config.onset && d >= *config.onset) ? scale : 1.0;
        raw[i] = data.consumption.values[c0 + i] - s * pred.values[i];
    }

    out.analysis.fit = model;
    out.analysis.scale = scale;
    out.analysis.residuals =
        normalize(prange.first, raw, data.consumption, config.onset);
    out.analysis.region = config.region;
    out.analysis.consumer_class = config.consumer_class;
    return out;
}

} // namespace

FitResult cmd_fit(const RunConfig& config) {
    const PipelineData data = load_pipeline(config);
    return fit_and_report(config, data);
}

AnalyzeResult cmd_analyze(const RunConfig& config) {
    const PipelineData data = load_pipeline(config);
    fit_and_report(config, data);
    AnalyzedSeries series = analyze_series(config, data);

    std::ostringstream residuals;
    write_residuals_csv(residuals, series.analysis.residuals);
    io::atomic_write_file(join_path(config.out_dir, "residuals.csv"),
                          residuals.str());

    svg::LineChart chart;
    chart.title = "Residual consumption: " + config.region + " (" +
                  to_string(config.consumer_class) + ")";
    chart.y_label = "normalized residual";
    chart.start_date = series.analysis.residuals.start_date;
    chart.series.push_back({"rho", series.analysis.residuals.normalized});
    chart.marker = config.onset;
    io::atomic_write_file(join_path(config.out_dir, "residuals.svg"),
                          svg::render_line_chart(chart));

    if (config.dump_features) {
        std::ostringstream features;
        write_features_csv(features, data.features);
        io::atomic_write_file(join_path(config.out_dir, "features.csv"),
                              features.str());
    }
    return series.analysis;
}

DifferenceSeries cmd_compare(const RunConfig& config_a, const RunConfig& config_b,
                             const std::string& out_dir,
                             const std::string& holidays_override) {
    const PipelineData data_a = load_pipeline(config_a);
    const PipelineData data_b = load_pipeline(config_b);
    const AnalyzedSeries series_a = analyze_series(config_a, data_a);
    const AnalyzedSeries series_b = analyze_series(config_b, data_b);

    std::string holidays_path = holidays_override;
    if (holidays_path.empty()) holidays_path = config_a.holidays_path;
    if (holidays_path.empty()) holidays_path = config_b.holidays_path;
    const HolidayCalendar calendar =
        holidays_path.empty() ? HolidayCalendar{}
                              : HolidayCalendar::parse_file(holidays_path);

    const DifferenceSeries diff = year_difference(
        series_a.analysis.residuals, series_b.analysis.residuals, calendar);
    if (diff.slots.empty())
        fail("parameter-error",
             "the two residual series share no month-day overlap");

    const std::vector<double> values = diff.values();
    const std::vector<double> smoothed = moving_average(values, 7);

    std::ostringstream out;
    out << "#series_a=" << config_a.region << ','
        << to_string(config_a.consumer_class) << ','
        << series_a.analysis.residuals.range().to_string() << '\n';
    out << "#series_b=" << config_b.region << ','
        << to_string(config_b.consumer_class) << ','
        << series_b.analysis.residuals.range().to_string() << '\n';
    out << "date_a,date_b,diff,diff_ma7,label\n";
    for (std::size_t i = 0; i < diff.slots.size(); ++i) {
        const DifferenceSlot& slot = diff.slots[i];
        out << slot.date_a.to_string() << ',' << slot.date_b.to_string() << ','
            << csv::format_double(slot.difference) << ','
            << csv::format_double(smoothed[i]) << ',' << slot.label << '\n';
    }
    io::atomic_write_file(join_path(out_dir, "compare.csv"), out.str());

    svg::LineChart chart;
    chart.title = "Residual difference: " + config_a.region + " vs " +
                  config_b.region;
    chart.y_label = "rho_a - rho_b";
    chart.start_date = diff.slots.front().date_b;
    chart.series.push_back({"difference", values});
    chart.series.push_back({"7-day moving average", smoothed});
    io::atomic_write_file(join_path(out_dir, "compare.svg"),
                          svg::render_line_chart(chart));
    return diff;
}

std::vector<SummaryRow> cmd_summary(const std::vector<RunConfig>& configs,
                                    const std::string& out_dir,
                                    const std::optional<DateRange>& range_override) {
    if (configs.empty())
        fail("parameter-error", "summary needs at least one analysed series");

    std::vector<SummaryRow> rows;
    for (const RunConfig& config : configs) {
        const PipelineData data = load_pipeline(config);
        const AnalyzedSeries series = analyze_series(config, data);
        const ResidualSeries& rs = series.analysis.residuals;

        DateRange range = rs.range();
        if (range_override)
            range = *range_override;
        else if (config.summary_range)
            range = *config.summary_range;
        else if (config.onset && range.contains(*config.onset))
            range = DateRange(*config.onset, range.last);

        SummaryRow row;
        row.region = config.region;
        row.consumer_class = config.consumer_class;
        row.range = range;
        row.mean_rho = period_summary(rs, range);
        rows.push_back(row);
    }

    std::ostringstream out;
    out << "region,class,range_start,range_end,mean_rho\n";
    for (const SummaryRow& row : rows)
        out << row.region << ',' << to_string(row.consumer_class) << ','
            << row.range.first.to_string() << ',' << row.range.last.to_string()
            << ',' << csv::format_double(row.mean_rho) << '\n';
    io::atomic_write_file(join_path(out_dir, "summary.csv"), out.str());

    svg::BarChart chart;
    chart.title = "Mean residual change by region and class";
    chart.y_label = "mean normalized residual";
    for (const SummaryRow& row : rows) {
        auto group = std::find_if(chart.groups.begin(), chart.groups.end(),
                                  [&](const svg::BarGroup& g) {
                                      return g.label == row.region;
                                  });
        if (group == chart.groups.end()) {
            chart.groups.push_back({row.region, {}});
            group = chart.groups.end() - 1;
        }
        group->bars.emplace_back(to_string(row.consumer_class), row.mean_rho);
    }
    io::atomic_write_file(join_path(out_dir, "summary.svg"),
                          svg::render_bar_chart(chart));
    return rows;
}

void cmd_synth(const ScenarioSpec& spec, const std::string& out_dir) {
    const std::vector<WeatherSample> weather = generate_weather(spec);
    const DailyWeatherResult daily = daily_weather(weather);

    std::vector<SolarDay> solar;
    solar.reserve(static_cast<std::size_t>(spec.days));
    for (Date d = spec.span().first; d <= spec.span().last; ++d)
        solar.push_back(solar_day(spec.site, d));

    FeatureOptions options;
    options.cloud_attenuation = spec.site.cloud_attenuation;
    const FeatureMatrix features =
        build_features(spec.span(), daily.days, solar, options);
    const ConsumptionSeries consumption = generate_consumption(spec, features);

    std::ostringstream weather_csv;
    write_weather_csv(weather_csv, weather);
    io::atomic_write_file(join_path(out_dir, "weather.csv"), weather_csv.str());

    std::ostringstream consumption_csv;
    write_consumption_csv(consumption_csv, consumption);
    io::atomic_write_file(join_path(out_dir, "consumption.csv"),
                          consumption_csv.str());
}

} // namespace loadsift
