#pragma once

#include <string>
#include <vector>

#include "loadsift/config.hpp"
#include "loadsift/holidays.hpp"
#include "loadsift/regress.hpp"
#include "loadsift/residuals.hpp"
#include "loadsift/synth.hpp"

namespace loadsift {

/// Everything the ingest + feature stages produce for one run config.
struct PipelineData {
    std::vector<DailyWeather> daily;
    std::vector<SolarDay> solar;
    ConsumptionSeries consumption;  // aggregated and outlier-repaired
    FeatureMatrix features;         // over the weather/consumption intersection
    std::vector<RepairEntry> repairs;
    std::vector<std::string> warnings;
};

PipelineData load_pipeline(const RunConfig& config);

struct FitResult {
    RegressionFit fit;
    double mean_abs_rho = 0.0;  // over the training window
    double max_abs_rho = 0.0;
    std::size_t repaired_days = 0;
    std::optional<std::string> solstice_warning;
};

/// Fits on the configured window and writes `coefficients.csv` and
/// `fit_report.txt` into the output directory.
FitResult cmd_fit(const RunConfig& config);

struct AnalyzeResult {
    RegressionFit fit;
    ResidualSeries residuals;
    double scale = 1.0;  // applied to post-onset predictions
    std::string region;
    ConsumerClass consumer_class = ConsumerClass::business;
};

/// Full pipeline: fit, extrapolate over the prediction span, rescale
/// post-onset predictions when a scale window is configured, normalize, and
/// write `residuals.csv` + `residuals.svg` (plus `features.csv` on request).
AnalyzeResult cmd_analyze(const RunConfig& config);

/// Differences the residuals of two analysed runs with calendar alignment
/// and writes `compare.csv` + `compare.svg` into `out_dir`.
DifferenceSeries cmd_compare(const RunConfig& config_a, const RunConfig& config_b,
                             const std::string& out_dir,
                             const std::string& holidays_override = {});

struct SummaryRow {
    std::string region;
    ConsumerClass consumer_class = ConsumerClass::business;
    double mean_rho = 0.0;
    DateRange range;
};

/// Mean normalized residual per analysed (region, class) over its summary
/// range; writes `summary.csv` + `summary.svg` into `out_dir`.
std::vector<SummaryRow> cmd_summary(const std::vector<RunConfig>& configs,
                                    const std::string& out_dir,
                                    const std::optional<DateRange>& range_override =
                                        std::nullopt);

/// Renders a scenario into the standard weather/consumption CSV files so
/// synthetic data flows through exactly the same pipeline as real data.
void cmd_synth(const ScenarioSpec& spec, const std::string& out_dir);

} // namespace loadsift
