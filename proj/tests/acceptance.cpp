// Acceptance suite: exercises the documented end-to-end guarantees on
// synthetic data with known ground truth and prints one PASS/FAIL line per
// criterion. Returns non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "loadsift/commands.hpp"
#include "loadsift/errors.hpp"
#include "loadsift/holidays.hpp"
#include "loadsift/io.hpp"
#include "loadsift/regress.hpp"
#include "loadsift/residuals.hpp"
#include "loadsift/solar.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace loadsift;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// Solar days depend only on site and date, so the per-seed loops share one
/// precomputed year.
std::vector<SolarDay> solar_span(const Site& site, const DateRange& span) {
    std::vector<SolarDay> days;
    days.reserve(static_cast<std::size_t>(span.length()));
    for (Date d = span.first; d <= span.last; ++d)
        days.push_back(solar_day(site, d));
    return days;
}

fixtures::Dataset make_dataset_with_solar(const ScenarioSpec& spec,
                                          const std::vector<SolarDay>& solar) {
    fixtures::Dataset data;
    data.spec = spec;
    data.daily = daily_weather(generate_weather(spec)).days;
    data.solar = solar;
    FeatureOptions options;
    options.cloud_attenuation = spec.site.cloud_attenuation;
    data.features = build_features(spec.span(), data.daily, solar, options);
    data.consumption = generate_consumption(spec, data.features);
    return data;
}

std::vector<double> raw_residuals(const fixtures::Dataset& data,
                                  const RegressionFit& fit,
                                  const DateRange& span, double post_scale = 1.0,
                                  std::optional<Date> onset = std::nullopt) {
    const Prediction pred = predict(fit, data.features.slice(span), 1.0);
    std::vector<double> raw(pred.values.size());
    const std::size_t c0 = *data.consumption.index_of(span.first);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const Date d = span.first + static_cast<std::int64_t>(i);
        const double s = (onset && d >= *onset) ? post_scale : 1.0;
        raw[i] = data.consumption.values[c0 + i] - s * pred.values[i];
    }
    return raw;
}

double mean_abs(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += std::abs(x);
    return sum / static_cast<double>(v.size());
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

char buffer[512];

template <typename... Args>
std::string format(const char* fmt, Args... args) {
    std::snprintf(buffer, sizeof buffer, fmt, args...);
    return buffer;
}

// ---------------------------------------------------------------------------
// Criteria 1 and 2 share one long scenario: 1% multiplicative noise, no
// intervention, training on days 32-61, extrapolation through day 211. The
// scenario starts February 1 so the training window sits in March-April,
// away from the midwinter regime where the model itself documents that the
// training period must be doubled; cloud attenuation 0.9 gives the daylight
// factor a strong cloud signature to be identified from.

Outcome criterion_residual_floor(const fixtures::Dataset& data) {
    const auto t0 = Clock::now();
    const DateRange window(data.spec.start + 31, data.spec.start + 60);
    const RegressionFit f = fit(data.features, data.consumption, window);
    const ResidualSeries rs =
        normalize(window.first, raw_residuals(data, f, window),
                  data.consumption, std::nullopt);
    const double mean_rho = mean_abs(rs.normalized);
    const double elapsed = ms_since(t0);

    Outcome out;
    out.pass = mean_rho >= 0.005 && mean_rho <= 0.02 && elapsed < 1000.0;
    out.detail = format("training mean |rho| = %.4f (need [0.005, 0.02]), %.0f ms",
                        mean_rho, elapsed);
    return out;
}

Outcome criterion_extrapolation(const fixtures::Dataset& data) {
    const auto t0 = Clock::now();
    const DateRange window(data.spec.start + 31, data.spec.start + 60);
    const DateRange span(data.spec.start + 61, data.spec.start + 210);
    const RegressionFit f = fit(data.features, data.consumption, window);
    const ResidualSeries rs =
        normalize(span.first, raw_residuals(data, f, span), data.consumption,
                  std::nullopt);
    const double mean_rho = mean_abs(rs.normalized);
    const double worst = max_abs(rs.normalized);
    const double elapsed = ms_since(t0);

    Outcome out;
    out.pass = mean_rho < 0.02 && worst < 0.05 && elapsed < 1000.0;
    out.detail = format(
        "150-day extrapolation mean |rho| = %.4f (< 0.02), max = %.4f (< 0.05), "
        "%.0f ms",
        mean_rho, worst, elapsed);
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 3: a 0.8 step at day 100 is recovered by the scale estimator to
// within 0.01 and rescaling recentres the post-onset residuals, across seeds.

Outcome criterion_step_recovery(const std::vector<SolarDay>& solar) {
    int passed = 0;
    double worst_scale_err = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto spec = fixtures::base_scenario(180, seed, 0.01);
        spec.start = Date(2019, 2, 1);
        spec.site.cloud_attenuation = 0.9;
        const Date onset = spec.start + 99;  // day 100
        spec.interventions.push_back({onset, 0.8, 1.0});
        const auto data = make_dataset_with_solar(spec, solar);

        const DateRange window(spec.start + 61, spec.start + 90);
        const RegressionFit f = fit(data.features, data.consumption, window);
        const double scale =
            estimate_scale(f, data.features, data.consumption,
                           DateRange(onset, onset + 13));  // days 100-113
        worst_scale_err = std::max(worst_scale_err, std::abs(scale - 0.8));

        const DateRange post(onset, spec.span().last);
        const ResidualSeries rs =
            normalize(post.first,
                      raw_residuals(data, f, post, scale, onset),
                      data.consumption, onset);
        double mean_rho = 0.0;
        for (double rho : rs.normalized) mean_rho += rho;
        mean_rho /= static_cast<double>(rs.size());

        if (std::abs(scale - 0.8) <= 0.01 && std::abs(mean_rho) <= 0.01)
            ++passed;
    }
    Outcome out;
    out.pass = passed >= 95;
    out.detail = format("%d of 100 seeds recovered (need >= 95), worst scale "
                        "error %.4f",
                        passed, worst_scale_err);
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 4: with the weekly cycle damped, unscaled extrapolation
// overcompensates the cycle; rescaling shrinks the day-of-week oscillation.

double day_of_week_iqr(const ResidualSeries& rs) {
    std::array<double, 7> sum{};
    std::array<int, 7> count{};
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const int w = rs.date_at(i).weekday_index();
        sum[static_cast<std::size_t>(w)] += rs.normalized[i];
        ++count[static_cast<std::size_t>(w)];
    }
    std::vector<double> means;
    for (std::size_t w = 0; w < 7; ++w)
        means.push_back(sum[w] / count[w]);
    return oracles::quantile(means, 0.75) - oracles::quantile(means, 0.25);
}

Outcome criterion_overcompensation(const std::vector<SolarDay>& solar) {
    auto spec = fixtures::base_scenario(180, 777, 0.01);
    spec.start = Date(2019, 2, 1);
    spec.site.cloud_attenuation = 0.9;
    const Date onset = spec.start + 99;
    spec.interventions.push_back({onset, 0.8, 0.8});
    const auto data = make_dataset_with_solar(spec, solar);

    const DateRange window(spec.start + 61, spec.start + 90);
    const RegressionFit f = fit(data.features, data.consumption, window);
    const double scale = estimate_scale(f, data.features, data.consumption,
                                        DateRange(onset, onset + 13));

    const DateRange post(onset, spec.span().last);
    const ResidualSeries unscaled =
        normalize(post.first, raw_residuals(data, f, post), data.consumption,
                  onset);
    const ResidualSeries rescaled =
        normalize(post.first, raw_residuals(data, f, post, scale, onset),
                  data.consumption, onset);

    const double amp_unscaled = day_of_week_iqr(unscaled);
    const double amp_rescaled = day_of_week_iqr(rescaled);
    Outcome out;
    out.pass = amp_unscaled >= 1.5 * amp_rescaled;
    out.detail = format("weekly amplitude %.4f unscaled vs %.4f rescaled "
                        "(ratio %.2f, need >= 1.5)",
                        amp_unscaled, amp_rescaled,
                        amp_unscaled / amp_rescaled);
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 5: the production solver against explicit Gram inversion, plus
// the least-squares orthogonality identity, on random full-rank instances.

Outcome criterion_oracle_equivalence(const Site& site) {
    std::mt19937_64 rng(4242);
    const auto uniform = [&rng](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };

    const auto solar = solar_span(
        site, DateRange(Date(2019, 1, 1), Date(2019, 1, 1) + 39));
    double worst_coeff = 0.0;
    double worst_ortho = 0.0;
    for (int instance = 0; instance < 50; ++instance) {
        auto spec = fixtures::base_scenario(40, 1000 + static_cast<std::uint64_t>(instance),
                                            0.01);
        for (std::size_t w = 0; w < 7; ++w)
            spec.true_coefficients[w] = uniform(5000.0, 12000.0);
        spec.true_coefficients[factor_thermal] = uniform(20.0, 80.0);
        spec.true_coefficients[factor_daylight] = uniform(-150.0, -50.0);
        spec.true_coefficients[factor_wind_loss] = uniform(0.1, 1.5);

        const auto data = make_dataset_with_solar(spec, solar);
        const DateRange window(spec.start + 1, spec.start + 30);

        const RegressionFit f = fit(data.features, data.consumption, window);
        const auto oracle =
            oracles::solve_by_inversion(data.features, data.consumption, window);
        double scale = 0.0;
        for (double a : oracle) scale = std::max(scale, std::abs(a));
        for (std::size_t mu = 0; mu < kFactorCount; ++mu)
            worst_coeff = std::max(
                worst_coeff,
                std::abs(f.coefficients[mu] - oracle[mu]) / scale);

        // Orthogonality: residuals against every factor column.
        const std::vector<double> raw = raw_residuals(data, f, window);
        const std::size_t f0 = *data.features.index_of(window.first);
        const std::size_t c0 = *data.consumption.index_of(window.first);
        double c_norm = 0.0;
        for (std::size_t i = 0; i < raw.size(); ++i)
            c_norm += data.consumption.values[c0 + i] *
                      data.consumption.values[c0 + i];
        c_norm = std::sqrt(c_norm);
        for (std::size_t nu = 0; nu < kFactorCount; ++nu) {
            double dot = 0.0;
            double f_norm = 0.0;
            for (std::size_t i = 0; i < raw.size(); ++i) {
                const double fv = data.features.rows[f0 + i][nu];
                dot += raw[i] * fv;
                f_norm += fv * fv;
            }
            f_norm = std::sqrt(f_norm);
            if (f_norm > 0.0)
                worst_ortho =
                    std::max(worst_ortho, std::abs(dot) / (c_norm * f_norm));
        }
    }
    Outcome out;
    out.pass = worst_coeff <= 1e-8 && worst_ortho <= 1e-6;
    out.detail = format("worst coefficient deviation %.2e (<= 1e-8), worst "
                        "orthogonality %.2e (<= 1e-6) over 50 instances",
                        worst_coeff, worst_ortho);
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 6: solar geometry against the closed-form noon oracle.

Outcome criterion_solar(const Site& tallinn) {
    const Date equinox(2020, 3, 20);
    const auto noon_altitude = [](double lat, double lon, Date d) {
        return solar_elevation_deg(lat, lon, d, solar_noon_utc_hour(lon, d));
    };
    const double equator = noon_altitude(0.0, 0.0, equinox);

    const double decl =
        solar_declination_rad(fractional_year_rad(equinox, 12.0)) *
        (180.0 / 3.14159265358979323846);
    const double tallinn_noon =
        noon_altitude(tallinn.latitude_deg, tallinn.longitude_deg, equinox);
    const double oracle = 90.0 - std::abs(tallinn.latitude_deg - decl);

    double decl_min = 90.0, decl_max = -90.0;
    for (Date d(2020, 1, 1); d <= Date(2020, 12, 31); ++d) {
        const double v = solar_declination_rad(fractional_year_rad(d, 12.0)) *
                         (180.0 / 3.14159265358979323846);
        decl_min = std::min(decl_min, v);
        decl_max = std::max(decl_max, v);
    }

    Outcome out;
    out.pass = std::abs(equator - 90.0) <= 1.0 &&
               std::abs(tallinn_noon - 30.6) <= 1.0 &&
               std::abs(tallinn_noon - oracle) <= 1.0 && decl_min >= -23.6 &&
               decl_max <= 23.6;
    out.detail = format("equator noon %.2f deg, Tallinn noon %.2f deg (oracle "
                        "%.2f), declination in [%.2f, %.2f]",
                        equator, tallinn_noon, oracle, decl_min, decl_max);
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 7: leap-day pairing and swapped Good-Friday alignment.

Outcome criterion_calendar() {
    const DateRange gf2019(Date(2019, 4, 18), Date(2019, 4, 20));
    const DateRange gf2020(Date(2020, 4, 9), Date(2020, 4, 12));
    const auto build = [&](Date start, int days, const DateRange& dip) {
        ResidualSeries rs;
        rs.start_date = start;
        for (int i = 0; i < days; ++i) {
            const Date d = start + i;
            const double v = dip.contains(d) ? -0.25 : -0.01;
            rs.raw.push_back(v);
            rs.normalized.push_back(v);
            rs.denominators.push_back(1.0);
        }
        return rs;
    };
    const ResidualSeries a = build(Date(2019, 2, 1), 150, gf2019);
    const ResidualSeries b = build(Date(2020, 2, 1), 151, gf2020);

    HolidayCalendar cal;
    cal.alignments.push_back({gf2019, gf2020, "Good Friday"});
    const DifferenceSeries diff = year_difference(a, b, cal);

    bool zero_at_aligned = true;
    int aligned = 0;
    for (const DifferenceSlot& slot : diff.slots)
        if (slot.label.rfind("aligned", 0) == 0) {
            ++aligned;
            zero_at_aligned =
                zero_at_aligned && std::abs(slot.difference) < 1e-12;
        }

    Outcome out;
    out.pass = zero_at_aligned && aligned == 7 && diff.slots.size() == 151;
    out.detail = format("%zu paired slots (need 151, the 2020 length), %d "
                        "aligned slots all zero: %s",
                        diff.slots.size(), aligned,
                        zero_at_aligned ? "yes" : "no");
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 8: every command run twice over the bundled reference scenario
// produces byte-identical artifacts, SVG included.

void run_reference_suite(const std::string& data_dir, const std::string& root) {
    const ScenarioSpec business =
        ScenarioSpec::load_file(data_dir + "/reference/scenario_business.json");
    const ScenarioSpec household =
        ScenarioSpec::load_file(data_dir + "/reference/scenario_private.json");
    cmd_synth(business, root + "/business");
    cmd_synth(household, root + "/private");

    const auto config = [&](const ScenarioSpec& spec, const std::string& dir,
                            int year) {
        RunConfig cfg;
        cfg.site = spec.site;
        cfg.weather_path = root + "/" + dir + "/weather.csv";
        cfg.consumption_path = root + "/" + dir + "/consumption.csv";
        cfg.region = spec.region;
        cfg.consumer_class = spec.consumer_class;
        cfg.train_start = Date(year, 1, 1);
        cfg.train_days = 31;
        cfg.predict_start = Date(year, 2, 1);
        cfg.predict_end = Date(year, 6, 30);
        if (year == 2020) {
            cfg.onset = Date(2020, 3, 12);
            cfg.summary_range = DateRange(Date(2020, 3, 3), Date(2020, 5, 31));
        }
        cfg.holidays_path = data_dir + "/reference/holidays_ee.txt";
        return cfg;
    };

    RunConfig b2019 = config(business, "business", 2019);
    b2019.out_dir = root + "/out2019-business";
    RunConfig b2020 = config(business, "business", 2020);
    b2020.out_dir = root + "/out2020-business";
    RunConfig b2020r = b2020;
    b2020r.scale_window = DateRange(Date(2020, 3, 12), Date(2020, 3, 25));
    b2020r.out_dir = root + "/out2020-business-rescaled";
    b2020r.dump_features = true;
    RunConfig p2020 = config(household, "private", 2020);
    p2020.out_dir = root + "/out2020-private";

    cmd_fit(b2020);
    cmd_analyze(b2019);
    cmd_analyze(b2020);
    cmd_analyze(b2020r);
    cmd_analyze(p2020);
    cmd_compare(b2019, b2020, root + "/compare");
    cmd_summary({b2020, p2020}, root + "/summary");
}

std::map<std::string, std::string> collect_files(const std::string& root) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        const std::string rel =
            fs::relative(entry.path(), root).generic_string();
        files[rel] = io::read_text_file(entry.path().string(), "io-error");
    }
    return files;
}

Outcome criterion_determinism(const std::string& data_dir) {
    const std::string scratch = "scratch/acceptance-golden";
    fs::remove_all(scratch);
    run_reference_suite(data_dir, scratch + "/run1");
    run_reference_suite(data_dir, scratch + "/run2");

    const auto run1 = collect_files(scratch + "/run1");
    const auto run2 = collect_files(scratch + "/run2");

    Outcome out;
    if (run1.size() != run2.size() || run1.empty()) {
        out.detail = format("artifact sets differ in size: %zu vs %zu",
                            run1.size(), run2.size());
        return out;
    }
    for (const auto& [name, content] : run1) {
        const auto it = run2.find(name);
        if (it == run2.end() || it->second != content) {
            out.detail = "artifact differs between runs: " + name;
            return out;
        }
    }
    fs::remove_all(scratch);
    out.pass = true;
    out.detail = format("%zu artifacts byte-identical across two runs",
                        run1.size());
    return out;
}

} // namespace

int main() {
    const std::string data_dir = LOADSIFT_DATA_DIR;
    const Site tallinn = fixtures::tallinn_site();

    int failures = 0;
    const auto report = [&](int index, const char* name, const Outcome& out) {
        std::printf("%s  %d. %s: %s\n", out.pass ? "PASS" : "FAIL", index, name,
                    out.detail.c_str());
        if (!out.pass) ++failures;
    };

    try {
        auto long_spec = fixtures::base_scenario(211, 4213, 0.01);
        long_spec.start = Date(2019, 2, 1);
        long_spec.site.cloud_attenuation = 0.9;
        const auto long_solar = solar_span(tallinn, long_spec.span());
        const auto long_data = make_dataset_with_solar(long_spec, long_solar);
        report(1, "residual floor", criterion_residual_floor(long_data));
        report(2, "five-month extrapolation", criterion_extrapolation(long_data));

        const auto solar180 = solar_span(
            tallinn, DateRange(Date(2019, 2, 1), Date(2019, 2, 1) + 179));
        report(3, "step recovery over 100 seeds",
               criterion_step_recovery(solar180));
        report(4, "overcompensation check",
               criterion_overcompensation(solar180));
        report(5, "oracle equivalence", criterion_oracle_equivalence(tallinn));
        report(6, "solar sanity", criterion_solar(tallinn));
        report(7, "calendar alignment", criterion_calendar());
        report(8, "determinism of command outputs",
               criterion_determinism(data_dir));
    } catch (const Error& e) {
        std::printf("FAIL  suite aborted: %s\n", e.what());
        return 1;
    }

    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
