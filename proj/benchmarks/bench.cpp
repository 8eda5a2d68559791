#include <benchmark/benchmark.h>

#include "loadsift/regress.hpp"
#include "loadsift/residuals.hpp"
#include "loadsift/solar.hpp"
#include "loadsift/synth.hpp"
#include "support/fixtures.hpp"

using namespace loadsift;

namespace {

const fixtures::Dataset& dataset_365() {
    static const fixtures::Dataset data =
        fixtures::make_dataset(fixtures::base_scenario(365, 1, 0.01));
    return data;
}

void BM_Fit30Days(benchmark::State& state) {
    const auto& data = dataset_365();
    const DateRange window(Date(2019, 2, 1), Date(2019, 3, 2));
    for (auto _ : state) {
        RegressionFit f = fit(data.features, data.consumption, window);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_Fit30Days);

void BM_PredictYear(benchmark::State& state) {
    const auto& data = dataset_365();
    const RegressionFit f = fit(data.features, data.consumption,
                                DateRange(Date(2019, 2, 1), Date(2019, 3, 2)));
    for (auto _ : state) {
        Prediction p = predict(f, data.features);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_PredictYear);

void BM_SolarDay(benchmark::State& state) {
    const Site site = fixtures::tallinn_site();
    Date d(2019, 1, 1);
    for (auto _ : state) {
        SolarDay day = solar_day(site, d);
        benchmark::DoNotOptimize(day);
        ++d;
        if (d > Date(2020, 12, 31)) d = Date(2019, 1, 1);
    }
}
BENCHMARK(BM_SolarDay);

void BM_NormalizeYear(benchmark::State& state) {
    const auto& data = dataset_365();
    const RegressionFit f = fit(data.features, data.consumption,
                                DateRange(Date(2019, 2, 1), Date(2019, 3, 2)));
    const Prediction p = predict(f, data.features);
    std::vector<double> raw(p.values.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        raw[i] = data.consumption.values[i] - p.values[i];
    for (auto _ : state) {
        ResidualSeries rs = normalize(data.spec.start, raw, data.consumption,
                                      Date(2019, 6, 1));
        benchmark::DoNotOptimize(rs);
    }
}
BENCHMARK(BM_NormalizeYear);

void BM_GenerateScenarioYear(benchmark::State& state) {
    const auto spec = fixtures::base_scenario(365, 2, 0.01);
    for (auto _ : state) {
        auto weather = generate_weather(spec);
        benchmark::DoNotOptimize(weather);
    }
}
BENCHMARK(BM_GenerateScenarioYear);

} // namespace

BENCHMARK_MAIN();
