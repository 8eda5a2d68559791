#include "loadsift/residuals.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "loadsift/csv.hpp"
#include "loadsift/errors.hpp"

namespace loadsift {

namespace {

double window_mean(const std::vector<double>& values, std::int64_t lo,
                   std::int64_t hi) {
    lo = std::max<std::int64_t>(lo, 0);
    hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(values.size()) - 1);
    double sum = 0.0;
    for (std::int64_t i = lo; i <= hi; ++i)
        sum += values[static_cast<std::size_t>(i)];
    return sum / static_cast<double>(hi - lo + 1);
}

} // namespace

ResidualSeries normalize(Date start_date, std::span<const double> raw_residuals,
                         const ConsumptionSeries& consumption,
                         std::optional<Date> onset) {
    const std::size_t n = raw_residuals.size();
    if (n == 0) fail("parameter-error", "no residuals to normalize");
    const DateRange span(start_date,
                         start_date + static_cast<std::int64_t>(n) - 1);
    if (!consumption.index_of(span.first) || !consumption.index_of(span.last))
        fail("coverage-error", "consumption covers " +
                                   consumption.range().to_string() +
                                   ", residuals span " + span.to_string());

    double frozen = 0.0;
    if (onset) {
        const auto idx = consumption.index_of(*onset);
        if (!idx)
            fail("coverage-error", "onset " + onset->to_string() +
                                       " outside consumption series " +
                                       consumption.range().to_string());
        if (*idx < static_cast<std::size_t>(kAveragingWindowDays))
            fail("insufficient-history",
                 "onset " + onset->to_string() + " has only " +
                     std::to_string(*idx) + " day(s) of history, need " +
                     std::to_string(kAveragingWindowDays));
        frozen = window_mean(consumption.values,
                             static_cast<std::int64_t>(*idx) - kAveragingWindowDays,
                             static_cast<std::int64_t>(*idx) - 1);
    }

    ResidualSeries out;
    out.start_date = start_date;
    out.onset = onset;
    out.raw.resize(n);
    out.normalized.resize(n);
    out.denominators.resize(n);

    // A 30-day window centred on day i: 14 days before through 15 after.
    const int before = (kAveragingWindowDays - 1) / 2;
    const int after = kAveragingWindowDays - 1 - before;
    for (std::size_t i = 0; i < n; ++i) {
        const Date d = span.first + static_cast<std::int64_t>(i);
        double denom;
        if (onset && d >= *onset) {
            denom = frozen;
        } else {
            const std::int64_t c =
                static_cast<std::int64_t>(*consumption.index_of(d));
            denom = window_mean(consumption.values, c - before, c + after);
        }
        if (!(denom > 0.0))
            fail("validation-error", "averaging denominator for " +
                                         d.to_string() + " is not positive");
        const double rho = raw_residuals[i] / denom;
        out.normalized[i] = rho;
        out.denominators[i] = denom;
        // Re-derive raw from the rounded quotient so raw == rho * denom holds
        // exactly; the adjustment is at most one ulp of the input.
        out.raw[i] = rho * denom;
    }
    return out;
}

std::vector<double> moving_average(std::span<const double> values, int window) {
    if (window < 1 || window % 2 == 0)
        fail("parameter-error", "moving-average window must be odd and >= 1, got " +
                                    std::to_string(window));
    const std::int64_t half = window / 2;
    const std::int64_t n = static_cast<std::int64_t>(values.size());
    std::vector<double> out(values.size());
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t lo = std::max<std::int64_t>(0, i - half);
        const std::int64_t hi = std::min<std::int64_t>(n - 1, i + half);
        double sum = 0.0;
        for (std::int64_t j = lo; j <= hi; ++j)
            sum += values[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

double period_summary(const ResidualSeries& series, const DateRange& range) {
    const auto lo = series.index_of(range.first);
    const auto hi = series.index_of(range.last);
    if (!lo || !hi)
        fail("parameter-error", "summary range " + range.to_string() +
                                    " outside residual series " +
                                    series.range().to_string());
    double sum = 0.0;
    for (std::size_t i = *lo; i <= *hi; ++i) sum += series.normalized[i];
    return sum / static_cast<double>(*hi - *lo + 1);
}

void write_residuals_csv(std::ostream& out, const ResidualSeries& series) {
    out << "#onset=" << (series.onset ? series.onset->to_string() : "none")
        << '\n';
    out << "date,raw_kwh,denominator_kwh,rho\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        out << series.date_at(i).to_string() << ','
            << csv::format_double(series.raw[i]) << ','
            << csv::format_double(series.denominators[i]) << ','
            << csv::format_double(series.normalized[i]) << '\n';
}

ResidualSeries read_residuals_csv(std::istream& in) {
    ResidualSeries series;
    std::string line;
    bool seen_header = false;
    bool first_row = true;
    while (std::getline(in, line)) {
        const std::string t = csv::trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            if (t.rfind("#onset=", 0) == 0) {
                const std::string v = t.substr(7);
                if (v != "none") series.onset = Date::parse(v);
            }
            continue;
        }
        if (!seen_header) {
            if (t != "date,raw_kwh,denominator_kwh,rho")
                fail("format-error", "unexpected residual CSV header '" + t + "'");
            seen_header = true;
            continue;
        }
        const auto fields = csv::split(t);
        if (fields.size() != 4)
            fail("format-error", "unexpected residual row '" + t + "'");
        const Date d = Date::parse(fields[0]);
        if (first_row) {
            series.start_date = d;
            first_row = false;
        } else if (d != series.start_date +
                            static_cast<std::int64_t>(series.raw.size())) {
            fail("format-error", "residual CSV dates are not contiguous at " +
                                     fields[0]);
        }
        double raw = 0.0, denom = 0.0, rho = 0.0;
        if (!csv::parse_double(fields[1], raw) ||
            !csv::parse_double(fields[2], denom) ||
            !csv::parse_double(fields[3], rho))
            fail("format-error", "unreadable residual row '" + t + "'");
        series.raw.push_back(raw);
        series.denominators.push_back(denom);
        series.normalized.push_back(rho);
    }
    if (series.raw.empty()) fail("format-error", "residual CSV has no rows");
    return series;
}

} // namespace loadsift
