#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "loadsift/consumption.hpp"
#include "loadsift/date.hpp"

namespace loadsift {

/// Day count of the "one-month" averaging window, fixed at 30 for
/// determinism across month lengths.
inline constexpr int kAveragingWindowDays = 30;

/**
 * Raw residuals r_i, their normalized counterparts rho_i, and the local-mean
 * denominators <c_i> that relate them. The triple is kept exactly
 * consistent: raw_i == normalized_i * denominators_i bit for bit.
 */
struct ResidualSeries {
    Date start_date;
    std::vector<double> raw;          // kWh
    std::vector<double> normalized;   // dimensionless fractions
    std::vector<double> denominators; // kWh, > 0
    std::optional<Date> onset;

    std::size_t size() const { return raw.size(); }
    Date date_at(std::size_t i) const {
        return start_date + static_cast<std::int64_t>(i);
    }
    std::optional<std::size_t> index_of(Date d) const {
        const std::int64_t off = d - start_date;
        if (off < 0 || off >= static_cast<std::int64_t>(raw.size()))
            return std::nullopt;
        return static_cast<std::size_t>(off);
    }
    DateRange range() const {
        return DateRange(start_date,
                         start_date + static_cast<std::int64_t>(raw.size()) - 1);
    }
};

/**
 * Normalizes raw residuals by a local mean of consumption. Before the onset
 * (or everywhere when no onset is given) the denominator is the mean over a
 * 30-day window centred on the day, truncated at the consumption series
 * edges. From the onset onwards it freezes to the mean over the 30 days
 * immediately preceding the onset, so post-onset anomalies cannot contaminate
 * their own yardstick. An onset with fewer than 30 days of history is an
 * insufficient-history error.
 */
ResidualSeries normalize(Date start_date, std::span<const double> raw_residuals,
                         const ConsumptionSeries& consumption,
                         std::optional<Date> onset);

/// Centred moving average with edge truncation; the window must be odd.
std::vector<double> moving_average(std::span<const double> values,
                                   int window = 7);

/// Arithmetic mean of the normalized residuals over an inclusive date range.
double period_summary(const ResidualSeries& series, const DateRange& range);

/// `date,raw_kwh,denominator_kwh,rho` with a leading `#onset=` comment.
void write_residuals_csv(std::ostream& out, const ResidualSeries& series);
ResidualSeries read_residuals_csv(std::istream& in);

} // namespace loadsift
