#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "loadsift/consumption.hpp"
#include "loadsift/date.hpp"
#include "loadsift/features.hpp"

namespace loadsift {

/// Coefficients of the zero-intercept least-squares model, one per factor,
/// in kWh per factor unit.
struct RegressionFit {
    std::array<double, kFactorCount> coefficients{};
    Date training_start;
    Date training_end;
    double gram_condition = 0.0;  // 1-norm condition estimate of the Gram matrix

    DateRange training_window() const {
        return DateRange(training_start, training_end);
    }
};

struct Prediction {
    Date start_date;
    std::vector<double> values;  // kWh per day
    double scale_factor = 1.0;

    Date date_at(std::size_t i) const {
        return start_date + static_cast<std::int64_t>(i);
    }
    DateRange range() const {
        return DateRange(start_date,
                         start_date + static_cast<std::int64_t>(values.size()) - 1);
    }
};

/**
 * Solves the 10x10 normal equations G a = b with G = F^T F and b = F^T c
 * over the training window. There is deliberately no intercept column: the
 * seven weekday indicators already sum to the constant vector, so a free
 * constant would make the system singular.
 *
 * The Gram matrix is factored by Cholesky with a diagonally pivoted LDL^T
 * fallback; the 1-norm condition estimate is recorded on the fit. A window
 * whose factors are linearly dependent (for example one with no Sundays)
 * fails with a rank-deficiency error naming the collapsed columns rather
 * than silently pseudo-inverting.
 */
RegressionFit fit(const FeatureMatrix& features,
                  const ConsumptionSeries& consumption, const DateRange& window,
                  double condition_limit = 1e12);

/// predicted_i = scale_factor * sum_mu alpha_mu f_i^mu over all feature rows.
Prediction predict(const RegressionFit& fit, const FeatureMatrix& features,
                   double scale_factor = 1.0);

/**
 * Global rescaling factor for extrapolation into a shifted regime: the ratio
 * of mean observed consumption to mean unscaled prediction over an
 * estimation window disjoint from the training window (>= 7 days).
 */
double estimate_scale(const RegressionFit& fit, const FeatureMatrix& features,
                      const ConsumptionSeries& consumption,
                      const DateRange& estimation_window);

/// Training windows centred near a solstice need roughly twice the length;
/// returns a warning when the midpoint is within 45 days of one.
std::optional<std::string> near_solstice_warning(const DateRange& window);

/// Coefficient dump: `factor,alpha` rows in fixed column order, training
/// metadata as leading `#` comments.
void write_coefficients_csv(std::ostream& out, const RegressionFit& fit);
RegressionFit read_coefficients_csv(std::istream& in);

} // namespace loadsift
