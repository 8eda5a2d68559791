#include "loadsift/regress.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "linalg.hpp"
#include "loadsift/csv.hpp"
#include "loadsift/errors.hpp"

namespace loadsift {

namespace {

constexpr std::size_t N = kFactorCount;

std::string column_list(const std::vector<std::size_t>& cols) {
    std::string out;
    for (std::size_t c : cols) {
        if (!out.empty()) out += ", ";
        out += kFactorNames[c];
    }
    return out;
}

struct NormalEquations {
    std::vector<double> gram;  // N*N
    std::vector<double> rhs;   // N
};

NormalEquations accumulate(const FeatureMatrix& features,
                           const ConsumptionSeries& consumption,
                           const DateRange& window) {
    if (!features.index_of(window.first) || !features.index_of(window.last))
        fail("coverage-error", "features cover " + features.range().to_string() +
                                   ", training window is " + window.to_string());
    if (!consumption.index_of(window.first) || !consumption.index_of(window.last))
        fail("coverage-error",
             "consumption covers " + consumption.range().to_string() +
                 ", training window is " + window.to_string());

    NormalEquations eq;
    eq.gram.assign(N * N, 0.0);
    eq.rhs.assign(N, 0.0);
    const std::size_t f0 = *features.index_of(window.first);
    const std::size_t c0 = *consumption.index_of(window.first);
    for (std::size_t i = 0; i < static_cast<std::size_t>(window.length()); ++i) {
        const FeatureRow& row = features.rows[f0 + i];
        const double c = consumption.values[c0 + i];
        for (std::size_t mu = 0; mu < N; ++mu) {
            eq.rhs[mu] += c * row[mu];
            for (std::size_t nu = mu; nu < N; ++nu)
                eq.gram[mu * N + nu] += row[mu] * row[nu];
        }
    }
    for (std::size_t mu = 0; mu < N; ++mu)
        for (std::size_t nu = 0; nu < mu; ++nu)
            eq.gram[mu * N + nu] = eq.gram[nu * N + mu];
    return eq;
}

} // namespace

RegressionFit fit(const FeatureMatrix& features,
                  const ConsumptionSeries& consumption, const DateRange& window,
                  double condition_limit) {
    const NormalEquations eq = accumulate(features, consumption, window);
    const std::int64_t days = window.length();

    const detail::PivotedLdlt analysis = detail::pivoted_ldlt(eq.gram, N);
    if (analysis.rank < N) {
        std::vector<std::size_t> dependent(analysis.perm.begin() +
                                               static_cast<std::ptrdiff_t>(analysis.rank),
                                           analysis.perm.end());
        std::string detail = "factors are linearly dependent over " +
                             window.to_string() + "; collapsed columns: " +
                             column_list(dependent);
        if (days < static_cast<std::int64_t>(N))
            detail += " (window of " + std::to_string(days) +
                      " days cannot identify " + std::to_string(N) + " factors)";
        fail("rank-deficiency", detail);
    }

    // Cholesky is the fast path; the pivoted factorization doubles as the
    // fallback solver when a marginal pivot trips it up.
    std::vector<double> chol = eq.gram;
    std::array<double, N> alpha{};
    std::vector<double> solution;
    const bool spd = detail::cholesky_factor(chol, N);
    const auto solve = [&](const std::vector<double>& rhs) {
        return spd ? detail::cholesky_solve(chol, N, rhs)
                   : detail::ldlt_solve(analysis, N, rhs);
    };
    solution = solve(eq.rhs);

    // 1-norm condition estimate via explicit inverse columns; ten solves of a
    // 10x10 system cost nothing next to the accumulation pass.
    std::vector<double> inv(N * N, 0.0);
    std::vector<double> unit(N, 0.0);
    for (std::size_t j = 0; j < N; ++j) {
        unit[j] = 1.0;
        const std::vector<double> col = solve(unit);
        unit[j] = 0.0;
        for (std::size_t i = 0; i < N; ++i) inv[i * N + j] = col[i];
    }
    const double condition =
        detail::one_norm(eq.gram, N) * detail::one_norm(inv, N);

    if (!(condition < condition_limit)) {
        std::vector<std::size_t> suspect;
        for (std::size_t k = 0; k < N; ++k)
            if (analysis.pivots[k] < analysis.max_pivot / condition_limit)
                suspect.push_back(analysis.perm[k]);
        fail("rank-deficiency",
             "gram condition " + csv::format_double(condition) +
                 " exceeds limit " + csv::format_double(condition_limit) +
                 " over " + window.to_string() +
                 (suspect.empty() ? std::string()
                                  : "; near-dependent columns: " +
                                        column_list(suspect)));
    }

    for (std::size_t i = 0; i < N; ++i) {
        if (!std::isfinite(solution[i]))
            fail("rank-deficiency", "non-finite coefficient for " +
                                        std::string(kFactorNames[i]));
        alpha[i] = solution[i];
    }

    RegressionFit result;
    result.coefficients = alpha;
    result.training_start = window.first;
    result.training_end = window.last;
    result.gram_condition = condition;
    return result;
}

Prediction predict(const RegressionFit& fit, const FeatureMatrix& features,
                   double scale_factor) {
    if (!(scale_factor > 0.0))
        fail("parameter-error", "scale factor must be positive, got " +
                                    csv::format_double(scale_factor));
    Prediction p;
    p.start_date = features.start_date;
    p.scale_factor = scale_factor;
    p.values.reserve(features.rows.size());
    for (const FeatureRow& row : features.rows) {
        double v = 0.0;
        for (std::size_t mu = 0; mu < N; ++mu)
            v += fit.coefficients[mu] * row[mu];
        p.values.push_back(scale_factor * v);
    }
    return p;
}

double estimate_scale(const RegressionFit& fit, const FeatureMatrix& features,
                      const ConsumptionSeries& consumption,
                      const DateRange& estimation_window) {
    if (estimation_window.length() < 7)
        fail("parameter-error", "scale estimation window " +
                                    estimation_window.to_string() +
                                    " is shorter than 7 days");
    if (estimation_window.overlaps(fit.training_window()))
        fail("parameter-error", "scale estimation window " +
                                    estimation_window.to_string() +
                                    " overlaps the training window " +
                                    fit.training_window().to_string());
    if (!consumption.index_of(estimation_window.first) ||
        !consumption.index_of(estimation_window.last))
        fail("coverage-error",
             "consumption covers " + consumption.range().to_string() +
                 ", scale window is " + estimation_window.to_string());

    const Prediction p = predict(fit, features.slice(estimation_window), 1.0);
    const std::size_t c0 = *consumption.index_of(estimation_window.first);
    double observed = 0.0;
    double predicted = 0.0;
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        observed += consumption.values[c0 + i];
        predicted += p.values[i];
    }
    if (std::abs(predicted) <=
        std::numeric_limits<double>::min() * static_cast<double>(p.values.size()))
        fail("degenerate-model", "mean prediction over " +
                                     estimation_window.to_string() + " is zero");
    const double scale = observed / predicted;
    if (!(scale > 0.0) || !std::isfinite(scale))
        fail("degenerate-model", "scale estimate " + csv::format_double(scale) +
                                     " is not a positive finite number");
    return scale;
}

std::optional<std::string> near_solstice_warning(const DateRange& window) {
    const Date mid = window.first + window.length() / 2;
    std::int64_t nearest = std::numeric_limits<std::int64_t>::max();
    for (int y = mid.year() - 1; y <= mid.year() + 1; ++y)
        for (int m : {6, 12}) {
            const std::int64_t d = mid - Date(y, m, 21);
            nearest = std::min(nearest, d < 0 ? -d : d);
        }
    if (nearest > 45) return std::nullopt;
    return "training window midpoint is " + std::to_string(nearest) +
           " day(s) from a solstice; daylight changes slowly there, consider "
           "doubling the window";
}

void write_coefficients_csv(std::ostream& out, const RegressionFit& fit) {
    out << "#training_start=" << fit.training_start.to_string() << '\n';
    out << "#training_end=" << fit.training_end.to_string() << '\n';
    out << "#gram_condition=" << csv::format_double(fit.gram_condition) << '\n';
    out << "factor,alpha\n";
    for (std::size_t i = 0; i < kFactorCount; ++i)
        out << kFactorNames[i] << ',' << csv::format_double(fit.coefficients[i])
            << '\n';
}

RegressionFit read_coefficients_csv(std::istream& in) {
    RegressionFit fit;
    std::string line;
    bool seen_header = false;
    std::size_t next = 0;
    while (std::getline(in, line)) {
        const std::string t = csv::trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const auto eq = t.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = t.substr(1, eq - 1);
            const std::string value = t.substr(eq + 1);
            if (key == "training_start") fit.training_start = Date::parse(value);
            else if (key == "training_end") fit.training_end = Date::parse(value);
            else if (key == "gram_condition")
                csv::parse_double(value, fit.gram_condition);
            continue;
        }
        if (!seen_header) {
            if (t != "factor,alpha")
                fail("format-error", "coefficient CSV header must be "
                                     "'factor,alpha', got '" + t + "'");
            seen_header = true;
            continue;
        }
        const auto fields = csv::split(t);
        if (fields.size() != 2 || next >= kFactorCount ||
            fields[0] != kFactorNames[next])
            fail("format-error", "unexpected coefficient row '" + t + "'");
        if (!csv::parse_double(fields[1], fit.coefficients[next]))
            fail("format-error", "unreadable alpha in '" + t + "'");
        ++next;
    }
    if (next != kFactorCount)
        fail("format-error", "coefficient CSV has " + std::to_string(next) +
                                 " rows, expected " +
                                 std::to_string(kFactorCount));
    return fit;
}

} // namespace loadsift
