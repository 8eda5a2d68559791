#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loadsift/date.hpp"

namespace loadsift::svg {

/// One line on a date-indexed chart. All series share the chart's start
/// date; values are plotted one per day.
struct LineSeries {
    std::string label;
    std::vector<double> values;
};

struct LineChart {
    std::string title;
    std::string y_label;
    Date start_date;
    std::vector<LineSeries> series;
    std::optional<Date> marker;  // vertical dashed line, e.g. an onset date
};

/// Deterministic text output: fixed canvas, fixed number formatting, no
/// timestamps - the same chart data always serialises to identical bytes.
std::string render_line_chart(const LineChart& chart);

struct BarGroup {
    std::string label;  // e.g. region
    std::vector<std::pair<std::string, double>> bars;  // (class, value)
};

struct BarChart {
    std::string title;
    std::string y_label;
    std::vector<BarGroup> groups;
};

std::string render_bar_chart(const BarChart& chart);

} // namespace loadsift::svg
