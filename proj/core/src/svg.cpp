#include "loadsift/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "loadsift/errors.hpp"

namespace loadsift::svg {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 430.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 838.0;
constexpr double kTop = 34.0;
constexpr double kBottom = 376.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b"};

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    double step = 0.5;
};

// Round the span outwards to a 1/2/2.5/5 x 10^k grid.
Axis nice_axis(double lo, double hi) {
    if (!(hi > lo)) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double span = hi - lo;
    const double raw_step = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
    double step = 10.0 * mag;
    for (double m : {1.0, 2.0, 2.5, 5.0})
        if (m * mag >= raw_step) {
            step = m * mag;
            break;
        }
    Axis axis;
    axis.step = step;
    axis.lo = std::floor(lo / step) * step;
    axis.hi = std::ceil(hi / step) * step;
    if (axis.lo == axis.hi) axis.hi += step;
    return axis;
}

void open_svg(std::ostringstream& out) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
        << kHeight << "\" font-family=\"sans-serif\">\n"
        << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
}

void draw_frame(std::ostringstream& out, const std::string& title,
                const std::string& y_label, const Axis& axis) {
    if (!title.empty())
        out << "<text x=\"" << coord((kLeft + kRight) / 2.0)
            << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">"
            << escape(title) << "</text>\n";
    for (double v = axis.lo; v <= axis.hi + axis.step * 0.5; v += axis.step) {
        const double y = kBottom - (v - axis.lo) / (axis.hi - axis.lo) *
                                       (kBottom - kTop);
        out << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(y)
            << "\" x2=\"" << coord(kRight) << "\" y2=\"" << coord(y)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << coord(kLeft - 8) << "\" y=\"" << coord(y + 4)
            << "\" text-anchor=\"end\" font-size=\"11\">" << tick_label(v)
            << "</text>\n";
    }
    if (axis.lo < 0.0 && axis.hi > 0.0) {
        const double y0 = kBottom + axis.lo / (axis.hi - axis.lo) *
                                        (kBottom - kTop);
        out << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(y0)
            << "\" x2=\"" << coord(kRight) << "\" y2=\"" << coord(y0)
            << "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
    }
    out << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(kTop)
        << "\" x2=\"" << coord(kLeft) << "\" y2=\"" << coord(kBottom)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(kBottom)
        << "\" x2=\"" << coord(kRight) << "\" y2=\"" << coord(kBottom)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    if (!y_label.empty())
        out << "<text x=\"16\" y=\"" << coord((kTop + kBottom) / 2.0)
            << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
            << coord((kTop + kBottom) / 2.0) << ")\">" << escape(y_label)
            << "</text>\n";
}

} // namespace

std::string render_line_chart(const LineChart& chart) {
    if (chart.series.empty() || chart.series.front().values.empty())
        fail("parameter-error", "line chart needs at least one non-empty series");
    std::size_t n = 0;
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (const LineSeries& s : chart.series) {
        n = std::max(n, s.values.size());
        for (double v : s.values) {
            if (!any) {
                lo = hi = v;
                any = true;
            }
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    const Axis axis = nice_axis(lo, hi);

    const auto x_of = [&](std::size_t i) {
        if (n == 1) return (kLeft + kRight) / 2.0;
        return kLeft + static_cast<double>(i) / static_cast<double>(n - 1) *
                           (kRight - kLeft);
    };
    const auto y_of = [&](double v) {
        return kBottom - (v - axis.lo) / (axis.hi - axis.lo) * (kBottom - kTop);
    };

    std::ostringstream out;
    open_svg(out);
    draw_frame(out, chart.title, chart.y_label, axis);

    // Date ticks: up to eight, first day anchored.
    const std::size_t tick_step = std::max<std::size_t>(1, n / 8);
    for (std::size_t i = 0; i < n; i += tick_step) {
        const double x = x_of(i);
        out << "<line x1=\"" << coord(x) << "\" y1=\"" << coord(kBottom)
            << "\" x2=\"" << coord(x) << "\" y2=\"" << coord(kBottom + 5)
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << coord(x) << "\" y=\"" << coord(kBottom + 18)
            << "\" text-anchor=\"middle\" font-size=\"10\">"
            << (chart.start_date + static_cast<std::int64_t>(i)).to_string()
            << "</text>\n";
    }

    if (chart.marker) {
        const std::int64_t off = *chart.marker - chart.start_date;
        if (off >= 0 && off < static_cast<std::int64_t>(n)) {
            const double x = x_of(static_cast<std::size_t>(off));
            out << "<line class=\"marker\" x1=\"" << coord(x) << "\" y1=\""
                << coord(kTop) << "\" x2=\"" << coord(x) << "\" y2=\""
                << coord(kBottom)
                << "\" stroke=\"#555555\" stroke-width=\"1.5\" "
                   "stroke-dasharray=\"6,4\"/>\n";
            out << "<text x=\"" << coord(x + 4) << "\" y=\"" << coord(kTop + 12)
                << "\" font-size=\"11\">" << chart.marker->to_string()
                << "</text>\n";
        }
    }

    for (std::size_t s = 0; s < chart.series.size(); ++s) {
        const LineSeries& series = chart.series[s];
        const char* color = kPalette[s % std::size(kPalette)];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series.values.size(); ++i) {
            if (i) out << ' ';
            out << coord(x_of(i)) << ',' << coord(y_of(series.values[i]));
        }
        out << "\"/>\n";
        const double ly = kTop + 14 + 16 * static_cast<double>(s);
        out << "<line x1=\"" << coord(kRight - 150) << "\" y1=\"" << coord(ly)
            << "\" x2=\"" << coord(kRight - 126) << "\" y2=\"" << coord(ly)
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << coord(kRight - 120) << "\" y=\"" << coord(ly + 4)
            << "\" font-size=\"11\">" << escape(series.label) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_bar_chart(const BarChart& chart) {
    if (chart.groups.empty())
        fail("parameter-error", "bar chart needs at least one group");

    double lo = 0.0, hi = 0.0;
    std::vector<std::string> bar_labels;
    for (const BarGroup& g : chart.groups)
        for (const auto& [label, value] : g.bars) {
            lo = std::min(lo, value);
            hi = std::max(hi, value);
            if (std::find(bar_labels.begin(), bar_labels.end(), label) ==
                bar_labels.end())
                bar_labels.push_back(label);
        }
    const Axis axis = nice_axis(lo, hi);
    const auto y_of = [&](double v) {
        return kBottom - (v - axis.lo) / (axis.hi - axis.lo) * (kBottom - kTop);
    };

    std::map<std::string, const char*> color_of;
    for (std::size_t i = 0; i < bar_labels.size(); ++i)
        color_of[bar_labels[i]] = kPalette[i % std::size(kPalette)];

    std::ostringstream out;
    open_svg(out);
    draw_frame(out, chart.title, chart.y_label, axis);

    const double group_width =
        (kRight - kLeft) / static_cast<double>(chart.groups.size());
    const double y_zero = y_of(std::clamp(0.0, axis.lo, axis.hi));
    for (std::size_t g = 0; g < chart.groups.size(); ++g) {
        const BarGroup& group = chart.groups[g];
        const double gx = kLeft + group_width * static_cast<double>(g);
        const double slot =
            group_width * 0.8 / std::max<std::size_t>(1, group.bars.size());
        for (std::size_t b = 0; b < group.bars.size(); ++b) {
            const auto& [label, value] = group.bars[b];
            const double x =
                gx + group_width * 0.1 + slot * static_cast<double>(b);
            const double y = y_of(value);
            out << "<rect x=\"" << coord(x + slot * 0.1) << "\" y=\""
                << coord(std::min(y, y_zero)) << "\" width=\""
                << coord(slot * 0.8) << "\" height=\""
                << coord(std::abs(y - y_zero)) << "\" fill=\"" << color_of[label]
                << "\"/>\n";
        }
        out << "<text x=\"" << coord(gx + group_width / 2.0) << "\" y=\""
            << coord(kBottom + 18) << "\" text-anchor=\"middle\" "
            << "font-size=\"11\">" << escape(group.label) << "</text>\n";
    }

    double lx = kLeft + 8;
    for (const std::string& label : bar_labels) {
        out << "<rect x=\"" << coord(lx) << "\" y=\"" << coord(kTop + 6)
            << "\" width=\"12\" height=\"12\" fill=\"" << color_of[label]
            << "\"/>\n";
        out << "<text x=\"" << coord(lx + 16) << "\" y=\"" << coord(kTop + 16)
            << "\" font-size=\"11\">" << escape(label) << "</text>\n";
        lx += 26 + 7.0 * static_cast<double>(label.size());
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace loadsift::svg
