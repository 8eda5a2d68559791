#include "loadsift/holidays.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "loadsift/csv.hpp"
#include "loadsift/errors.hpp"

namespace loadsift {

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

std::string join_from(const std::vector<std::string>& tokens, std::size_t from) {
    std::string out;
    for (std::size_t i = from; i < tokens.size(); ++i) {
        if (!out.empty()) out += ' ';
        out += tokens[i];
    }
    return out;
}

} // namespace

HolidayCalendar HolidayCalendar::parse(std::istream& in) {
    HolidayCalendar cal;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto tokens = split_tokens(line);
        if (tokens.empty() || tokens[0][0] == '#') continue;
        const std::string& kind = tokens[0];
        const auto where = [&] { return " (line " + std::to_string(line_no) + ")"; };
        if (kind == "fixed") {
            if (tokens.size() < 3)
                fail("format-error", "fixed holiday needs MM-DD and a name" + where());
            int m = 0, d = 0;
            if (tokens[1].size() != 5 || tokens[1][2] != '-' ||
                !csv::parse_int(tokens[1].substr(0, 2), m) ||
                !csv::parse_int(tokens[1].substr(3, 2), d) || m < 1 || m > 12 ||
                d < 1 || d > 31)
                fail("format-error",
                     "fixed holiday date must be MM-DD, got '" + tokens[1] +
                         "'" + where());
            cal.fixed.push_back({m, d, join_from(tokens, 2)});
        } else if (kind == "movable") {
            if (tokens.size() < 3)
                fail("format-error",
                     "movable holiday needs YYYY-MM-DD and a name" + where());
            cal.movable.push_back({Date::parse(tokens[1]), join_from(tokens, 2)});
        } else if (kind == "align") {
            if (tokens.size() < 4)
                fail("format-error",
                     "align needs two date ranges and a name" + where());
            cal.alignments.push_back({DateRange::parse(tokens[1]),
                                      DateRange::parse(tokens[2]),
                                      join_from(tokens, 3)});
        } else {
            fail("format-error", "unknown holiday entry '" + kind + "'" + where());
        }
    }

    // Alignment ranges must not overlap within a year.
    std::vector<DateRange> ranges;
    for (const AlignmentPair& p : cal.alignments) {
        ranges.push_back(p.range_a);
        ranges.push_back(p.range_b);
    }
    for (std::size_t i = 0; i < ranges.size(); ++i)
        for (std::size_t j = i + 1; j < ranges.size(); ++j)
            if (ranges[i].first.year() == ranges[j].first.year() &&
                ranges[i].overlaps(ranges[j]))
                fail("calendar-error", "alignment ranges " +
                                           ranges[i].to_string() + " and " +
                                           ranges[j].to_string() + " overlap");
    return cal;
}

HolidayCalendar HolidayCalendar::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("holidays-file-not-found", path);
    return parse(in);
}

namespace {

bool contains_feb29(const ResidualSeries& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Date d = s.date_at(i);
        if (d.month() == 2 && d.day() == 29) return true;
    }
    return false;
}

/// First date in the series with the given month and day, if any.
std::optional<Date> find_month_day(const ResidualSeries& s, int month, int day) {
    for (int y = s.range().first.year(); y <= s.range().last.year(); ++y) {
        if (month == 2 && day == 29 && !is_leap_year(y)) continue;
        const Date d(y, month, day);
        if (s.index_of(d)) return d;
    }
    return std::nullopt;
}

double range_mean(const ResidualSeries& s, const DateRange& range) {
    double sum = 0.0;
    for (Date d = range.first; d <= range.last; ++d) {
        const auto idx = s.index_of(d);
        if (!idx)
            fail("calendar-error", "alignment date " + d.to_string() +
                                       " outside residual series " +
                                       s.range().to_string());
        sum += s.normalized[*idx];
    }
    return sum / static_cast<double>(range.length());
}

/// Maps a range's month-days into another series' years.
DateRange map_range_into(const ResidualSeries& target, const DateRange& range) {
    const auto first = find_month_day(target, range.first.month(), range.first.day());
    const auto last = find_month_day(target, range.last.month(), range.last.day());
    if (!first || !last || !(*first <= *last))
        fail("calendar-error", "cannot map range " + range.to_string() +
                                   " into series " + target.range().to_string());
    return DateRange(*first, *last);
}

Date positional_date(const DateRange& range, std::int64_t offset) {
    return range.first + std::min(offset, range.length() - 1);
}

} // namespace

DifferenceSeries year_difference(const ResidualSeries& series_a,
                                 const ResidualSeries& series_b,
                                 const HolidayCalendar& calendar) {
    const bool a_leap = contains_feb29(series_a);
    const bool b_leap = contains_feb29(series_b);
    // The leap-year side drives the pairing so the partner's February 28 can
    // be recorded twice; by default the B side drives.
    const bool drive_b = !(a_leap && !b_leap);
    const ResidualSeries& drive = drive_b ? series_b : series_a;
    const ResidualSeries& other = drive_b ? series_a : series_b;
    const bool other_leap = drive_b ? a_leap : b_leap;

    DifferenceSeries out;
    for (std::size_t i = 0; i < drive.size(); ++i) {
        const Date dd = drive.date_at(i);
        int month = dd.month();
        int day = dd.day();
        std::string label;
        if (month == 2 && day == 29 && !other_leap) {
            day = 28;
            label = "leap-feb28";
        }
        const auto partner = find_month_day(other, month, day);
        if (!partner) continue;
        const double rho_drive = drive.normalized[i];
        const double rho_other = other.normalized[*other.index_of(*partner)];
        DifferenceSlot slot;
        if (drive_b) {
            slot.date_a = *partner;
            slot.date_b = dd;
            slot.difference = rho_other - rho_drive;  // a - b
        } else {
            slot.date_a = dd;
            slot.date_b = *partner;
            slot.difference = rho_drive - rho_other;  // a - b
        }
        slot.label = label;
        out.slots.push_back(slot);
    }

    for (const AlignmentPair& pair : calendar.alignments) {
        DateRange in_a = pair.range_a;
        DateRange in_b = pair.range_b;
        const bool direct = series_a.range().contains(pair.range_a) &&
                            series_b.range().contains(pair.range_b);
        const bool reversed = series_a.range().contains(pair.range_b) &&
                              series_b.range().contains(pair.range_a);
        if (!direct && !reversed) {
            // A pair whose years match the compared series but whose dates
            // are not covered is a real calendar problem; pairs declared for
            // other year pairs are simply not ours.
            const auto year_in = [](int year, const ResidualSeries& s) {
                return year >= s.range().first.year() &&
                       year <= s.range().last.year();
            };
            bool relevant = false;
            for (int year : {pair.range_a.first.year(), pair.range_a.last.year(),
                             pair.range_b.first.year(), pair.range_b.last.year()})
                relevant = relevant || year_in(year, series_a) ||
                           year_in(year, series_b);
            if (relevant)
                fail("calendar-error", "alignment '" + pair.name +
                                           "' ranges are not covered by the "
                                           "compared series");
            continue;
        }
        if (reversed) std::swap(in_a, in_b);

        // As declared, and with the ranges swapped across the two years.
        const DateRange swapped_a = map_range_into(series_a, in_b);
        const DateRange swapped_b = map_range_into(series_b, in_a);
        const double direct_diff =
            range_mean(series_a, in_a) - range_mean(series_b, in_b);
        const double swapped_diff =
            range_mean(series_a, swapped_a) - range_mean(series_b, swapped_b);

        for (DifferenceSlot& slot : out.slots) {
            const Date key = drive_b ? slot.date_b : slot.date_a;
            const DateRange& direct_range = drive_b ? in_b : in_a;
            const DateRange& swap_range = drive_b ? swapped_b : swapped_a;
            if (direct_range.contains(key)) {
                slot.difference = direct_diff;
                slot.label = "aligned:" + pair.name;
                const std::int64_t off = key - direct_range.first;
                if (drive_b)
                    slot.date_a = positional_date(in_a, off);
                else
                    slot.date_b = positional_date(in_b, off);
            } else if (swap_range.contains(key)) {
                slot.difference = swapped_diff;
                slot.label = "aligned-swap:" + pair.name;
                const std::int64_t off = key - swap_range.first;
                if (drive_b)
                    slot.date_a = positional_date(swapped_a, off);
                else
                    slot.date_b = positional_date(swapped_b, off);
            }
        }
    }
    return out;
}

} // namespace loadsift
