#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "loadsift/date.hpp"
#include "loadsift/residuals.hpp"

namespace loadsift {

struct FixedHoliday {
    int month = 1;
    int day = 1;
    std::string name;
};

struct MovableHoliday {
    Date date;
    std::string name;
};

/// Explicit cross-year pairing of movable-holiday date ranges; the two
/// ranges may have different lengths.
struct AlignmentPair {
    DateRange range_a;
    DateRange range_b;
    std::string name;
};

/**
 * Holiday calendar file, one entry per line:
 *   fixed MM-DD name...
 *   movable YYYY-MM-DD name...
 *   align YYYY-MM-DD..YYYY-MM-DD YYYY-MM-DD..YYYY-MM-DD name...
 * Blank lines and lines starting with '#' are ignored. Alignment ranges
 * must not overlap within a year.
 */
struct HolidayCalendar {
    std::vector<FixedHoliday> fixed;
    std::vector<MovableHoliday> movable;
    std::vector<AlignmentPair> alignments;

    static HolidayCalendar parse(std::istream& in);
    static HolidayCalendar parse_file(const std::string& path);
};

struct DifferenceSlot {
    Date date_a;
    Date date_b;
    double difference = 0.0;  // rho_a - rho_b
    std::string label;        // "", "leap-feb28", "aligned:...", "aligned-swap:..."
};

struct DifferenceSeries {
    std::vector<DifferenceSlot> slots;

    std::vector<double> values() const {
        std::vector<double> v;
        v.reserve(slots.size());
        for (const DifferenceSlot& s : slots) v.push_back(s.difference);
        return v;
    }
};

/**
 * Pairs two residual series by month and day and emits rho_a - rho_b per
 * paired slot. When exactly one series contains February 29, that series
 * drives the pairing and the other side's February 28 is used twice, so the
 * output length equals the leap-year series length. Each alignment pair
 * replaces day-wise differences inside its ranges with the difference of
 * range means - once as declared and once with the ranges swapped across
 * years - labelling the affected slots.
 */
DifferenceSeries year_difference(const ResidualSeries& series_a,
                                 const ResidualSeries& series_b,
                                 const HolidayCalendar& calendar = {});

} // namespace loadsift
