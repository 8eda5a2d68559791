#pragma once

#include <string>
#include <string_view>

#include "loadsift/date.hpp"

namespace loadsift {

/**
 * Maps local civil time to UTC. Two rule kinds are supported:
 *   - a fixed offset, written `+02:00` / `-05:30`;
 *   - the EU daylight-saving rule on top of a standard offset, written
 *     `EU+02:00` (one hour added between 01:00 UTC on the last Sunday of
 *     March and 01:00 UTC on the last Sunday of October).
 *
 * The rule is configuration, never inferred from the data.
 */
class UtcOffset {
public:
    UtcOffset() = default;

    static UtcOffset fixed(int minutes);
    static UtcOffset eu_rule(int standard_minutes);
    static UtcOffset parse(std::string_view text);

    /// Offset in minutes east of UTC that applies at the given local civil
    /// instant. `local_hour` may be fractional.
    int offset_minutes(Date local_date, double local_hour) const;

    std::string to_string() const;

    bool operator==(const UtcOffset&) const = default;

private:
    int standard_minutes_ = 0;
    bool eu_dst_ = false;
};

/// Last given weekday (Monday = 0) of a month.
Date last_weekday_of_month(int year, int month, int weekday_index);

} // namespace loadsift
