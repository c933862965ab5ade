#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace modulo {

struct MalformedTime : std::runtime_error {
    explicit MalformedTime(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfRange : std::runtime_error {
    explicit OutOfRange(const std::string& what) : std::runtime_error(what) {}
};

/// Minute-resolution clock time, minutes since midnight in [0, 1440).
struct TimeOfDay {
    int minutes = 0;

    constexpr int hour() const { return minutes / 60; }
    constexpr int minute() const { return minutes % 60; }

    auto operator<=>(const TimeOfDay&) const = default;
};

/// Half-open interval [start, end); back-to-back intervals do not overlap.
struct TimeInterval {
    TimeOfDay start;
    TimeOfDay end;

    constexpr int length() const { return end.minutes - start.minutes; }
    constexpr bool contains(TimeOfDay t) const { return start <= t && t < end; }
    constexpr bool contains(const TimeInterval& other) const
    {
        return start <= other.start && other.end <= end;
    }
    constexpr bool overlaps(const TimeInterval& other) const
    {
        return start < other.end && other.start < end;
    }

    auto operator<=>(const TimeInterval&) const = default;
};

TimeOfDay make_time(int hour, int minute);
TimeInterval make_interval(TimeOfDay start, TimeOfDay end);

enum class Weekday { Monday, Tuesday, Wednesday, Thursday, Friday, Saturday, Sunday };

inline constexpr Weekday all_weekdays[] = {
    Weekday::Monday,    Weekday::Tuesday, Weekday::Wednesday, Weekday::Thursday,
    Weekday::Friday,    Weekday::Saturday, Weekday::Sunday,
};

std::string_view weekday_name(Weekday d);

/// Case-sensitive full names ("Monday".."Sunday"); throws MalformedTime otherwise.
Weekday parse_weekday(std::string_view text);

/// Accepts 12-hour "H:MM AM/PM" (space optional) and 24-hour "H:MM"/"HH:MM".
/// "12:00AM" is midnight, "12:00PM" is noon.
TimeOfDay parse_time_of_day(std::string_view text);

/// Canonical 12-hour form, no leading zero on the hour, no space: "9:22AM".
std::string format_time_12h(TimeOfDay t);

/// 24-hour form, no leading zero on the hour: "9:00", "17:00".
std::string format_time_24h(TimeOfDay t);

/// Maximal free sub-intervals of `window` not covered by any busy interval.
/// Result is disjoint, sorted by start. Busy intervals may overlap each other.
std::vector<TimeInterval> free_intervals(const std::vector<TimeInterval>& busy,
                                         const TimeInterval& window);

/// Sorted union of possibly-overlapping intervals.
std::vector<TimeInterval> merge_intervals(std::vector<TimeInterval> intervals);

}  // namespace modulo
