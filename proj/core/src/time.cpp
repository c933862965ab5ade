#include "modulo/time.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>

namespace modulo {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

// Parses 1-2 digits; advances pos. Returns -1 on failure.
int take_digits(std::string_view s, size_t& pos, int max_digits)
{
    int value = 0;
    int taken = 0;
    while (pos < s.size() && taken < max_digits &&
           std::isdigit(static_cast<unsigned char>(s[pos]))) {
        value = value * 10 + (s[pos] - '0');
        ++pos;
        ++taken;
    }
    return taken == 0 ? -1 : value;
}

}  // namespace

TimeOfDay make_time(int hour, int minute)
{
    if (hour < 0 || hour > 23 || minute < 0 || minute > 59) {
        throw OutOfRange(fmt::format("time {}:{:02d} out of range", hour, minute));
    }
    return TimeOfDay{hour * 60 + minute};
}

TimeInterval make_interval(TimeOfDay start, TimeOfDay end)
{
    if (!(start < end)) {
        throw OutOfRange(fmt::format("interval [{}, {}) is empty or inverted",
                                     format_time_24h(start), format_time_24h(end)));
    }
    return TimeInterval{start, end};
}

std::string_view weekday_name(Weekday d)
{
    switch (d) {
    case Weekday::Monday: return "Monday";
    case Weekday::Tuesday: return "Tuesday";
    case Weekday::Wednesday: return "Wednesday";
    case Weekday::Thursday: return "Thursday";
    case Weekday::Friday: return "Friday";
    case Weekday::Saturday: return "Saturday";
    case Weekday::Sunday: return "Sunday";
    }
    return "Monday";
}

Weekday parse_weekday(std::string_view text)
{
    for (Weekday d : all_weekdays) {
        if (text == weekday_name(d)) {
            return d;
        }
    }
    throw MalformedTime(fmt::format("unknown weekday '{}'", text));
}

TimeOfDay parse_time_of_day(std::string_view text)
{
    std::string_view s = trim(text);
    size_t pos = 0;

    int hour = take_digits(s, pos, 2);
    if (hour < 0 || pos >= s.size() || s[pos] != ':') {
        throw MalformedTime(fmt::format("unparsable time '{}'", std::string(text)));
    }
    ++pos;
    int minute = take_digits(s, pos, 2);
    if (minute < 0) {
        throw MalformedTime(fmt::format("unparsable time '{}'", std::string(text)));
    }

    std::string_view rest = trim(s.substr(pos));
    if (rest.empty()) {
        // 24-hour form.
        if (hour > 23 || minute > 59) {
            throw OutOfRange(fmt::format("time '{}' out of range", std::string(text)));
        }
        return TimeOfDay{hour * 60 + minute};
    }

    std::string suffix;
    for (char c : rest) {
        suffix.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    bool pm = false;
    if (suffix == "AM") {
        pm = false;
    } else if (suffix == "PM") {
        pm = true;
    } else {
        throw MalformedTime(fmt::format("unparsable time '{}'", std::string(text)));
    }
    if (hour < 1 || hour > 12 || minute > 59) {
        throw OutOfRange(fmt::format("time '{}' out of range", std::string(text)));
    }
    int h24 = hour % 12 + (pm ? 12 : 0);
    return TimeOfDay{h24 * 60 + minute};
}

std::string format_time_12h(TimeOfDay t)
{
    int h = t.hour();
    int hour12 = h % 12 == 0 ? 12 : h % 12;
    return fmt::format("{}:{:02d}{}", hour12, t.minute(), h < 12 ? "AM" : "PM");
}

std::string format_time_24h(TimeOfDay t)
{
    return fmt::format("{}:{:02d}", t.hour(), t.minute());
}

std::vector<TimeInterval> merge_intervals(std::vector<TimeInterval> intervals)
{
    std::sort(intervals.begin(), intervals.end());
    std::vector<TimeInterval> merged;
    for (const TimeInterval& iv : intervals) {
        if (!merged.empty() && iv.start <= merged.back().end) {
            merged.back().end = std::max(merged.back().end, iv.end);
        } else {
            merged.push_back(iv);
        }
    }
    return merged;
}

std::vector<TimeInterval> free_intervals(const std::vector<TimeInterval>& busy,
                                         const TimeInterval& window)
{
    std::vector<TimeInterval> merged = merge_intervals(busy);
    std::vector<TimeInterval> free;
    TimeOfDay cursor = window.start;
    for (const TimeInterval& iv : merged) {
        if (iv.end <= window.start || iv.start >= window.end) {
            continue;
        }
        if (iv.start > cursor) {
            free.push_back(TimeInterval{cursor, std::min(iv.start, window.end)});
        }
        cursor = std::max(cursor, iv.end);
        if (cursor >= window.end) {
            break;
        }
    }
    if (cursor < window.end) {
        free.push_back(TimeInterval{cursor, window.end});
    }
    return free;
}

}  // namespace modulo
