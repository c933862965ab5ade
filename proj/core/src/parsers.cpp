#include "modulo/parsers.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

namespace modulo {

namespace {

std::string trim_copy(std::string_view s)
{
    size_t begin = 0;
    size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
        --end;
    }
    return std::string(s.substr(begin, end - begin));
}

// "Name, City" -> PlaceRef, splitting at the last ", ".
PlaceRef parse_place_ref(const std::string& text)
{
    size_t pos = text.rfind(", ");
    if (pos == std::string::npos) {
        return PlaceRef{trim_copy(text), ""};
    }
    return PlaceRef{trim_copy(text.substr(0, pos)), trim_copy(text.substr(pos + 2))};
}

std::string place_ref_to_string(const PlaceRef& ref)
{
    if (ref.city.empty()) {
        return ref.name;
    }
    return ref.name + ", " + ref.city;
}

bool is_absent(const std::string& field)
{
    std::string t = trim_copy(field);
    return t.empty() || t == "-";
}

// Content of the first ``` fence if present, otherwise the whole text.
std::string strip_code_fence(const std::string& text)
{
    size_t open = text.find("```");
    if (open == std::string::npos) {
        return text;
    }
    size_t body = text.find('\n', open);
    if (body == std::string::npos) {
        return text;
    }
    size_t close = text.find("```", body);
    if (close == std::string::npos) {
        return text.substr(body + 1);
    }
    return text.substr(body + 1, close - body - 1);
}

std::optional<TimeOfDay> try_parse_time(const std::string& text)
{
    try {
        return parse_time_of_day(text);
    } catch (const std::runtime_error&) {
        return std::nullopt;
    }
}

const std::string kSolutionMarker = "SOLUTION:";

}  // namespace

FormatCritique FormatCritique::failure(std::vector<std::string> messages)
{
    FormatCritique c;
    c.passed = false;
    c.messages = std::move(messages);
    return c;
}

FormatCritique FormatCritique::success(PlanDocument parsed, std::vector<std::string> warnings)
{
    FormatCritique c;
    c.passed = true;
    c.messages = std::move(warnings);
    c.parsed = std::move(parsed);
    return c;
}

// ---------------------------------------------------------------------------
// Travel Planner (JSON itinerary)
// ---------------------------------------------------------------------------

FormatCritique parse_travel_plan(const std::string& text)
{
    std::string body = trim_copy(strip_code_fence(text));

    nlohmann::json doc = nlohmann::json::parse(body, nullptr, false);
    if (doc.is_discarded()) {
        // Models sometimes wrap the array in prose; retry on the bracketed span.
        size_t open = text.find('[');
        size_t close = text.rfind(']');
        if (open != std::string::npos && close != std::string::npos && close > open) {
            doc = nlohmann::json::parse(text.substr(open, close - open + 1), nullptr, false);
        }
        if (doc.is_discarded()) {
            return FormatCritique::failure({"unparsable JSON"});
        }
    }
    if (!doc.is_array()) {
        return FormatCritique::failure({"expected a JSON array of day objects"});
    }
    if (doc.empty()) {
        return FormatCritique::failure({"empty itinerary"});
    }

    static const char* required_keys[] = {"day", "people_number", "current_city",
                                          "transportation", "breakfast", "attraction",
                                          "lunch", "dinner", "accommodation"};

    std::vector<std::string> messages;
    TravelPlan plan;
    int position = 0;
    for (const auto& entry : doc) {
        ++position;
        if (!entry.is_object()) {
            messages.push_back(fmt::format("day entry {} is not an object", position));
            continue;
        }
        std::string day_label = std::to_string(position);
        if (entry.contains("day") && entry["day"].is_number_integer()) {
            day_label = std::to_string(entry["day"].get<int>());
        }
        bool keys_ok = true;
        for (const char* key : required_keys) {
            if (!entry.contains(key)) {
                messages.push_back(fmt::format("missing key \"{}\" on day {}", key, day_label));
                keys_ok = false;
            }
        }
        if (!keys_ok) {
            continue;
        }
        if (!entry["day"].is_number_integer()) {
            messages.push_back(fmt::format("non-integer day in entry {}", position));
            continue;
        }
        if (!entry["people_number"].is_number_integer()) {
            messages.push_back(fmt::format("non-integer people_number on day {}", day_label));
            continue;
        }

        TravelPlanDay day;
        day.day = entry["day"].get<int>();
        day.people_number = entry["people_number"].get<int>();

        auto text_of = [&entry](const char* key) -> std::string {
            const auto& v = entry[key];
            return v.is_string() ? v.get<std::string>() : v.dump();
        };

        std::string city = trim_copy(text_of("current_city"));
        static const std::regex transition_re(R"(^from (.+?) to (.+)$)");
        std::smatch m;
        if (std::regex_match(city, m, transition_re)) {
            day.current_city = Transition{trim_copy(m[1].str()), trim_copy(m[2].str())};
        } else if (is_absent(city)) {
            messages.push_back(fmt::format("missing current city on day {}", day_label));
            continue;
        } else {
            day.current_city = city;
        }

        if (std::string t = text_of("transportation"); !is_absent(t)) {
            day.transportation = trim_copy(t);
        }
        if (std::string b = text_of("breakfast"); !is_absent(b)) {
            day.breakfast = parse_place_ref(b);
        }
        if (std::string l = text_of("lunch"); !is_absent(l)) {
            day.lunch = parse_place_ref(l);
        }
        if (std::string d = text_of("dinner"); !is_absent(d)) {
            day.dinner = parse_place_ref(d);
        }
        if (std::string a = text_of("accommodation"); !is_absent(a)) {
            day.accommodation = parse_place_ref(a);
        }
        if (std::string attraction = text_of("attraction"); !is_absent(attraction)) {
            std::stringstream ss(attraction);
            std::string part;
            while (std::getline(ss, part, ';')) {
                if (!is_absent(part)) {
                    day.attractions.push_back(parse_place_ref(trim_copy(part)));
                }
            }
        }
        plan.push_back(std::move(day));
    }

    if (!messages.empty()) {
        return FormatCritique::failure(std::move(messages));
    }
    return FormatCritique::success(PlanDocument{Domain::travel, std::move(plan)});
}

std::string render_travel_plan(const TravelPlan& plan)
{
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const TravelPlanDay& day : plan) {
        nlohmann::ordered_json entry;
        entry["day"] = day.day;
        entry["people_number"] = day.people_number;
        if (const auto* t = std::get_if<Transition>(&day.current_city)) {
            entry["current_city"] = fmt::format("from {} to {}", t->from, t->to);
        } else {
            entry["current_city"] = std::get<std::string>(day.current_city);
        }
        entry["transportation"] = day.transportation.value_or("-");
        entry["breakfast"] = day.breakfast ? place_ref_to_string(*day.breakfast) : "-";
        if (day.attractions.empty()) {
            entry["attraction"] = "-";
        } else {
            std::string joined;
            for (size_t i = 0; i < day.attractions.size(); ++i) {
                if (i > 0) {
                    joined += "; ";
                }
                joined += place_ref_to_string(day.attractions[i]);
            }
            entry["attraction"] = joined;
        }
        entry["lunch"] = day.lunch ? place_ref_to_string(*day.lunch) : "-";
        entry["dinner"] = day.dinner ? place_ref_to_string(*day.dinner) : "-";
        entry["accommodation"] = day.accommodation ? place_ref_to_string(*day.accommodation) : "-";
        doc.push_back(std::move(entry));
    }
    return doc.dump(4);
}

// ---------------------------------------------------------------------------
// Trip Planning (SOLUTION text with bold day ranges)
// ---------------------------------------------------------------------------

namespace {

// City from "Arriving in X and visit X for n days." or "Visit X for n days.".
std::optional<std::string> segment_city(const std::string& rest)
{
    static const std::regex arriving_re(R"(Arriving in (.+?)(?: and | for |\.|$))");
    static const std::regex visit_re(R"((?:^|\s)[Vv]isit (.+?) for \d+ days?)");
    std::smatch m;
    if (std::regex_search(rest, m, arriving_re)) {
        return trim_copy(m[1].str());
    }
    if (std::regex_search(rest, m, visit_re)) {
        return trim_copy(m[1].str());
    }
    return std::nullopt;
}

}  // namespace

FormatCritique parse_trip_plan(const std::string& text)
{
    size_t marker = text.find(kSolutionMarker);
    if (marker == std::string::npos) {
        return FormatCritique::failure({"no SOLUTION marker"});
    }

    static const std::regex range_re(R"(^\s*\*\*Day (\d+)\s*-\s*(\d+):\*\*\s*(.*)$)");
    static const std::regex single_re(R"(^\s*\*\*Day (\d+):\*\*\s*(.*)$)");
    static const std::regex fly_re(R"(^Fly from (.+?) to (.+?)\.?\s*$)");

    std::vector<std::string> messages;
    TripPlan plan;
    std::istringstream lines(text.substr(marker + kSolutionMarker.size()));
    std::string line;
    while (std::getline(lines, line)) {
        std::smatch m;
        if (std::regex_match(line, m, range_re)) {
            int start = std::stoi(m[1].str());
            int end = std::stoi(m[2].str());
            if (auto city = segment_city(m[3].str())) {
                if (start > end) {
                    messages.push_back(
                        fmt::format("segment day range inverted: Day {}-{}", start, end));
                    continue;
                }
                plan.segments.push_back(TripSegment{*city, start, end});
            }
        } else if (std::regex_match(line, m, single_re)) {
            std::string rest = m[2].str();
            if (std::regex_match(rest, fly_re)) {
                continue;  // transitions are implied by consecutive segments
            }
            if (auto city = segment_city(rest)) {
                int day = std::stoi(m[1].str());
                plan.segments.push_back(TripSegment{*city, day, day});
            }
        }
    }

    if (!messages.empty()) {
        return FormatCritique::failure(std::move(messages));
    }
    if (plan.segments.empty()) {
        return FormatCritique::failure({"no segments found"});
    }
    return FormatCritique::success(PlanDocument{Domain::trip, std::move(plan)});
}

std::string render_trip_plan(const TripPlan& plan)
{
    int total_days = plan.segments.empty() ? 0 : plan.segments.back().end_day;
    std::string out = fmt::format(
        "SOLUTION: Here is the trip plan for visiting the {} European cities for {} days:\n\n",
        plan.segments.size(), total_days);
    for (size_t i = 0; i < plan.segments.size(); ++i) {
        const TripSegment& seg = plan.segments[i];
        if (i > 0) {
            out += fmt::format("**Day {}:** Fly from {} to {}.\n", seg.start_day,
                               plan.segments[i - 1].city, seg.city);
        }
        std::string days_text =
            seg.length() == 1 ? "1 day" : fmt::format("{} days", seg.length());
        std::string range = seg.start_day == seg.end_day
                                ? fmt::format("{}", seg.start_day)
                                : fmt::format("{}-{}", seg.start_day, seg.end_day);
        if (i == 0) {
            out += fmt::format("**Day {}:** Arriving in {} and visit {} for {}.", range,
                               seg.city, seg.city, days_text);
        } else {
            out += fmt::format("**Day {}:** Visit {} for {}.", range, seg.city, days_text);
        }
        if (i + 1 < plan.segments.size()) {
            out += "\n";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Meeting Planning (SOLUTION sentences)
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_sentences(const std::string& text)
{
    std::vector<std::string> sentences;
    std::string current;
    for (char c : text) {
        if (c == '.') {
            std::string t = trim_copy(current);
            if (!t.empty()) {
                sentences.push_back(std::move(t));
            }
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    std::string t = trim_copy(current);
    if (!t.empty()) {
        sentences.push_back(std::move(t));
    }
    return sentences;
}

}  // namespace

FormatCritique parse_meeting_plan(const std::string& text)
{
    size_t marker = text.find(kSolutionMarker);
    if (marker == std::string::npos) {
        return FormatCritique::failure({"no SOLUTION marker"});
    }

    static const std::string time_pat = R"((\d{1,2}:\d{2}\s?(?:AM|PM|am|pm)))";
    static const std::regex start_re("^You start at (.+) at " + time_pat + "$");
    static const std::regex travel_re("^You travel to (.+) in (\\d+) minutes and arrive at " +
                                      time_pat + "$");
    static const std::regex wait_re("^You wait until " + time_pat + "$");
    static const std::regex meet_re("^You meet (.+) for (\\d+) minutes from " + time_pat +
                                    " to " + time_pat + "$");

    std::vector<std::string> messages;
    MeetingPlan plan;
    for (const std::string& sentence : split_sentences(text.substr(marker + kSolutionMarker.size()))) {
        std::smatch m;
        if (std::regex_match(sentence, m, start_re)) {
            auto at = try_parse_time(m[2].str());
            if (!at) {
                messages.push_back(fmt::format("invalid time in step: '{}'", sentence));
                continue;
            }
            plan.steps.push_back(StartStep{trim_copy(m[1].str()), *at});
        } else if (std::regex_match(sentence, m, travel_re)) {
            auto arrive = try_parse_time(m[3].str());
            if (!arrive) {
                messages.push_back(fmt::format("invalid time in step: '{}'", sentence));
                continue;
            }
            plan.steps.push_back(TravelStep{trim_copy(m[1].str()), std::stoi(m[2].str()), *arrive});
        } else if (std::regex_match(sentence, m, wait_re)) {
            auto until = try_parse_time(m[1].str());
            if (!until) {
                messages.push_back(fmt::format("invalid time in step: '{}'", sentence));
                continue;
            }
            plan.steps.push_back(WaitStep{*until});
        } else if (std::regex_match(sentence, m, meet_re)) {
            auto start = try_parse_time(m[3].str());
            auto end = try_parse_time(m[4].str());
            if (!start || !end) {
                messages.push_back(fmt::format("invalid time in step: '{}'", sentence));
                continue;
            }
            plan.steps.push_back(MeetStep{trim_copy(m[1].str()), *start, *end});
        } else {
            messages.push_back(fmt::format("unknown step: '{}'", sentence));
        }
    }

    if (!messages.empty()) {
        return FormatCritique::failure(std::move(messages));
    }
    if (plan.steps.empty()) {
        return FormatCritique::failure({"no steps found"});
    }
    if (!std::holds_alternative<StartStep>(plan.steps.front())) {
        return FormatCritique::failure({"plan does not begin with a start step"});
    }
    return FormatCritique::success(PlanDocument{Domain::meeting, std::move(plan)});
}

std::string render_meeting_step(const MeetingStep& step)
{
    return std::visit([](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, StartStep>) {
            return fmt::format("You start at {} at {}", s.location, format_time_12h(s.at));
        } else if constexpr (std::is_same_v<T, TravelStep>) {
            return fmt::format("You travel to {} in {} minutes and arrive at {}", s.to, s.minutes,
                               format_time_12h(s.arrive));
        } else if constexpr (std::is_same_v<T, WaitStep>) {
            return fmt::format("You wait until {}", format_time_12h(s.until));
        } else {
            return fmt::format("You meet {} for {} minutes from {} to {}", s.friend_name,
                               s.end.minutes - s.start.minutes, format_time_12h(s.start),
                               format_time_12h(s.end));
        }
    }, step);
}

std::string render_meeting_plan(const MeetingPlan& plan)
{
    std::string out = "SOLUTION: ";
    for (size_t i = 0; i < plan.steps.size(); ++i) {
        if (i > 0) {
            out += " ";
        }
        out += render_meeting_step(plan.steps[i]) + ".";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Calendar Scheduling (proposed-time template)
// ---------------------------------------------------------------------------

FormatCritique parse_calendar_plan(const std::string& text)
{
    static const std::regex proposal_re(
        R"(Here is the proposed time:\s*(Monday|Tuesday|Wednesday|Thursday|Friday|Saturday|Sunday),\s*(\d{1,2}:\d{2})\s*-\s*(\d{1,2}:\d{2}))");

    auto begin = std::sregex_iterator(text.begin(), text.end(), proposal_re);
    auto end = std::sregex_iterator();
    if (begin == end) {
        return FormatCritique::failure({"no proposal found"});
    }

    const std::smatch& m = *begin;
    auto start = try_parse_time(m[2].str());
    auto finish = try_parse_time(m[3].str());
    if (!start || !finish) {
        return FormatCritique::failure({fmt::format("invalid time in proposal: '{}'", m[0].str())});
    }
    if (*finish <= *start) {
        return FormatCritique::failure(
            {fmt::format("proposed end time {} is not after start time {}", m[3].str(), m[2].str())});
    }

    std::vector<std::string> warnings;
    if (std::distance(begin, end) > 1) {
        warnings.push_back("multiple proposed times found; using the first");
    }
    CalendarProposal proposal{parse_weekday(m[1].str()), TimeInterval{*start, *finish}};
    return FormatCritique::success(PlanDocument{Domain::calendar, proposal}, std::move(warnings));
}

std::string render_calendar_proposal(const CalendarProposal& proposal)
{
    return fmt::format("Here is the proposed time: {}, {} - {}", weekday_name(proposal.day),
                       format_time_24h(proposal.slot.start), format_time_24h(proposal.slot.end));
}

std::string render_flight_leg(const Flight& flight)
{
    return fmt::format(
        "Flight Number: {}, from {} to {}, Departure Time: {:02d}:{:02d}, Arrival Time: {:02d}:{:02d}",
        flight.number, flight.origin, flight.dest, flight.departure.hour(),
        flight.departure.minute(), flight.arrival.hour(), flight.arrival.minute());
}

std::string render_ground_leg(const GroundRoute& route)
{
    return fmt::format("{}, from {} to {}, cost: {}", route.mode, route.origin, route.dest,
                       route.cost);
}

// ---------------------------------------------------------------------------

FormatCritique parse_plan(Domain domain, const std::string& text)
{
    switch (domain) {
    case Domain::travel: return parse_travel_plan(text);
    case Domain::trip: return parse_trip_plan(text);
    case Domain::meeting: return parse_meeting_plan(text);
    case Domain::calendar: return parse_calendar_plan(text);
    }
    return FormatCritique::failure({"unknown domain"});
}

std::string render_plan(const PlanDocument& p)
{
    return std::visit([](const auto& plan) -> std::string {
        using T = std::decay_t<decltype(plan)>;
        if constexpr (std::is_same_v<T, TravelPlan>) {
            return render_travel_plan(plan);
        } else if constexpr (std::is_same_v<T, TripPlan>) {
            return render_trip_plan(plan);
        } else if constexpr (std::is_same_v<T, MeetingPlan>) {
            return render_meeting_plan(plan);
        } else {
            return render_calendar_proposal(plan);
        }
    }, p.plan);
}

}  // namespace modulo
