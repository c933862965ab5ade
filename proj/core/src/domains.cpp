#include "modulo/domains.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>

namespace modulo {

std::string_view domain_name(Domain d)
{
    switch (d) {
    case Domain::travel: return "travel";
    case Domain::trip: return "trip";
    case Domain::meeting: return "meeting";
    case Domain::calendar: return "calendar";
    }
    return "calendar";
}

Domain parse_domain(std::string_view name)
{
    if (name == "travel") return Domain::travel;
    if (name == "trip") return Domain::trip;
    if (name == "meeting") return Domain::meeting;
    if (name == "calendar") return Domain::calendar;
    throw std::invalid_argument(fmt::format("unknown domain '{}'", std::string(name)));
}

std::string_view travel_constraint_kind_name(TravelConstraintKind k)
{
    switch (k) {
    case TravelConstraintKind::room_rule: return "room_rule";
    case TravelConstraintKind::room_type: return "room_type";
    case TravelConstraintKind::cuisine: return "cuisine";
    case TravelConstraintKind::transport_mode: return "transport_mode";
    }
    return "room_rule";
}

TravelConstraintKind parse_travel_constraint_kind(std::string_view name)
{
    if (name == "room_rule") return TravelConstraintKind::room_rule;
    if (name == "room_type") return TravelConstraintKind::room_type;
    if (name == "cuisine") return TravelConstraintKind::cuisine;
    if (name == "transport_mode") return TravelConstraintKind::transport_mode;
    throw std::invalid_argument(fmt::format("unknown constraint kind '{}'", std::string(name)));
}

const CityStay* TripQuery::find_stay(std::string_view city) const
{
    for (const CityStay& s : stays) {
        if (s.city == city) {
            return &s;
        }
    }
    return nullptr;
}

bool TripQuery::has_flight(std::string_view from, std::string_view to) const
{
    for (const FlightEdge& e : flights) {
        if (e.from == from && e.to == to) {
            return true;
        }
        if (e.bidirectional && e.from == to && e.to == from) {
            return true;
        }
    }
    return false;
}

std::optional<int> MeetingQuery::travel_time(const std::string& from, const std::string& to) const
{
    auto it = travel_minutes.find({from, to});
    if (it == travel_minutes.end()) {
        return std::nullopt;
    }
    return it->second;
}

const Accommodation* TravelSandbox::find_accommodation(std::string_view name,
                                                       std::string_view city) const
{
    for (const Accommodation& a : accommodations) {
        if (a.name == name && a.city == city) {
            return &a;
        }
    }
    return nullptr;
}

const Restaurant* TravelSandbox::find_restaurant(std::string_view name, std::string_view city) const
{
    for (const Restaurant& r : restaurants) {
        if (r.name == name && r.city == city) {
            return &r;
        }
    }
    return nullptr;
}

const Attraction* TravelSandbox::find_attraction(std::string_view name, std::string_view city) const
{
    for (const Attraction& a : attractions) {
        if (a.name == name && a.city == city) {
            return &a;
        }
    }
    return nullptr;
}

const Flight* TravelSandbox::find_flight(std::string_view number) const
{
    for (const Flight& f : flights) {
        if (f.number == number) {
            return &f;
        }
    }
    return nullptr;
}

const GroundRoute* TravelSandbox::find_ground(std::string_view origin, std::string_view dest,
                                              std::string_view mode) const
{
    for (const GroundRoute& g : ground_transport) {
        if (g.origin == origin && g.dest == dest && g.mode == mode) {
            return &g;
        }
    }
    return nullptr;
}

std::vector<std::string> TravelPlanDay::cities_of_day() const
{
    if (const auto* city = std::get_if<std::string>(&current_city)) {
        return {*city};
    }
    const auto& t = std::get<Transition>(current_city);
    return {t.from, t.to};
}

namespace {

void validate_calendar(const CalendarQuery& q, std::vector<std::string>& out)
{
    if (q.participants.empty()) {
        out.push_back("no participants");
    }
    if (q.candidate_days.empty()) {
        out.push_back("no candidate days");
    }
    if (q.duration_minutes != 30 && q.duration_minutes != 60) {
        out.push_back(fmt::format("duration {} is not 30 or 60 minutes", q.duration_minutes));
    }
    if (q.work_window.length() <= 0) {
        out.push_back("work window is empty");
    }
    for (const Participant& p : q.participants) {
        for (const auto& [day, blocks] : p.busy) {
            for (const TimeInterval& b : blocks) {
                if (b.length() <= 0) {
                    out.push_back(fmt::format("{} has an empty busy block on {}", p.name,
                                              weekday_name(day)));
                }
            }
        }
    }
}

void validate_trip(const TripQuery& q, std::vector<std::string>& out)
{
    if (q.stays.empty()) {
        out.push_back("no cities to visit");
        return;
    }
    int sum = 0;
    std::set<std::string> cities;
    for (const CityStay& s : q.stays) {
        sum += s.required_days;
        if (s.required_days < 1) {
            out.push_back(fmt::format("stay in {} is shorter than one day", s.city));
        }
        if (!cities.insert(s.city).second) {
            out.push_back(fmt::format("city {} listed twice", s.city));
        }
    }
    int expected = q.total_days + static_cast<int>(q.stays.size()) - 1;
    if (sum != expected) {
        out.push_back(fmt::format("stay days sum to {}, expected {} (total {} + {} shared flight days)",
                                  sum, expected, q.total_days,
                                  static_cast<int>(q.stays.size()) - 1));
    }
    for (const TripEvent& e : q.events) {
        if (!cities.contains(e.city)) {
            out.push_back(fmt::format("event city {} is not among the stays", e.city));
        }
        if (e.start_day < 1 || e.end_day < e.start_day || e.end_day > q.total_days) {
            out.push_back(fmt::format("event in {} has an invalid day window {}-{}", e.city,
                                      e.start_day, e.end_day));
        }
    }
}

void validate_meeting(const MeetingQuery& q, std::vector<std::string>& out)
{
    if (q.start_location.empty()) {
        out.push_back("no start location");
    }
    std::set<std::string> locations{q.start_location};
    for (const FriendConstraint& f : q.friends) {
        locations.insert(f.location);
        if (f.min_duration_minutes <= 0) {
            out.push_back(fmt::format("minimum meeting duration for {} is not positive", f.name));
        }
        if (f.window.length() <= 0) {
            out.push_back(fmt::format("{}'s availability window is empty", f.name));
        }
    }
    for (const std::string& from : locations) {
        for (const std::string& to : locations) {
            if (from == to) {
                continue;
            }
            if (!q.travel_time(from, to).has_value()) {
                out.push_back(fmt::format("travel matrix is missing {} to {}", from, to));
            }
        }
    }
}

void validate_travel(const TravelCase& c, std::vector<std::string>& out)
{
    const TravelQuery& q = c.query;
    if (q.people < 1) {
        out.push_back("people must be at least 1");
    }
    if (q.budget <= 0) {
        out.push_back("budget must be positive");
    }
    if (q.days != 3 && q.days != 5 && q.days != 7) {
        out.push_back(fmt::format("trip length {} is not 3, 5 or 7 days", q.days));
    }
    if (q.destinations.empty()) {
        out.push_back("no destination city");
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (const Accommodation& a : c.sandbox.accommodations) {
        if (!seen.insert({a.name, a.city}).second) {
            out.push_back(fmt::format("duplicate accommodation {} in {}", a.name, a.city));
        }
        if (a.price_per_night < 0) {
            out.push_back(fmt::format("negative price for accommodation {}", a.name));
        }
        if (a.maximum_occupancy < 1) {
            out.push_back(fmt::format("accommodation {} has no capacity", a.name));
        }
    }
    seen.clear();
    for (const Restaurant& r : c.sandbox.restaurants) {
        if (!seen.insert({r.name, r.city}).second) {
            out.push_back(fmt::format("duplicate restaurant {} in {}", r.name, r.city));
        }
        if (r.average_cost < 0) {
            out.push_back(fmt::format("negative cost for restaurant {}", r.name));
        }
    }
}

}  // namespace

std::vector<std::string> validate_query(const QueryInstance& q)
{
    std::vector<std::string> out;

    const bool matches = (q.domain == Domain::travel && std::holds_alternative<TravelCase>(q.query)) ||
                         (q.domain == Domain::trip && std::holds_alternative<TripQuery>(q.query)) ||
                         (q.domain == Domain::meeting && std::holds_alternative<MeetingQuery>(q.query)) ||
                         (q.domain == Domain::calendar && std::holds_alternative<CalendarQuery>(q.query));
    if (!matches) {
        out.push_back(fmt::format("query payload does not match domain '{}'", domain_name(q.domain)));
        return out;
    }

    std::visit([&out](const auto& query) {
        using T = std::decay_t<decltype(query)>;
        if constexpr (std::is_same_v<T, CalendarQuery>) {
            validate_calendar(query, out);
        } else if constexpr (std::is_same_v<T, TripQuery>) {
            validate_trip(query, out);
        } else if constexpr (std::is_same_v<T, MeetingQuery>) {
            validate_meeting(query, out);
        } else {
            validate_travel(query, out);
        }
    }, q.query);
    return out;
}

}  // namespace modulo
