#pragma once

#include "modulo/time.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace modulo {

enum class Domain { travel, trip, meeting, calendar };

std::string_view domain_name(Domain d);
Domain parse_domain(std::string_view name);

/// 1-based trip day.
using DayIndex = int;

// ---------------------------------------------------------------------------
// Calendar scheduling
// ---------------------------------------------------------------------------

struct Participant {
    std::string name;
    std::map<Weekday, std::vector<TimeInterval>> busy;

    bool operator==(const Participant&) const = default;
};

struct CalendarQuery {
    std::vector<Participant> participants;
    int duration_minutes = 30;
    TimeInterval work_window{TimeOfDay{9 * 60}, TimeOfDay{17 * 60}};
    std::vector<Weekday> candidate_days;
    bool prefer_earliest = false;

    bool operator==(const CalendarQuery&) const = default;
};

struct CalendarProposal {
    Weekday day = Weekday::Monday;
    TimeInterval slot;

    bool operator==(const CalendarProposal&) const = default;
};

// ---------------------------------------------------------------------------
// Trip planning
// ---------------------------------------------------------------------------

struct CityStay {
    std::string city;
    int required_days = 1;

    bool operator==(const CityStay&) const = default;
};

struct TripEvent {
    std::string city;
    DayIndex start_day = 1;
    DayIndex end_day = 1;

    bool operator==(const TripEvent&) const = default;
};

struct FlightEdge {
    std::string from;
    std::string to;
    bool bidirectional = true;

    bool operator==(const FlightEdge&) const = default;
};

struct TripQuery {
    int total_days = 0;
    std::vector<CityStay> stays;
    std::vector<TripEvent> events;
    std::vector<FlightEdge> flights;

    const CityStay* find_stay(std::string_view city) const;
    bool has_flight(std::string_view from, std::string_view to) const;

    bool operator==(const TripQuery&) const = default;
};

/// Consecutive segments share the boundary day: the flight day belongs to
/// both cities, so stay lengths are inclusive (end - start + 1).
struct TripSegment {
    std::string city;
    DayIndex start_day = 1;
    DayIndex end_day = 1;

    int length() const { return end_day - start_day + 1; }
    bool operator==(const TripSegment&) const = default;
};

struct TripPlan {
    std::vector<TripSegment> segments;

    bool operator==(const TripPlan&) const = default;
};

// ---------------------------------------------------------------------------
// Meeting planning
// ---------------------------------------------------------------------------

struct FriendConstraint {
    std::string name;
    std::string location;
    TimeInterval window;
    int min_duration_minutes = 30;

    bool operator==(const FriendConstraint&) const = default;
};

struct MeetingQuery {
    std::string start_location;
    TimeOfDay arrival{9 * 60};
    std::vector<FriendConstraint> friends;
    std::map<std::pair<std::string, std::string>, int> travel_minutes;

    std::optional<int> travel_time(const std::string& from, const std::string& to) const;

    bool operator==(const MeetingQuery&) const = default;
};

struct StartStep {
    std::string location;
    TimeOfDay at;

    bool operator==(const StartStep&) const = default;
};

struct TravelStep {
    std::string to;
    int minutes = 0;
    TimeOfDay arrive;

    bool operator==(const TravelStep&) const = default;
};

struct WaitStep {
    TimeOfDay until;

    bool operator==(const WaitStep&) const = default;
};

struct MeetStep {
    std::string friend_name;
    TimeOfDay start;
    TimeOfDay end;

    bool operator==(const MeetStep&) const = default;
};

using MeetingStep = std::variant<StartStep, TravelStep, WaitStep, MeetStep>;

struct MeetingPlan {
    std::vector<MeetingStep> steps;

    bool operator==(const MeetingPlan&) const = default;
};

// ---------------------------------------------------------------------------
// Travel planner sandbox
// ---------------------------------------------------------------------------

struct Accommodation {
    std::string name;
    std::string city;
    double price_per_night = 0;
    std::string room_type;
    std::vector<std::string> house_rules;
    int minimum_nights = 1;
    int maximum_occupancy = 1;

    bool operator==(const Accommodation&) const = default;
};

struct Restaurant {
    std::string name;
    std::string city;
    double average_cost = 0;
    std::vector<std::string> cuisines;
    double rating = 0;

    bool operator==(const Restaurant&) const = default;
};

struct Attraction {
    std::string name;
    std::string city;

    bool operator==(const Attraction&) const = default;
};

struct Flight {
    std::string number;
    std::string origin;
    std::string dest;
    double price = 0;
    TimeOfDay departure;
    TimeOfDay arrival;

    bool operator==(const Flight&) const = default;
};

struct GroundRoute {
    std::string origin;
    std::string dest;
    std::string mode;  // "Self-driving" or "Taxi"
    double cost = 0;

    bool operator==(const GroundRoute&) const = default;
};

struct TravelSandbox {
    std::vector<Accommodation> accommodations;
    std::vector<Restaurant> restaurants;
    std::vector<Attraction> attractions;
    std::vector<Flight> flights;
    std::vector<GroundRoute> ground_transport;

    const Accommodation* find_accommodation(std::string_view name, std::string_view city) const;
    const Restaurant* find_restaurant(std::string_view name, std::string_view city) const;
    const Attraction* find_attraction(std::string_view name, std::string_view city) const;
    const Flight* find_flight(std::string_view number) const;
    const GroundRoute* find_ground(std::string_view origin, std::string_view dest,
                                   std::string_view mode) const;

    bool operator==(const TravelSandbox&) const = default;
};

enum class TravelConstraintKind { room_rule, room_type, cuisine, transport_mode };

std::string_view travel_constraint_kind_name(TravelConstraintKind k);
TravelConstraintKind parse_travel_constraint_kind(std::string_view name);

struct TravelConstraint {
    TravelConstraintKind kind = TravelConstraintKind::room_rule;
    std::string value;

    bool operator==(const TravelConstraint&) const = default;
};

struct TravelQuery {
    std::string origin;
    std::vector<std::string> destinations;
    int days = 3;  // 3, 5 or 7
    int people = 1;
    double budget = 0;
    std::vector<TravelConstraint> constraints;

    bool operator==(const TravelQuery&) const = default;
};

/// "from A to B" in the current_city field.
struct Transition {
    std::string from;
    std::string to;

    bool operator==(const Transition&) const = default;
};

using CurrentCity = std::variant<std::string, Transition>;

/// "Name, City" reference into one of the sandbox tables.
struct PlaceRef {
    std::string name;
    std::string city;

    bool operator==(const PlaceRef&) const = default;
};

struct TravelPlanDay {
    DayIndex day = 1;
    int people_number = 1;
    CurrentCity current_city;
    std::optional<std::string> transportation;
    std::optional<PlaceRef> breakfast;
    std::vector<PlaceRef> attractions;
    std::optional<PlaceRef> lunch;
    std::optional<PlaceRef> dinner;
    std::optional<PlaceRef> accommodation;

    /// The city (or cities, on transition days) the day's bookings may be in.
    std::vector<std::string> cities_of_day() const;

    bool operator==(const TravelPlanDay&) const = default;
};

using TravelPlan = std::vector<TravelPlanDay>;

// ---------------------------------------------------------------------------
// Benchmark instance
// ---------------------------------------------------------------------------

/// A travel instance is self-contained: critics resolve plan entities
/// against the sandbox shipped with the query.
struct TravelCase {
    TravelQuery query;
    TravelSandbox sandbox;

    bool operator==(const TravelCase&) const = default;
};

using AnyQuery = std::variant<TravelCase, TripQuery, MeetingQuery, CalendarQuery>;

struct QueryInstance {
    std::string id;
    Domain domain = Domain::calendar;
    AnyQuery query;
    std::string prompt_text;
    std::string subset;
    std::optional<std::string> golden;
};

/// Empty iff every type invariant holds; one message per violation.
std::vector<std::string> validate_query(const QueryInstance& q);

}  // namespace modulo
