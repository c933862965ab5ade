#pragma once

#include "modulo/domains.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace modulo {

using PlanVariant = std::variant<TravelPlan, TripPlan, MeetingPlan, CalendarProposal>;

struct PlanDocument {
    Domain domain = Domain::calendar;
    PlanVariant plan;

    bool operator==(const PlanDocument&) const = default;
};

/// Result of the format critic. passed <=> parsed is present.
/// Parsers never throw: any input yields a critique.
struct FormatCritique {
    bool passed = false;
    std::vector<std::string> messages;
    std::optional<PlanDocument> parsed;

    static FormatCritique failure(std::vector<std::string> messages);
    static FormatCritique success(PlanDocument parsed, std::vector<std::string> warnings = {});
};

/// JSON itinerary, optionally wrapped in a ``` code fence. Each day object
/// must carry all of: day, people_number, current_city, transportation,
/// breakfast, attraction, lunch, dinner, accommodation. "-" means absent.
FormatCritique parse_travel_plan(const std::string& text);

/// "SOLUTION:" followed by "**Day A-B:**" visit/arrival lines. Fly lines and
/// event restatements are recognized but produce no segments.
FormatCritique parse_trip_plan(const std::string& text);

/// "SOLUTION:" followed by start/travel/wait/meet sentences.
FormatCritique parse_meeting_plan(const std::string& text);

/// "Here is the proposed time: DAY, H:MM - H:MM" (24-hour), with or without
/// a leading "SOLUTION:" and surrounding prose.
FormatCritique parse_calendar_plan(const std::string& text);

FormatCritique parse_plan(Domain domain, const std::string& text);

/// Canonical text in the same surface form the domain parser accepts;
/// parse_plan(domain, render_plan(p)) == p for canonical plans.
std::string render_plan(const PlanDocument& p);

std::string render_travel_plan(const TravelPlan& plan);
std::string render_trip_plan(const TripPlan& plan);
std::string render_meeting_plan(const MeetingPlan& plan);
std::string render_calendar_proposal(const CalendarProposal& proposal);

/// One step as a sentence without the trailing period,
/// e.g. "You meet Ashley for 75 minutes from 9:25AM to 10:40AM".
std::string render_meeting_step(const MeetingStep& step);

/// Transportation field strings in the surface form the travel parser and
/// critics read back.
std::string render_flight_leg(const Flight& flight);
std::string render_ground_leg(const GroundRoute& route);

}  // namespace modulo
