#pragma once

#include "modulo/domains.hpp"

#include <nlohmann/json.hpp>

namespace modulo {

// Canonical on-disk JSON forms for queries and instances. Times are 24-hour
// "H:MM" strings, intervals are [start, end] pairs.

nlohmann::json to_json(const CalendarQuery& q);
nlohmann::json to_json(const TripQuery& q);
nlohmann::json to_json(const MeetingQuery& q);
nlohmann::json to_json(const TravelSandbox& s);
nlohmann::json to_json(const TravelCase& c);

CalendarQuery calendar_query_from_json(const nlohmann::json& j);
TripQuery trip_query_from_json(const nlohmann::json& j);
MeetingQuery meeting_query_from_json(const nlohmann::json& j);
TravelSandbox sandbox_from_json(const nlohmann::json& j);
TravelCase travel_case_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const QueryInstance& instance);
QueryInstance instance_from_json(const nlohmann::json& j);

}  // namespace modulo
