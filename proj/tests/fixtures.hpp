#pragma once

#include "modulo/domains.hpp"

#include <string>

// Shared instances mirroring the worked examples the suites check against.
namespace fixtures {

std::string read_fixture(const std::string& name);

// Calendar: Michelle/Steven/Jerry, one hour on Monday. The unique valid
// 60-minute slot is 14:30 - 15:30.
modulo::QueryInstance michelle_calendar();

// Calendar: Roger/Karen/Dorothy, half an hour, earliest-preference. The
// earliest valid slot is Monday 11:00 - 11:30.
modulo::QueryInstance roger_calendar();

// Meeting: Fisherman's Wharf start, Barbara/Ashley/Ronald/Robert.
modulo::QueryInstance wharf_meeting();

// The feasible repair of the recorded model response: wait for Ashley's
// window to open, everything after shifts accordingly. Meets all four.
modulo::MeetingPlan wharf_repaired_plan();

// Trip: the 25-day, 10-city query.
modulo::QueryInstance trip25();

// Trip: the 21-day, 10-city query whose golden solution is a fixture.
modulo::QueryInstance trip21();

// Trip: toy A(2), B(3), C(2) over 5 days with edges A-B and B-C.
modulo::QueryInstance toy_trip();

// Travel: Washington to Myrtle Beach, 3 days, $1,400. The recorded response
// books a minimum-nights-3 room for 2 nights and an unknown breakfast.
modulo::QueryInstance myrtle_travel();

}  // namespace fixtures
