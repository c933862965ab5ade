#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fixtures {

using namespace modulo;

std::string read_fixture(const std::string& name)
{
    std::ifstream in(std::string(MODULO_FIXTURE_DIR) + "/" + name);
    if (!in) {
        throw std::runtime_error("missing fixture " + name);
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

namespace {

TimeInterval iv(int start_h, int start_m, int end_h, int end_m)
{
    return TimeInterval{TimeOfDay{start_h * 60 + start_m}, TimeOfDay{end_h * 60 + end_m}};
}

}  // namespace

QueryInstance michelle_calendar()
{
    CalendarQuery q;
    q.duration_minutes = 60;
    q.work_window = iv(9, 0, 17, 0);
    q.candidate_days = {Weekday::Monday};
    q.participants = {
        Participant{"Michelle", {{Weekday::Monday, {iv(11, 0, 12, 0)}}}},
        Participant{"Steven",
                    {{Weekday::Monday,
                      {iv(9, 0, 9, 30), iv(11, 30, 12, 0), iv(13, 30, 14, 0), iv(15, 30, 16, 0)}}}},
        Participant{"Jerry",
                    {{Weekday::Monday,
                      {iv(9, 0, 9, 30), iv(10, 0, 11, 0), iv(11, 30, 12, 30), iv(13, 0, 14, 30),
                       iv(15, 30, 16, 0), iv(16, 30, 17, 0)}}}},
    };

    QueryInstance instance;
    instance.id = "calendar-michelle";
    instance.domain = Domain::calendar;
    instance.subset = "participants=3";
    instance.prompt_text = read_fixture("calendar_query_michelle.txt");
    instance.query = std::move(q);
    return instance;
}

QueryInstance roger_calendar()
{
    CalendarQuery q;
    q.duration_minutes = 30;
    q.work_window = iv(9, 0, 17, 0);
    q.candidate_days = {Weekday::Monday};
    q.prefer_earliest = true;
    q.participants = {
        Participant{"Roger", {}},
        Participant{"Karen",
                    {{Weekday::Monday,
                      {iv(10, 0, 10, 30), iv(11, 30, 12, 0), iv(12, 30, 13, 0), iv(14, 0, 15, 0),
                       iv(15, 30, 16, 0)}}}},
        Participant{"Dorothy",
                    {{Weekday::Monday,
                      {iv(9, 0, 10, 0), iv(10, 30, 11, 0), iv(11, 30, 12, 0), iv(12, 30, 13, 0),
                       iv(14, 0, 15, 30), iv(16, 0, 17, 0)}}}},
    };

    QueryInstance instance;
    instance.id = "calendar-roger";
    instance.domain = Domain::calendar;
    instance.subset = "participants=3";
    instance.query = std::move(q);
    return instance;
}

QueryInstance wharf_meeting()
{
    MeetingQuery q;
    q.start_location = "Fisherman's Wharf";
    q.arrival = TimeOfDay{9 * 60};
    q.friends = {
        FriendConstraint{"Barbara", "Embarcadero", iv(12, 15, 18, 45), 105},
        FriendConstraint{"Ashley", "Golden Gate Park", iv(9, 30, 18, 0), 75},
        FriendConstraint{"Ronald", "Mission District", iv(14, 30, 20, 15), 45},
        FriendConstraint{"Robert", "Union Square", iv(11, 45, 21, 0), 60},
    };
    const char* FW = "Fisherman's Wharf";
    const char* E = "Embarcadero";
    const char* G = "Golden Gate Park";
    const char* M = "Mission District";
    const char* U = "Union Square";
    q.travel_minutes = {
        {{FW, E}, 8}, {{FW, G}, 25}, {{FW, M}, 22}, {{FW, U}, 13},
        {{E, FW}, 6}, {{E, G}, 25},  {{E, M}, 20},  {{E, U}, 9},
        {{G, FW}, 24}, {{G, E}, 24}, {{G, M}, 17},  {{G, U}, 22},
        {{M, FW}, 22}, {{M, E}, 19}, {{M, G}, 17},  {{M, U}, 15},
        {{U, FW}, 15}, {{U, E}, 10}, {{U, G}, 22},  {{U, M}, 14},
    };

    QueryInstance instance;
    instance.id = "meeting-wharf";
    instance.domain = Domain::meeting;
    instance.subset = "people=4";
    instance.query = std::move(q);
    return instance;
}

MeetingPlan wharf_repaired_plan()
{
    MeetingPlan plan;
    plan.steps = {
        StartStep{"Fisherman's Wharf", TimeOfDay{9 * 60}},
        TravelStep{"Golden Gate Park", 25, TimeOfDay{9 * 60 + 25}},
        WaitStep{TimeOfDay{9 * 60 + 30}},
        MeetStep{"Ashley", TimeOfDay{9 * 60 + 30}, TimeOfDay{10 * 60 + 45}},
        TravelStep{"Union Square", 22, TimeOfDay{11 * 60 + 7}},
        WaitStep{TimeOfDay{11 * 60 + 45}},
        MeetStep{"Robert", TimeOfDay{11 * 60 + 45}, TimeOfDay{12 * 60 + 45}},
        TravelStep{"Embarcadero", 10, TimeOfDay{12 * 60 + 55}},
        MeetStep{"Barbara", TimeOfDay{12 * 60 + 55}, TimeOfDay{14 * 60 + 40}},
        TravelStep{"Mission District", 20, TimeOfDay{15 * 60}},
        MeetStep{"Ronald", TimeOfDay{15 * 60}, TimeOfDay{15 * 60 + 45}},
    };
    return plan;
}

QueryInstance trip25()
{
    TripQuery q;
    q.total_days = 25;
    q.stays = {
        CityStay{"Berlin", 4},   CityStay{"Prague", 2},    CityStay{"Stuttgart", 5},
        CityStay{"Manchester", 3}, CityStay{"Nice", 2},    CityStay{"Reykjavik", 2},
        CityStay{"Florence", 3}, CityStay{"Vilnius", 5},   CityStay{"Oslo", 4},
        CityStay{"Dubrovnik", 4},
    };
    q.events = {
        TripEvent{"Berlin", 12, 15},
        TripEvent{"Vilnius", 15, 19},
        TripEvent{"Dubrovnik", 1, 4},
    };
    q.flights = {
        {"Reykjavik", "Stuttgart", false},
        {"Manchester", "Stuttgart", true},
        {"Nice", "Berlin", true},
        {"Oslo", "Prague", true},
        {"Stuttgart", "Berlin", true},
        {"Manchester", "Nice", true},
        {"Reykjavik", "Oslo", true},
        {"Reykjavik", "Prague", true},
        {"Manchester", "Prague", true},
        {"Reykjavik", "Berlin", true},
        {"Dubrovnik", "Manchester", true},
        {"Manchester", "Oslo", true},
        {"Manchester", "Berlin", true},
        {"Prague", "Florence", true},
        {"Berlin", "Vilnius", true},
        {"Dubrovnik", "Oslo", true},
        {"Nice", "Oslo", true},
        {"Berlin", "Oslo", true},
        {"Nice", "Reykjavik", true},
        {"Vilnius", "Oslo", true},
    };

    QueryInstance instance;
    instance.id = "trip-25day";
    instance.domain = Domain::trip;
    instance.subset = "cities=10";
    instance.query = std::move(q);
    return instance;
}

QueryInstance trip21()
{
    TripQuery q;
    q.total_days = 21;
    q.stays = {
        CityStay{"Vienna", 3},  CityStay{"Frankfurt", 5}, CityStay{"Oslo", 2},
        CityStay{"Prague", 3},  CityStay{"Valencia", 2},  CityStay{"Dubrovnik", 2},
        CityStay{"Edinburgh", 5}, CityStay{"London", 2},  CityStay{"Munich", 3},
        CityStay{"Budapest", 3},
    };
    q.events = {
        TripEvent{"Oslo", 20, 21},     TripEvent{"Valencia", 17, 18},
        TripEvent{"Edinburgh", 1, 5},  TripEvent{"London", 12, 13},
        TripEvent{"Munich", 18, 20},
    };
    const std::vector<std::pair<std::string, std::string>> edges = {
        {"Valencia", "Munich"},  {"Vienna", "Munich"},    {"Vienna", "Valencia"},
        {"London", "Budapest"},  {"London", "Oslo"},      {"Edinburgh", "Budapest"},
        {"Frankfurt", "Budapest"}, {"Frankfurt", "London"}, {"Prague", "Oslo"},
        {"Edinburgh", "Oslo"},   {"Edinburgh", "Munich"}, {"Prague", "Munich"},
        {"London", "Prague"},    {"Edinburgh", "London"}, {"Edinburgh", "Frankfurt"},
        {"Dubrovnik", "Munich"}, {"Dubrovnik", "Vienna"}, {"Munich", "Oslo"},
        {"Dubrovnik", "Oslo"},   {"Budapest", "Munich"},  {"Frankfurt", "Prague"},
        {"Vienna", "London"},    {"Frankfurt", "Vienna"}, {"Frankfurt", "Oslo"},
        {"Frankfurt", "Munich"}, {"Vienna", "Oslo"},      {"Vienna", "Prague"},
        {"Budapest", "Oslo"},    {"Budapest", "Prague"},  {"London", "Valencia"},
        {"London", "Munich"},    {"Frankfurt", "Dubrovnik"}, {"Prague", "Valencia"},
        {"Frankfurt", "Valencia"}, {"Edinburgh", "Prague"}, {"Vienna", "Budapest"},
    };
    for (const auto& [a, b] : edges) {
        q.flights.push_back(FlightEdge{a, b, true});
    }

    QueryInstance instance;
    instance.id = "trip-21day";
    instance.domain = Domain::trip;
    instance.subset = "cities=10";
    instance.query = std::move(q);
    return instance;
}

QueryInstance toy_trip()
{
    TripQuery q;
    q.total_days = 5;
    q.stays = {CityStay{"A", 2}, CityStay{"B", 3}, CityStay{"C", 2}};
    q.flights = {FlightEdge{"A", "B", true}, FlightEdge{"B", "C", true}};

    QueryInstance instance;
    instance.id = "trip-toy";
    instance.domain = Domain::trip;
    instance.subset = "cities=3";
    instance.query = std::move(q);
    return instance;
}

QueryInstance myrtle_travel()
{
    TravelSandbox sandbox;
    sandbox.flights = {
        Flight{"F3792603", "Washington", "Myrtle Beach", 120, TimeOfDay{9 * 60 + 19},
               TimeOfDay{10 * 60 + 59}},
        Flight{"F3792699", "Myrtle Beach", "Washington", 130, TimeOfDay{18 * 60},
               TimeOfDay{19 * 60 + 45}},
    };
    sandbox.ground_transport = {
        GroundRoute{"Washington", "Myrtle Beach", "Self-driving", 90},
        GroundRoute{"Washington", "Myrtle Beach", "Taxi", 210},
        GroundRoute{"Myrtle Beach", "Washington", "Self-driving", 90},
        GroundRoute{"Myrtle Beach", "Washington", "Taxi", 210},
    };
    sandbox.restaurants = {
        Restaurant{"Exotic India", "Myrtle Beach", 25, {"Indian"}, 4.2},
        Restaurant{"Twigly", "Myrtle Beach", 30, {"American"}, 4.0},
        Restaurant{"Sea Breeze Cafe", "Myrtle Beach", 20, {"American"}, 4.4},
    };
    sandbox.attractions = {
        Attraction{"SkyWheel Myrtle Beach", "Myrtle Beach"},
        Attraction{"WonderWorks Myrtle Beach", "Myrtle Beach"},
    };
    sandbox.accommodations = {
        Accommodation{"Cozy Brooklyn Room - Next to Pratt Institute", "Myrtle Beach", 60,
                      "private room", {"No smoking"}, 3, 2},
        Accommodation{"Beachside Family Suite", "Myrtle Beach", 80, "entire home", {}, 1, 4},
    };

    TravelQuery q;
    q.origin = "Washington";
    q.destinations = {"Myrtle Beach"};
    q.days = 3;
    q.people = 1;
    q.budget = 1400;

    QueryInstance instance;
    instance.id = "travel-myrtle";
    instance.domain = Domain::travel;
    instance.subset = "constraints=0";
    instance.query = TravelCase{std::move(q), std::move(sandbox)};
    return instance;
}

}  // namespace fixtures
