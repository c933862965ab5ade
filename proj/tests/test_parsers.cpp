#include "modulo/parsers.hpp"

#include <doctest.h>

#include "fixtures.hpp"

using namespace modulo;

TEST_CASE("travel parser reads the recorded fenced response")
{
    FormatCritique c = parse_travel_plan(fixtures::read_fixture("travel_response_myrtle.txt"));
    REQUIRE(c.passed);
    const auto& plan = std::get<TravelPlan>(c.parsed->plan);
    REQUIRE(plan.size() == 3);
    CHECK(plan[0].transportation.value().find("F3792603") != std::string::npos);
    CHECK(std::get<Transition>(plan[0].current_city) ==
          Transition{"Washington", "Myrtle Beach"});
    CHECK(plan[0].breakfast == std::nullopt);
    REQUIRE(plan[0].attractions.size() == 2);
    CHECK(plan[0].attractions[0] == PlaceRef{"SkyWheel Myrtle Beach", "Myrtle Beach"});
    CHECK(plan[1].accommodation ==
          PlaceRef{"Cozy Brooklyn Room - Next to Pratt Institute", "Myrtle Beach"});
    CHECK(std::get<std::string>(plan[1].current_city) == "Myrtle Beach");
}

TEST_CASE("travel parser failure modes")
{
    FormatCritique empty = parse_travel_plan("[]");
    CHECK_FALSE(empty.passed);
    REQUIRE(empty.messages.size() == 1);
    CHECK(empty.messages[0] == "empty itinerary");

    FormatCritique missing = parse_travel_plan(R"([{"day": 2, "people_number": 1,
        "current_city": "Rome", "transportation": "-", "breakfast": "-",
        "attraction": "-", "lunch": "-", "accommodation": "-"}])");
    CHECK_FALSE(missing.passed);
    REQUIRE(missing.messages.size() == 1);
    CHECK(missing.messages[0] == "missing key \"dinner\" on day 2");

    CHECK_FALSE(parse_travel_plan("no json here").passed);
    CHECK(parse_travel_plan("no json here").messages[0] == "unparsable JSON");
    CHECK_FALSE(parse_travel_plan(R"([{"day": "one"}])").passed);
    CHECK_FALSE(parse_travel_plan(R"(["fish"])").passed);
}

TEST_CASE("trip parser reads the 21-day golden solution")
{
    FormatCritique c = parse_trip_plan(fixtures::read_fixture("trip_golden_21day.txt"));
    REQUIRE(c.passed);
    const auto& plan = std::get<TripPlan>(c.parsed->plan);
    REQUIRE(plan.segments.size() == 10);
    CHECK(plan.segments.front() == TripSegment{"Edinburgh", 1, 5});
    CHECK(plan.segments.back() == TripSegment{"Oslo", 20, 21});
}

TEST_CASE("trip parser ignores event restatements")
{
    FormatCritique c = parse_trip_plan(fixtures::read_fixture("trip_response_4omini.txt"));
    REQUIRE(c.passed);
    const auto& plan = std::get<TripPlan>(c.parsed->plan);
    REQUIRE(plan.segments.size() == 10);  // the workshop line adds no segment
    int sum = 0;
    for (const TripSegment& seg : plan.segments) {
        sum += seg.length();
    }
    CHECK(sum == 38);
}

TEST_CASE("trip parser corner cases")
{
    FormatCritique one =
        parse_trip_plan("SOLUTION: **Day 1-5:** Arriving in A and visit A for 5 days.");
    REQUIRE(one.passed);
    CHECK(std::get<TripPlan>(one.parsed->plan).segments ==
          std::vector<TripSegment>{{"A", 1, 5}});

    CHECK_FALSE(parse_trip_plan("no marker at all").passed);
    CHECK(parse_trip_plan("no marker at all").messages[0] == "no SOLUTION marker");
    CHECK_FALSE(parse_trip_plan("SOLUTION: fly me to the moon").passed);
    CHECK_FALSE(
        parse_trip_plan("SOLUTION: **Day 5-1:** Arriving in A and visit A for 5 days.").passed);
}

TEST_CASE("meeting parser reads the recorded response")
{
    FormatCritique c = parse_meeting_plan(fixtures::read_fixture("meeting_response_4omini.txt"));
    REQUIRE(c.passed);
    const auto& plan = std::get<MeetingPlan>(c.parsed->plan);
    REQUIRE(plan.steps.size() == 10);
    CHECK(std::get<StartStep>(plan.steps[0]) ==
          StartStep{"Fisherman's Wharf", TimeOfDay{540}});
    CHECK(std::get<MeetStep>(plan.steps[2]) ==
          MeetStep{"Ashley", TimeOfDay{9 * 60 + 25}, TimeOfDay{10 * 60 + 40}});
}

TEST_CASE("meeting parser corner cases")
{
    FormatCritique start_only = parse_meeting_plan("SOLUTION: You start at X at 9:00AM.");
    REQUIRE(start_only.passed);
    CHECK(std::get<MeetingPlan>(start_only.parsed->plan).steps.size() == 1);

    FormatCritique unknown = parse_meeting_plan("SOLUTION: You teleport to Y.");
    CHECK_FALSE(unknown.passed);
    REQUIRE(unknown.messages.size() == 1);
    CHECK(unknown.messages[0] == "unknown step: 'You teleport to Y'");

    CHECK_FALSE(parse_meeting_plan("You start at X at 9:00AM.").passed);  // no marker
    CHECK_FALSE(
        parse_meeting_plan("SOLUTION: You wait until 10:00AM. You start at X at 9:00AM.").passed);
}

TEST_CASE("calendar parser extracts the proposal template")
{
    FormatCritique c = parse_calendar_plan("Here is the proposed time: Monday, 12:00 - 13:00");
    REQUIRE(c.passed);
    CHECK(std::get<CalendarProposal>(c.parsed->plan) ==
          CalendarProposal{Weekday::Monday, {TimeOfDay{720}, TimeOfDay{780}}});

    c = parse_calendar_plan("SOLUTION: Here is the proposed time: Monday, 11:00 - 11:30");
    REQUIRE(c.passed);
    CHECK(std::get<CalendarProposal>(c.parsed->plan) ==
          CalendarProposal{Weekday::Monday, {TimeOfDay{660}, TimeOfDay{690}}});

    CHECK_FALSE(parse_calendar_plan("Sure! How about sometime Monday?").passed);
    CHECK_FALSE(parse_calendar_plan("Here is the proposed time: Monday, 13:00 - 12:00").passed);

    FormatCritique twice = parse_calendar_plan(
        "Here is the proposed time: Monday, 9:00 - 9:30 or maybe "
        "Here is the proposed time: Tuesday, 10:00 - 10:30");
    REQUIRE(twice.passed);
    CHECK(std::get<CalendarProposal>(twice.parsed->plan).day == Weekday::Monday);
    CHECK(twice.messages.size() == 1);  // warning about the second match
}

TEST_CASE("render_plan canonical surface forms")
{
    CHECK(render_calendar_proposal({Weekday::Monday, {TimeOfDay{660}, TimeOfDay{690}}}) ==
          "Here is the proposed time: Monday, 11:00 - 11:30");

    TripPlan trip{{TripSegment{"A", 1, 2}}};
    CHECK(render_trip_plan(trip).find("**Day 1-2:** Arriving in A and visit A for 2 days.") !=
          std::string::npos);

    PlanDocument doc{Domain::trip, trip};
    FormatCritique back = parse_plan(Domain::trip, render_plan(doc));
    REQUIRE(back.passed);
    CHECK(*back.parsed == doc);
}

TEST_CASE("golden fixture renders byte-identically from its structured plan")
{
    // The 21-day plan, rebuilt from segments, must render to the fixture.
    FormatCritique parsed = parse_trip_plan(fixtures::read_fixture("trip_golden_21day.txt"));
    REQUIRE(parsed.passed);
    std::string rendered = render_plan(*parsed.parsed);
    std::string fixture = fixtures::read_fixture("trip_golden_21day.txt");
    while (!fixture.empty() && fixture.back() == '\n') {
        fixture.pop_back();
    }
    CHECK(rendered == fixture);
}

TEST_CASE("meeting render round trips the recorded response steps")
{
    FormatCritique c = parse_meeting_plan(fixtures::read_fixture("meeting_response_4omini.txt"));
    REQUIRE(c.passed);
    FormatCritique again = parse_meeting_plan(render_plan(*c.parsed));
    REQUIRE(again.passed);
    CHECK(*again.parsed == *c.parsed);
}
