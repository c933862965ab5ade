#include "modulo/critics.hpp"

#include <doctest.h>

#include "fixtures.hpp"
#include "modulo/oracles.hpp"

using namespace modulo;

namespace {

const CalendarQuery& michelle_query()
{
    static QueryInstance instance = fixtures::michelle_calendar();
    return std::get<CalendarQuery>(instance.query);
}

}  // namespace

TEST_CASE("calendar critic reproduces the Jerry clash")
{
    CalendarProposal noon{Weekday::Monday, {TimeOfDay{720}, TimeOfDay{780}}};
    CritiqueReport report = critique_calendar(michelle_query(), noon);
    CHECK_FALSE(report.all_passed);
    std::vector<std::string> messages = collect_messages(report);
    REQUIRE(messages.size() == 1);
    CHECK(messages[0] == "Jerry is busy on Monday between 11:30 and 12:30");
}

TEST_CASE("calendar critic accepts the unique valid hour")
{
    CalendarProposal ok{Weekday::Monday, {TimeOfDay{870}, TimeOfDay{930}}};  // 14:30-15:30
    CHECK(critique_calendar(michelle_query(), ok).all_passed);
}

TEST_CASE("calendar duration and day critics")
{
    CalendarProposal short_slot{Weekday::Monday, {TimeOfDay{870}, TimeOfDay{900}}};
    CritiqueReport report = critique_calendar(michelle_query(), short_slot);
    CHECK_FALSE(report.all_passed);
    CHECK(report.critiques[1].critic_id == "duration");
    CHECK_FALSE(report.critiques[1].passed);

    CalendarProposal wrong_day{Weekday::Tuesday, {TimeOfDay{870}, TimeOfDay{930}}};
    report = critique_calendar(michelle_query(), wrong_day);
    CHECK_FALSE(report.critiques[0].passed);

    CalendarProposal late{Weekday::Monday, {TimeOfDay{1000}, TimeOfDay{1060}}};
    report = critique_calendar(michelle_query(), late);
    CHECK_FALSE(report.critiques[0].passed);  // outside work hours
}

TEST_CASE("trip critic total duration message, expected value from the query")
{
    const QueryInstance q_instance = fixtures::trip25();
    const auto& q = std::get<TripQuery>(q_instance.query);
    FormatCritique parsed = parse_trip_plan(fixtures::read_fixture("trip_response_4omini.txt"));
    REQUIRE(parsed.passed);
    CritiqueReport report = critique_trip(q, std::get<TripPlan>(parsed.parsed->plan));
    CHECK_FALSE(report.all_passed);

    bool found = false;
    for (const std::string& m : collect_messages(report)) {
        found = found || m == "Total duration of plan is 38, expected 34";
    }
    CHECK(found);
}

TEST_CASE("trip critic accepts valid plans")
{
    const QueryInstance toy_instance = fixtures::toy_trip();
    const auto& toy = std::get<TripQuery>(toy_instance.query);
    TripPlan plan{{{"A", 1, 2}, {"B", 2, 4}, {"C", 4, 5}}};
    CHECK(critique_trip(toy, plan).all_passed);

    TripQuery single;
    single.total_days = 3;
    single.stays = {CityStay{"A", 3}};
    CHECK(critique_trip(single, TripPlan{{{"A", 1, 3}}}).all_passed);

    const QueryInstance q21_instance = fixtures::trip21();

    const auto& q21 = std::get<TripQuery>(q21_instance.query);
    FormatCritique golden = parse_trip_plan(fixtures::read_fixture("trip_golden_21day.txt"));
    REQUIRE(golden.passed);
    CHECK(critique_trip(q21, std::get<TripPlan>(golden.parsed->plan)).all_passed);
}

TEST_CASE("trip critic flags missing flights, boundaries and repeats")
{
    const QueryInstance toy_instance = fixtures::toy_trip();
    const auto& toy = std::get<TripQuery>(toy_instance.query);

    TripPlan wrong_edge{{{"B", 1, 3}, {"A", 3, 4}, {"C", 4, 5}}};  // A-C edge missing
    CritiqueReport report = critique_trip(toy, wrong_edge);
    CHECK_FALSE(report.all_passed);
    bool no_flight = false;
    for (const std::string& m : collect_messages(report)) {
        no_flight = no_flight || m == "There is no direct flight from A to C";
    }
    CHECK(no_flight);

    TripPlan gap{{{"A", 1, 2}, {"B", 3, 5}, {"C", 5, 6}}};  // no shared boundary day
    CHECK_FALSE(critique_trip(toy, gap).all_passed);

    TripPlan repeated{{{"A", 1, 2}, {"B", 2, 4}, {"A", 4, 5}}};
    report = critique_trip(toy, repeated);
    bool once = false;
    for (const std::string& m : collect_messages(report)) {
        once = once || m == "You can travel to A only once";
    }
    CHECK(once);
}

TEST_CASE("trip critic checks event coverage")
{
    auto q = std::get<TripQuery>(fixtures::toy_trip().query);
    q.events.push_back(TripEvent{"B", 4, 5});  // B is only occupied days 2-4
    TripPlan plan{{{"A", 1, 2}, {"B", 2, 4}, {"C", 4, 5}}};
    CritiqueReport report = critique_trip(q, plan);
    CHECK_FALSE(report.all_passed);
    CHECK(collect_messages(report) ==
          std::vector<std::string>{"You are not in B between day 4 and day 5"});
}

TEST_CASE("meeting critic stops at the first infeasible step")
{
    const QueryInstance q_instance = fixtures::wharf_meeting();
    const auto& q = std::get<MeetingQuery>(q_instance.query);
    FormatCritique parsed =
        parse_meeting_plan(fixtures::read_fixture("meeting_response_4omini.txt"));
    REQUIRE(parsed.passed);

    CritiqueReport report = critique_meeting(q, std::get<MeetingPlan>(parsed.parsed->plan));
    CHECK_FALSE(report.all_passed);
    std::vector<std::string> messages = collect_messages(report);
    REQUIRE(messages.size() == 1);
    CHECK(messages[0] ==
          "Invalid meeting time or location with step: "
          "'You meet Ashley for 75 minutes from 9:25AM to 10:40AM'");
}

TEST_CASE("meeting critic accepts the repaired plan")
{
    const QueryInstance q_instance = fixtures::wharf_meeting();
    const auto& q = std::get<MeetingQuery>(q_instance.query);
    CHECK(critique_meeting(q, fixtures::wharf_repaired_plan()).all_passed);
}

TEST_CASE("meeting critic edge rules")
{
    MeetingQuery empty;
    empty.start_location = "X";
    empty.arrival = TimeOfDay{540};
    MeetingPlan start_only{{StartStep{"X", TimeOfDay{540}}}};
    CHECK(critique_meeting(empty, start_only).all_passed);

    // Wrong start location.
    MeetingPlan wrong{{StartStep{"Y", TimeOfDay{540}}}};
    CHECK_FALSE(critique_meeting(empty, wrong).all_passed);

    const QueryInstance q_instance = fixtures::wharf_meeting();

    const auto& q = std::get<MeetingQuery>(q_instance.query);
    MeetingPlan repeat = fixtures::wharf_repaired_plan();
    // Meeting Ashley twice: replay must reject the second meet.
    repeat.steps.push_back(TravelStep{"Golden Gate Park", 17, TimeOfDay{16 * 60 + 2}});
    repeat.steps.push_back(
        MeetStep{"Ashley", TimeOfDay{16 * 60 + 2}, TimeOfDay{17 * 60 + 17}});
    CHECK_FALSE(critique_meeting(q, repeat).all_passed);

    // Waiting backwards is infeasible.
    MeetingPlan back = fixtures::wharf_repaired_plan();
    back.steps.push_back(WaitStep{TimeOfDay{9 * 60}});
    CHECK_FALSE(critique_meeting(q, back).all_passed);
}

TEST_CASE("travel critic reproduces the backprompt messages")
{
    const QueryInstance c_instance = fixtures::myrtle_travel();
    const auto& c = std::get<TravelCase>(c_instance.query);
    FormatCritique parsed =
        parse_travel_plan(fixtures::read_fixture("travel_response_myrtle.txt"));
    REQUIRE(parsed.passed);

    CritiqueReport report =
        critique_travel(c.sandbox, c.query, std::get<TravelPlan>(parsed.parsed->plan));
    CHECK_FALSE(report.all_passed);
    std::vector<std::string> messages = collect_messages(report);
    bool min_nights = false;
    bool breakfast = false;
    for (const std::string& m : messages) {
        min_nights = min_nights ||
                     m == "The accommodation Cozy Brooklyn Room - Next to Pratt Institute, "
                          "Myrtle Beach do not obey the minumum nights rule.";
        breakfast = breakfast || m == "The breakfast in day 3 is invalid or not in the data provided.";
    }
    CHECK(min_nights);
    CHECK(breakfast);

    CHECK(flagged_accommodations(report) ==
          std::set<std::string>{"Cozy Brooklyn Room - Next to Pratt Institute"});
}

TEST_CASE("travel critic accepts an oracle-built plan")
{
    const QueryInstance c_instance = fixtures::myrtle_travel();
    const auto& c = std::get<TravelCase>(c_instance.query);
    OracleVerdict verdict = solve_travel_small(c.sandbox, c.query);
    REQUIRE(verdict.valid);
    CHECK(critique_travel(c.sandbox, c.query, std::get<TravelPlan>(verdict.witness->plan))
              .all_passed);
}

TEST_CASE("get_total_cost formula")
{
    TravelSandbox sandbox;
    CHECK(get_total_cost(sandbox, {}) == 0);

    sandbox.flights = {Flight{"F1", "A", "B", 100, TimeOfDay{600}, TimeOfDay{700}}};
    sandbox.restaurants = {Restaurant{"R", "B", 20, {"American"}, 4.0}};
    sandbox.accommodations = {Accommodation{"H", "B", 50, "entire home", {}, 1, 2}};

    TravelPlan plan(1);
    plan[0].day = 1;
    plan[0].people_number = 1;
    plan[0].current_city = Transition{"A", "B"};
    plan[0].transportation = "Flight Number: F1, from A to B";
    plan[0].dinner = PlaceRef{"R", "B"};
    plan[0].accommodation = PlaceRef{"H", "B"};
    CHECK(get_total_cost(sandbox, plan) == doctest::Approx(170.0));

    // ceil(3 people / occupancy 2) = 2 rooms, 80 a night, 2 nights -> 320.
    sandbox.accommodations = {Accommodation{"H", "B", 80, "entire home", {}, 1, 2}};
    TravelPlan nights(2);
    for (int d = 0; d < 2; ++d) {
        nights[d].day = d + 1;
        nights[d].people_number = 3;
        nights[d].current_city = std::string("B");
        nights[d].accommodation = PlaceRef{"H", "B"};
    }
    CHECK(get_total_cost(sandbox, nights) == doctest::Approx(320.0));

    TravelPlan ghost(1);
    ghost[0].day = 1;
    ghost[0].current_city = std::string("B");
    ghost[0].dinner = PlaceRef{"Nowhere", "B"};
    CHECK_THROWS_AS(get_total_cost(sandbox, ghost), UnresolvedEntity);
}

TEST_CASE("travel cost options switch ground pricing")
{
    TravelSandbox sandbox;
    sandbox.ground_transport = {GroundRoute{"A", "B", "Taxi", 60}};
    TravelPlan plan(1);
    plan[0].day = 1;
    plan[0].people_number = 3;
    plan[0].current_city = Transition{"A", "B"};
    plan[0].transportation = "Taxi, from A to B";

    CHECK(get_total_cost(sandbox, plan) == doctest::Approx(60.0));
    TravelCostOptions per_person;
    per_person.ground_cost_per_person = true;
    CHECK(get_total_cost(sandbox, plan, per_person) == doctest::Approx(180.0));
}

TEST_CASE("pipeline gates constraint critics behind the format critic")
{
    QueryInstance instance = fixtures::michelle_calendar();

    PipelineResult garbage = run_critic_pipeline(instance, "utter nonsense");
    CHECK_FALSE(garbage.format.passed);
    CHECK_FALSE(garbage.report.has_value());

    PipelineResult noon = run_critic_pipeline(
        instance, fixtures::read_fixture("calendar_response_4omini.txt"));
    CHECK(noon.format.passed);
    REQUIRE(noon.report.has_value());
    CHECK_FALSE(noon.report->all_passed);
    CHECK(collect_messages(*noon.report) ==
          std::vector<std::string>{"Jerry is busy on Monday between 11:30 and 12:30"});

    PipelineResult ok =
        run_critic_pipeline(instance, "Here is the proposed time: Monday, 14:30 - 15:30");
    CHECK(ok.all_passed());
}

TEST_CASE("critique output is deterministic")
{
    QueryInstance instance = fixtures::myrtle_travel();
    std::string text = fixtures::read_fixture("travel_response_myrtle.txt");
    PipelineResult a = run_critic_pipeline(instance, text);
    PipelineResult b = run_critic_pipeline(instance, text);
    REQUIRE(a.report.has_value());
    REQUIRE(b.report.has_value());
    CHECK(collect_messages(*a.report) == collect_messages(*b.report));
}
