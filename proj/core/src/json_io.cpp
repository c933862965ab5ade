#include "modulo/json_io.hpp"

namespace modulo {

namespace {

nlohmann::json interval_to_json(const TimeInterval& iv)
{
    return nlohmann::json::array({format_time_24h(iv.start), format_time_24h(iv.end)});
}

TimeInterval interval_from_json(const nlohmann::json& j)
{
    return TimeInterval{parse_time_of_day(j.at(0).get<std::string>()),
                        parse_time_of_day(j.at(1).get<std::string>())};
}

}  // namespace

nlohmann::json to_json(const CalendarQuery& q)
{
    nlohmann::json participants = nlohmann::json::array();
    for (const Participant& p : q.participants) {
        nlohmann::json busy = nlohmann::json::object();
        for (const auto& [day, blocks] : p.busy) {
            nlohmann::json list = nlohmann::json::array();
            for (const TimeInterval& b : blocks) {
                list.push_back(interval_to_json(b));
            }
            busy[std::string(weekday_name(day))] = std::move(list);
        }
        participants.push_back({{"name", p.name}, {"busy", std::move(busy)}});
    }
    nlohmann::json days = nlohmann::json::array();
    for (Weekday d : q.candidate_days) {
        days.push_back(std::string(weekday_name(d)));
    }
    return {{"participants", std::move(participants)},
            {"duration", q.duration_minutes},
            {"work_window", interval_to_json(q.work_window)},
            {"candidate_days", std::move(days)},
            {"prefer_earliest", q.prefer_earliest}};
}

CalendarQuery calendar_query_from_json(const nlohmann::json& j)
{
    CalendarQuery q;
    for (const auto& pj : j.at("participants")) {
        Participant p;
        p.name = pj.at("name").get<std::string>();
        if (pj.contains("busy")) {
            for (const auto& [day, blocks] : pj["busy"].items()) {
                std::vector<TimeInterval> list;
                for (const auto& b : blocks) {
                    list.push_back(interval_from_json(b));
                }
                p.busy[parse_weekday(day)] = std::move(list);
            }
        }
        q.participants.push_back(std::move(p));
    }
    q.duration_minutes = j.at("duration").get<int>();
    q.work_window = interval_from_json(j.at("work_window"));
    for (const auto& d : j.at("candidate_days")) {
        q.candidate_days.push_back(parse_weekday(d.get<std::string>()));
    }
    q.prefer_earliest = j.value("prefer_earliest", false);
    return q;
}

nlohmann::json to_json(const TripQuery& q)
{
    nlohmann::json stays = nlohmann::json::array();
    for (const CityStay& s : q.stays) {
        stays.push_back({{"city", s.city}, {"days", s.required_days}});
    }
    nlohmann::json events = nlohmann::json::array();
    for (const TripEvent& e : q.events) {
        events.push_back({{"city", e.city}, {"start_day", e.start_day}, {"end_day", e.end_day}});
    }
    nlohmann::json flights = nlohmann::json::array();
    for (const FlightEdge& e : q.flights) {
        flights.push_back({{"from", e.from}, {"to", e.to}, {"bidirectional", e.bidirectional}});
    }
    return {{"total_days", q.total_days},
            {"stays", std::move(stays)},
            {"events", std::move(events)},
            {"flights", std::move(flights)}};
}

TripQuery trip_query_from_json(const nlohmann::json& j)
{
    TripQuery q;
    q.total_days = j.at("total_days").get<int>();
    for (const auto& s : j.at("stays")) {
        q.stays.push_back(CityStay{s.at("city").get<std::string>(), s.at("days").get<int>()});
    }
    for (const auto& e : j.value("events", nlohmann::json::array())) {
        q.events.push_back(TripEvent{e.at("city").get<std::string>(),
                                     e.at("start_day").get<int>(), e.at("end_day").get<int>()});
    }
    for (const auto& f : j.at("flights")) {
        q.flights.push_back(FlightEdge{f.at("from").get<std::string>(),
                                       f.at("to").get<std::string>(),
                                       f.value("bidirectional", true)});
    }
    return q;
}

nlohmann::json to_json(const MeetingQuery& q)
{
    nlohmann::json friends = nlohmann::json::array();
    for (const FriendConstraint& f : q.friends) {
        friends.push_back({{"name", f.name},
                           {"location", f.location},
                           {"window", interval_to_json(f.window)},
                           {"min_duration", f.min_duration_minutes}});
    }
    nlohmann::json travel = nlohmann::json::array();
    for (const auto& [key, minutes] : q.travel_minutes) {
        travel.push_back({{"from", key.first}, {"to", key.second}, {"minutes", minutes}});
    }
    return {{"start_location", q.start_location},
            {"arrival", format_time_24h(q.arrival)},
            {"friends", std::move(friends)},
            {"travel_minutes", std::move(travel)}};
}

MeetingQuery meeting_query_from_json(const nlohmann::json& j)
{
    MeetingQuery q;
    q.start_location = j.at("start_location").get<std::string>();
    q.arrival = parse_time_of_day(j.at("arrival").get<std::string>());
    for (const auto& f : j.value("friends", nlohmann::json::array())) {
        q.friends.push_back(FriendConstraint{f.at("name").get<std::string>(),
                                             f.at("location").get<std::string>(),
                                             interval_from_json(f.at("window")),
                                             f.at("min_duration").get<int>()});
    }
    for (const auto& t : j.at("travel_minutes")) {
        q.travel_minutes[{t.at("from").get<std::string>(), t.at("to").get<std::string>()}] =
            t.at("minutes").get<int>();
    }
    return q;
}

nlohmann::json to_json(const TravelSandbox& s)
{
    nlohmann::json accommodations = nlohmann::json::array();
    for (const Accommodation& a : s.accommodations) {
        accommodations.push_back({{"name", a.name},
                                  {"city", a.city},
                                  {"price_per_night", a.price_per_night},
                                  {"room_type", a.room_type},
                                  {"house_rules", a.house_rules},
                                  {"minimum_nights", a.minimum_nights},
                                  {"maximum_occupancy", a.maximum_occupancy}});
    }
    nlohmann::json restaurants = nlohmann::json::array();
    for (const Restaurant& r : s.restaurants) {
        restaurants.push_back({{"name", r.name},
                               {"city", r.city},
                               {"average_cost", r.average_cost},
                               {"cuisines", r.cuisines},
                               {"rating", r.rating}});
    }
    nlohmann::json attractions = nlohmann::json::array();
    for (const Attraction& a : s.attractions) {
        attractions.push_back({{"name", a.name}, {"city", a.city}});
    }
    nlohmann::json flights = nlohmann::json::array();
    for (const Flight& f : s.flights) {
        flights.push_back({{"number", f.number},
                           {"origin", f.origin},
                           {"dest", f.dest},
                           {"price", f.price},
                           {"departure", format_time_24h(f.departure)},
                           {"arrival", format_time_24h(f.arrival)}});
    }
    nlohmann::json ground = nlohmann::json::array();
    for (const GroundRoute& g : s.ground_transport) {
        ground.push_back(
            {{"origin", g.origin}, {"dest", g.dest}, {"mode", g.mode}, {"cost", g.cost}});
    }
    return {{"accommodations", std::move(accommodations)},
            {"restaurants", std::move(restaurants)},
            {"attractions", std::move(attractions)},
            {"flights", std::move(flights)},
            {"ground_transport", std::move(ground)}};
}

TravelSandbox sandbox_from_json(const nlohmann::json& j)
{
    TravelSandbox s;
    for (const auto& a : j.value("accommodations", nlohmann::json::array())) {
        s.accommodations.push_back(Accommodation{
            a.at("name").get<std::string>(), a.at("city").get<std::string>(),
            a.at("price_per_night").get<double>(), a.at("room_type").get<std::string>(),
            a.value("house_rules", std::vector<std::string>{}), a.at("minimum_nights").get<int>(),
            a.at("maximum_occupancy").get<int>()});
    }
    for (const auto& r : j.value("restaurants", nlohmann::json::array())) {
        s.restaurants.push_back(Restaurant{
            r.at("name").get<std::string>(), r.at("city").get<std::string>(),
            r.at("average_cost").get<double>(), r.value("cuisines", std::vector<std::string>{}),
            r.value("rating", 0.0)});
    }
    for (const auto& a : j.value("attractions", nlohmann::json::array())) {
        s.attractions.push_back(
            Attraction{a.at("name").get<std::string>(), a.at("city").get<std::string>()});
    }
    for (const auto& f : j.value("flights", nlohmann::json::array())) {
        s.flights.push_back(Flight{f.at("number").get<std::string>(),
                                   f.at("origin").get<std::string>(),
                                   f.at("dest").get<std::string>(), f.at("price").get<double>(),
                                   parse_time_of_day(f.at("departure").get<std::string>()),
                                   parse_time_of_day(f.at("arrival").get<std::string>())});
    }
    for (const auto& g : j.value("ground_transport", nlohmann::json::array())) {
        s.ground_transport.push_back(
            GroundRoute{g.at("origin").get<std::string>(), g.at("dest").get<std::string>(),
                        g.at("mode").get<std::string>(), g.at("cost").get<double>()});
    }
    return s;
}

nlohmann::json to_json(const TravelCase& c)
{
    nlohmann::json constraints = nlohmann::json::array();
    for (const TravelConstraint& x : c.query.constraints) {
        constraints.push_back(
            {{"kind", std::string(travel_constraint_kind_name(x.kind))}, {"value", x.value}});
    }
    return {{"origin", c.query.origin},
            {"destinations", c.query.destinations},
            {"days", c.query.days},
            {"people", c.query.people},
            {"budget", c.query.budget},
            {"constraints", std::move(constraints)},
            {"sandbox", to_json(c.sandbox)}};
}

TravelCase travel_case_from_json(const nlohmann::json& j)
{
    TravelCase c;
    c.query.origin = j.at("origin").get<std::string>();
    c.query.destinations = j.at("destinations").get<std::vector<std::string>>();
    c.query.days = j.at("days").get<int>();
    c.query.people = j.at("people").get<int>();
    c.query.budget = j.at("budget").get<double>();
    for (const auto& x : j.value("constraints", nlohmann::json::array())) {
        c.query.constraints.push_back(
            TravelConstraint{parse_travel_constraint_kind(x.at("kind").get<std::string>()),
                             x.at("value").get<std::string>()});
    }
    c.sandbox = sandbox_from_json(j.at("sandbox"));
    return c;
}

nlohmann::json instance_to_json(const QueryInstance& instance)
{
    nlohmann::json query;
    switch (instance.domain) {
    case Domain::travel: query = to_json(std::get<TravelCase>(instance.query)); break;
    case Domain::trip: query = to_json(std::get<TripQuery>(instance.query)); break;
    case Domain::meeting: query = to_json(std::get<MeetingQuery>(instance.query)); break;
    case Domain::calendar: query = to_json(std::get<CalendarQuery>(instance.query)); break;
    }
    nlohmann::json j{{"id", instance.id},
                     {"domain", std::string(domain_name(instance.domain))},
                     {"subset", instance.subset},
                     {"prompt_text", instance.prompt_text},
                     {"query", std::move(query)}};
    if (instance.golden) {
        j["golden"] = *instance.golden;
    }
    return j;
}

QueryInstance instance_from_json(const nlohmann::json& j)
{
    QueryInstance instance;
    instance.id = j.at("id").get<std::string>();
    instance.domain = parse_domain(j.at("domain").get<std::string>());
    instance.subset = j.value("subset", "");
    instance.prompt_text = j.value("prompt_text", "");
    if (j.contains("golden")) {
        instance.golden = j["golden"].get<std::string>();
    }
    const nlohmann::json& query = j.at("query");
    switch (instance.domain) {
    case Domain::travel: instance.query = travel_case_from_json(query); break;
    case Domain::trip: instance.query = trip_query_from_json(query); break;
    case Domain::meeting: instance.query = meeting_query_from_json(query); break;
    case Domain::calendar: instance.query = calendar_query_from_json(query); break;
    }
    return instance;
}

}  // namespace modulo
