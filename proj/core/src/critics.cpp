#include "modulo/critics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <regex>

namespace modulo {

Critique Critique::of(std::string critic_id, std::vector<std::string> messages)
{
    Critique c;
    c.critic_id = std::move(critic_id);
    c.passed = messages.empty();
    c.messages = std::move(messages);
    return c;
}

CritiqueReport CritiqueReport::of(std::vector<Critique> critiques)
{
    CritiqueReport r;
    r.all_passed = std::all_of(critiques.begin(), critiques.end(),
                               [](const Critique& c) { return c.passed; });
    r.critiques = std::move(critiques);
    return r;
}

std::string format_money(double value)
{
    if (value == std::floor(value) && std::abs(value) < 1e15) {
        return fmt::format("{}", static_cast<long long>(value));
    }
    return fmt::format("{:.2f}", value);
}

// ---------------------------------------------------------------------------
// Calendar
// ---------------------------------------------------------------------------

CritiqueReport critique_calendar(const CalendarQuery& q, const CalendarProposal& p)
{
    std::vector<std::string> work_hours;
    if (std::find(q.candidate_days.begin(), q.candidate_days.end(), p.day) ==
        q.candidate_days.end()) {
        work_hours.push_back(
            fmt::format("{} is not among the candidate days", weekday_name(p.day)));
    }
    if (!q.work_window.contains(TimeInterval{p.slot.start, p.slot.end})) {
        work_hours.push_back(fmt::format("The proposed time is not within the work hours of {} to {}",
                                         format_time_24h(q.work_window.start),
                                         format_time_24h(q.work_window.end)));
    }

    std::vector<std::string> duration;
    if (p.slot.length() != q.duration_minutes) {
        duration.push_back(fmt::format("The proposed meeting lasts {} minutes, expected {}",
                                       p.slot.length(), q.duration_minutes));
    }

    std::vector<std::string> clashes;
    for (const Participant& participant : q.participants) {
        auto it = participant.busy.find(p.day);
        if (it == participant.busy.end()) {
            continue;
        }
        std::vector<TimeInterval> blocks = it->second;
        std::sort(blocks.begin(), blocks.end());
        for (const TimeInterval& block : blocks) {
            if (block.overlaps(p.slot)) {
                clashes.push_back(fmt::format("{} is busy on {} between {} and {}",
                                              participant.name, weekday_name(p.day),
                                              format_time_24h(block.start),
                                              format_time_24h(block.end)));
            }
        }
    }

    return CritiqueReport::of({Critique::of("work_hours", std::move(work_hours)),
                               Critique::of("duration", std::move(duration)),
                               Critique::of("availability", std::move(clashes))});
}

// ---------------------------------------------------------------------------
// Trip
// ---------------------------------------------------------------------------

CritiqueReport critique_trip(const TripQuery& q, const TripPlan& p)
{
    std::vector<std::string> stay_duration;
    for (const TripSegment& seg : p.segments) {
        const CityStay* stay = q.find_stay(seg.city);
        if (stay == nullptr) {
            stay_duration.push_back(
                fmt::format("The city {} is not part of the requested trip", seg.city));
        } else if (seg.length() != stay->required_days) {
            stay_duration.push_back(fmt::format("Stay in {} lasts {} days, expected {}", seg.city,
                                                seg.length(), stay->required_days));
        }
    }

    std::vector<std::string> flights;
    for (size_t i = 0; i + 1 < p.segments.size(); ++i) {
        const TripSegment& from = p.segments[i];
        const TripSegment& to = p.segments[i + 1];
        if (to.start_day != from.end_day) {
            flights.push_back(fmt::format(
                "The flight from {} to {} must happen on day {}, but the stay in {} starts on day {}",
                from.city, to.city, from.end_day, to.city, to.start_day));
        }
        if (!q.has_flight(from.city, to.city)) {
            flights.push_back(
                fmt::format("There is no direct flight from {} to {}", from.city, to.city));
        }
    }

    std::vector<std::string> events;
    for (const TripEvent& e : q.events) {
        auto it = std::find_if(p.segments.begin(), p.segments.end(),
                               [&e](const TripSegment& s) { return s.city == e.city; });
        if (it == p.segments.end() || e.start_day < it->start_day || e.end_day > it->end_day) {
            events.push_back(fmt::format("You are not in {} between day {} and day {}", e.city,
                                         e.start_day, e.end_day));
        }
    }

    std::vector<std::string> total;
    int sum = 0;
    for (const TripSegment& seg : p.segments) {
        sum += seg.length();
    }
    int expected = q.total_days + static_cast<int>(q.stays.size()) - 1;
    if (sum != expected) {
        total.push_back(fmt::format("Total duration of plan is {}, expected {}", sum, expected));
    }
    std::map<std::string, int> visits;
    for (const TripSegment& seg : p.segments) {
        ++visits[seg.city];
    }
    for (const auto& [city, count] : visits) {
        if (count > 1) {
            total.push_back(fmt::format("You can travel to {} only once", city));
        }
    }
    for (const CityStay& stay : q.stays) {
        if (!visits.contains(stay.city)) {
            total.push_back(fmt::format("The plan does not visit {}", stay.city));
        }
    }
    if (!p.segments.empty()) {
        if (p.segments.front().start_day != 1) {
            total.push_back("The trip must start on day 1");
        }
        if (p.segments.back().end_day != q.total_days) {
            total.push_back(fmt::format("The trip must end on day {}", q.total_days));
        }
    }

    return CritiqueReport::of({Critique::of("stay_duration", std::move(stay_duration)),
                               Critique::of("flights", std::move(flights)),
                               Critique::of("events", std::move(events)),
                               Critique::of("total_duration", std::move(total))});
}

// ---------------------------------------------------------------------------
// Meeting
// ---------------------------------------------------------------------------

CritiqueReport critique_meeting(const MeetingQuery& q, const MeetingPlan& p)
{
    std::vector<std::string> messages;
    std::string location;
    TimeOfDay now{0};
    std::set<std::string> met;
    bool started = false;

    auto fail = [&messages](const MeetingStep& step) {
        messages.push_back(fmt::format("Invalid meeting time or location with step: '{}'",
                                       render_meeting_step(step)));
    };

    for (const MeetingStep& step : p.steps) {
        if (const auto* start = std::get_if<StartStep>(&step)) {
            if (started || start->location != q.start_location || start->at != q.arrival) {
                fail(step);
                break;
            }
            started = true;
            location = start->location;
            now = start->at;
        } else if (const auto* travel = std::get_if<TravelStep>(&step)) {
            std::optional<int> minutes = q.travel_time(location, travel->to);
            if (!started || !minutes || *minutes != travel->minutes ||
                travel->arrive.minutes != now.minutes + travel->minutes) {
                fail(step);
                break;
            }
            now = travel->arrive;
            location = travel->to;
        } else if (const auto* wait = std::get_if<WaitStep>(&step)) {
            if (!started || wait->until < now) {
                fail(step);
                break;
            }
            now = wait->until;
        } else {
            const auto& meet = std::get<MeetStep>(step);
            auto it = std::find_if(q.friends.begin(), q.friends.end(),
                                   [&meet](const FriendConstraint& f) {
                                       return f.name == meet.friend_name;
                                   });
            if (!started || it == q.friends.end() || met.contains(meet.friend_name) ||
                it->location != location || meet.start != now || meet.end <= meet.start ||
                meet.start < it->window.start || meet.end > it->window.end ||
                meet.end.minutes - meet.start.minutes < it->min_duration_minutes) {
                fail(step);
                break;
            }
            met.insert(meet.friend_name);
            now = meet.end;
        }
    }

    return CritiqueReport::of({Critique::of("feasibility", std::move(messages))});
}

// ---------------------------------------------------------------------------
// Travel
// ---------------------------------------------------------------------------

namespace {

struct TransportLeg {
    enum class Mode { flight, self_driving, taxi } mode = Mode::flight;
    std::string flight_number;
    std::string from;
    std::string to;
};

std::optional<TransportLeg> parse_transport(const std::string& text)
{
    static const std::regex flight_re(
        R"(^Flight Number: ([A-Za-z0-9]+), from (.+?) to (.+?)(?:,.*)?$)");
    static const std::regex ground_re(R"(^(Self-driving|Taxi), from (.+?) to (.+?)(?:,.*)?$)");
    std::smatch m;
    if (std::regex_match(text, m, flight_re)) {
        return TransportLeg{TransportLeg::Mode::flight, m[1].str(), m[2].str(), m[3].str()};
    }
    if (std::regex_match(text, m, ground_re)) {
        TransportLeg leg;
        leg.mode = m[1].str() == "Taxi" ? TransportLeg::Mode::taxi : TransportLeg::Mode::self_driving;
        leg.from = m[2].str();
        leg.to = m[3].str();
        return leg;
    }
    return std::nullopt;
}

std::string_view mode_name(TransportLeg::Mode mode)
{
    switch (mode) {
    case TransportLeg::Mode::flight: return "Flight";
    case TransportLeg::Mode::self_driving: return "Self-driving";
    case TransportLeg::Mode::taxi: return "Taxi";
    }
    return "Flight";
}

bool city_allowed(const TravelPlanDay& day, const std::string& city)
{
    const auto cities = day.cities_of_day();
    return std::find(cities.begin(), cities.end(), city) != cities.end();
}

const Restaurant* resolve_restaurant(const TravelSandbox& sandbox, const TravelPlanDay& day,
                                     const PlaceRef& ref)
{
    if (!city_allowed(day, ref.city)) {
        return nullptr;
    }
    return sandbox.find_restaurant(ref.name, ref.city);
}

}  // namespace

double get_total_cost(const TravelSandbox& sandbox, const TravelPlan& plan,
                      const TravelCostOptions& opts)
{
    double total = 0;
    for (const TravelPlanDay& day : plan) {
        int people = day.people_number;
        if (day.transportation) {
            auto leg = parse_transport(*day.transportation);
            if (!leg) {
                throw UnresolvedEntity(
                    fmt::format("unparsable transportation on day {}", day.day));
            }
            if (leg->mode == TransportLeg::Mode::flight) {
                const Flight* flight = sandbox.find_flight(leg->flight_number);
                if (flight == nullptr) {
                    throw UnresolvedEntity(
                        fmt::format("unknown flight {} on day {}", leg->flight_number, day.day));
                }
                total += flight->price * people;
            } else {
                const GroundRoute* route = sandbox.find_ground(
                    leg->from, leg->to, std::string(mode_name(leg->mode)));
                if (route == nullptr) {
                    throw UnresolvedEntity(fmt::format("unknown {} route on day {}",
                                                       mode_name(leg->mode), day.day));
                }
                total += route->cost * (opts.ground_cost_per_person ? people : 1);
            }
        }
        for (const std::optional<PlaceRef>& meal : {day.breakfast, day.lunch, day.dinner}) {
            if (!meal) {
                continue;
            }
            const Restaurant* restaurant = sandbox.find_restaurant(meal->name, meal->city);
            if (restaurant == nullptr) {
                throw UnresolvedEntity(
                    fmt::format("unknown restaurant {} on day {}", meal->name, day.day));
            }
            total += restaurant->average_cost * people;
        }
        if (day.accommodation) {
            const Accommodation* listing =
                sandbox.find_accommodation(day.accommodation->name, day.accommodation->city);
            if (listing == nullptr) {
                throw UnresolvedEntity(
                    fmt::format("unknown accommodation {} on day {}", day.accommodation->name,
                                day.day));
            }
            int rooms = (day.people_number + listing->maximum_occupancy - 1) /
                        listing->maximum_occupancy;
            total += listing->price_per_night * rooms;
        }
    }
    return total;
}

CritiqueReport critique_travel(const TravelSandbox& sandbox, const TravelQuery& q,
                               const TravelPlan& plan, const TravelCostOptions& opts)
{
    // (1) entity validity
    std::vector<std::string> entities;
    bool all_resolved = true;
    auto invalid = [&entities, &all_resolved](std::string_view slot, int day) {
        entities.push_back(
            fmt::format("The {} in day {} is invalid or not in the data provided.", slot, day));
        all_resolved = false;
    };
    for (const TravelPlanDay& day : plan) {
        if (day.transportation) {
            auto leg = parse_transport(*day.transportation);
            bool ok = false;
            if (leg && leg->mode == TransportLeg::Mode::flight) {
                const Flight* flight = sandbox.find_flight(leg->flight_number);
                ok = flight != nullptr && flight->origin == leg->from && flight->dest == leg->to;
            } else if (leg) {
                ok = sandbox.find_ground(leg->from, leg->to,
                                         std::string(mode_name(leg->mode))) != nullptr;
            }
            if (!ok) {
                invalid("transportation", day.day);
            }
        }
        if (day.breakfast && resolve_restaurant(sandbox, day, *day.breakfast) == nullptr) {
            invalid("breakfast", day.day);
        }
        bool attraction_ok = true;
        for (const PlaceRef& ref : day.attractions) {
            if (!city_allowed(day, ref.city) ||
                sandbox.find_attraction(ref.name, ref.city) == nullptr) {
                attraction_ok = false;
            }
        }
        if (!attraction_ok) {
            invalid("attraction", day.day);
        }
        if (day.lunch && resolve_restaurant(sandbox, day, *day.lunch) == nullptr) {
            invalid("lunch", day.day);
        }
        if (day.dinner && resolve_restaurant(sandbox, day, *day.dinner) == nullptr) {
            invalid("dinner", day.day);
        }
        if (day.accommodation &&
            (!city_allowed(day, day.accommodation->city) ||
             sandbox.find_accommodation(day.accommodation->name, day.accommodation->city) ==
                 nullptr)) {
            invalid("accommodation", day.day);
        }
    }

    // (2) minimum nights over consecutive identical bookings
    std::vector<std::string> min_nights;
    std::set<std::pair<std::string, std::string>> min_nights_flagged;
    size_t i = 0;
    while (i < plan.size()) {
        if (!plan[i].accommodation) {
            ++i;
            continue;
        }
        const PlaceRef ref = *plan[i].accommodation;
        size_t j = i;
        while (j < plan.size() && plan[j].accommodation && *plan[j].accommodation == ref) {
            ++j;
        }
        int nights = static_cast<int>(j - i);
        const Accommodation* listing = sandbox.find_accommodation(ref.name, ref.city);
        if (listing != nullptr && nights < listing->minimum_nights &&
            min_nights_flagged.insert({ref.name, ref.city}).second) {
            min_nights.push_back(
                fmt::format("The accommodation {}, {} do not obey the minumum nights rule.",
                            ref.name, ref.city));
        }
        i = j;
    }

    // (3) query constraints: people count, room rules/type, cuisines, transport modes
    std::vector<std::string> constraints;
    for (const TravelPlanDay& day : plan) {
        if (day.people_number != q.people) {
            constraints.push_back(
                fmt::format("The people number in day {} does not match the query.", day.day));
        }
    }
    std::vector<const Accommodation*> used_listings;
    for (const TravelPlanDay& day : plan) {
        if (!day.accommodation) {
            continue;
        }
        const Accommodation* listing =
            sandbox.find_accommodation(day.accommodation->name, day.accommodation->city);
        if (listing != nullptr &&
            std::find(used_listings.begin(), used_listings.end(), listing) == used_listings.end()) {
            used_listings.push_back(listing);
        }
    }
    std::set<std::string> cuisines_covered;
    for (const TravelPlanDay& day : plan) {
        for (const std::optional<PlaceRef>& meal : {day.breakfast, day.lunch, day.dinner}) {
            if (!meal) {
                continue;
            }
            if (const Restaurant* r = sandbox.find_restaurant(meal->name, meal->city)) {
                cuisines_covered.insert(r->cuisines.begin(), r->cuisines.end());
            }
        }
    }
    for (const TravelConstraint& c : q.constraints) {
        switch (c.kind) {
        case TravelConstraintKind::room_rule:
            for (const Accommodation* listing : used_listings) {
                const auto& rules = listing->house_rules;
                if (std::find(rules.begin(), rules.end(), "No " + c.value) != rules.end()) {
                    constraints.push_back(
                        fmt::format("The accommodation {}, {} do not obey the room rule: {}.",
                                    listing->name, listing->city, c.value));
                }
            }
            break;
        case TravelConstraintKind::room_type:
            for (const Accommodation* listing : used_listings) {
                bool ok = c.value == "not shared room" ? listing->room_type != "shared room"
                                                       : listing->room_type == c.value;
                if (!ok) {
                    constraints.push_back(fmt::format(
                        "The accommodation {}, {} do not obey the room type requirement: {}.",
                        listing->name, listing->city, c.value));
                }
            }
            break;
        case TravelConstraintKind::cuisine:
            if (!cuisines_covered.contains(c.value)) {
                constraints.push_back(fmt::format(
                    "The cuisine {} is not covered by the meals in the plan.", c.value));
            }
            break;
        case TravelConstraintKind::transport_mode:
            for (const TravelPlanDay& day : plan) {
                if (!day.transportation) {
                    continue;
                }
                auto leg = parse_transport(*day.transportation);
                if (!leg) {
                    continue;
                }
                bool violates = (c.value == "no flight" && leg->mode == TransportLeg::Mode::flight) ||
                                (c.value == "no self-driving" &&
                                 leg->mode == TransportLeg::Mode::self_driving);
                if (violates) {
                    constraints.push_back(fmt::format(
                        "The transportation in day {} do not obey the transportation preference: {}.",
                        day.day, c.value));
                }
            }
            break;
        }
    }

    // (4) budget, only meaningful once every entity resolves
    std::vector<std::string> budget;
    if (all_resolved) {
        double cost = get_total_cost(sandbox, plan, opts);
        if (cost > q.budget) {
            budget.push_back(fmt::format("The total cost of the plan is {}, which exceeds the budget of {}.",
                                         format_money(cost), format_money(q.budget)));
        }
    }

    // (5) routing
    std::vector<std::string> routing;
    bool days_numbered = static_cast<int>(plan.size()) == q.days;
    for (size_t d = 0; d < plan.size() && days_numbered; ++d) {
        days_numbered = plan[d].day == static_cast<int>(d) + 1;
    }
    if (!days_numbered) {
        routing.push_back(fmt::format("The plan must cover days 1 to {}.", q.days));
    } else {
        std::string current;
        const auto* first = std::get_if<Transition>(&plan.front().current_city);
        if (first == nullptr || first->from != q.origin) {
            routing.push_back(fmt::format("The trip does not start from {}.", q.origin));
            current = first != nullptr ? first->to : q.origin;
        } else {
            current = first->to;
        }
        for (size_t d = 1; d < plan.size(); ++d) {
            const TravelPlanDay& day = plan[d];
            if (const auto* t = std::get_if<Transition>(&day.current_city)) {
                if (t->from != current) {
                    routing.push_back(fmt::format(
                        "The current city in day {} does not follow from day {}.", day.day,
                        day.day - 1));
                }
                current = t->to;
            } else {
                const std::string& city = std::get<std::string>(day.current_city);
                if (city != current) {
                    routing.push_back(fmt::format(
                        "The current city in day {} does not follow from day {}.", day.day,
                        day.day - 1));
                    current = city;
                }
            }
        }
        const auto* last = std::get_if<Transition>(&plan.back().current_city);
        if (last == nullptr || last->to != q.origin) {
            routing.push_back(
                fmt::format("The trip does not return to {} on the final day.", q.origin));
        }
        for (const TravelPlanDay& day : plan) {
            const auto* t = std::get_if<Transition>(&day.current_city);
            if (t != nullptr) {
                auto leg = day.transportation ? parse_transport(*day.transportation) : std::nullopt;
                if (!day.transportation) {
                    routing.push_back(fmt::format(
                        "No transportation is given for the transition in day {}.", day.day));
                } else if (leg && (leg->from != t->from || leg->to != t->to)) {
                    routing.push_back(fmt::format(
                        "The transportation in day {} does not match the trip route.", day.day));
                }
            } else if (day.transportation) {
                routing.push_back(
                    fmt::format("No transportation is expected in day {}.", day.day));
            }
        }
        if (last != nullptr && last->to == q.origin && plan.back().accommodation) {
            routing.push_back(fmt::format(
                "The accommodation in day {} is not needed after returning to {}.",
                plan.back().day, q.origin));
        }
        // Every night before the return day needs a booking.
        for (size_t d = 0; d + 1 < plan.size(); ++d) {
            if (!plan[d].accommodation) {
                routing.push_back(
                    fmt::format("The accommodation in day {} is missing.", plan[d].day));
            }
        }
    }

    // (6) restaurant repetition
    std::vector<std::string> repetition;
    std::map<std::pair<std::string, std::string>, int> meal_uses;
    for (const TravelPlanDay& day : plan) {
        for (const std::optional<PlaceRef>& meal : {day.breakfast, day.lunch, day.dinner}) {
            if (meal) {
                ++meal_uses[{meal->name, meal->city}];
            }
        }
    }
    for (const auto& [key, uses] : meal_uses) {
        if (uses > 1) {
            repetition.push_back(fmt::format("The restaurant {}, {} is repeated across the plan.",
                                             key.first, key.second));
        }
    }

    return CritiqueReport::of({Critique::of("entities", std::move(entities)),
                               Critique::of("minimum_nights", std::move(min_nights)),
                               Critique::of("query_constraints", std::move(constraints)),
                               Critique::of("budget", std::move(budget)),
                               Critique::of("routing", std::move(routing)),
                               Critique::of("restaurant_repetition", std::move(repetition))});
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

PipelineResult run_critic_pipeline(const QueryInstance& instance, const std::string& raw_text)
{
    PipelineResult result;
    result.format = parse_plan(instance.domain, raw_text);
    if (!result.format.passed) {
        return result;
    }

    const PlanDocument& doc = *result.format.parsed;
    switch (instance.domain) {
    case Domain::calendar:
        result.report = critique_calendar(std::get<CalendarQuery>(instance.query),
                                          std::get<CalendarProposal>(doc.plan));
        break;
    case Domain::trip:
        result.report =
            critique_trip(std::get<TripQuery>(instance.query), std::get<TripPlan>(doc.plan));
        break;
    case Domain::meeting:
        result.report = critique_meeting(std::get<MeetingQuery>(instance.query),
                                         std::get<MeetingPlan>(doc.plan));
        break;
    case Domain::travel: {
        const auto& c = std::get<TravelCase>(instance.query);
        result.report = critique_travel(c.sandbox, c.query, std::get<TravelPlan>(doc.plan));
        break;
    }
    }
    return result;
}

std::vector<std::string> collect_messages(const CritiqueReport& report)
{
    std::vector<std::string> out;
    for (const Critique& c : report.critiques) {
        out.insert(out.end(), c.messages.begin(), c.messages.end());
    }
    return out;
}

std::set<std::string> flagged_accommodations(const CritiqueReport& report)
{
    std::set<std::string> names;
    static const std::string prefix = "The accommodation ";
    static const std::string stem = " do not obey";
    for (const Critique& c : report.critiques) {
        for (const std::string& msg : c.messages) {
            if (!msg.starts_with(prefix)) {
                continue;
            }
            size_t at = msg.find(stem);
            if (at == std::string::npos) {
                continue;
            }
            std::string ref = msg.substr(prefix.size(), at - prefix.size());
            size_t comma = ref.rfind(", ");
            names.insert(comma == std::string::npos ? ref : ref.substr(0, comma));
        }
    }
    return names;
}

std::string render_sandbox_context(const TravelSandbox& sandbox)
{
    std::string out = "Accommodations:\n";
    for (const Accommodation& a : sandbox.accommodations) {
        std::string rules;
        for (size_t i = 0; i < a.house_rules.size(); ++i) {
            rules += (i > 0 ? "; " : "") + a.house_rules[i];
        }
        out += fmt::format(
            "- Accommodation: {}, City: {}, Price per Night: {}, Room Type: {}, House Rules: {}, "
            "Minimum Nights: {}, Maximum Occupancy: {}\n",
            a.name, a.city, format_money(a.price_per_night), a.room_type,
            rules.empty() ? "-" : rules, a.minimum_nights, a.maximum_occupancy);
    }
    out += "Restaurants:\n";
    for (const Restaurant& r : sandbox.restaurants) {
        std::string cuisines;
        for (size_t i = 0; i < r.cuisines.size(); ++i) {
            cuisines += (i > 0 ? "; " : "") + r.cuisines[i];
        }
        out += fmt::format("- Restaurant: {}, City: {}, Average Cost: {}, Cuisines: {}, Rating: {}\n",
                           r.name, r.city, format_money(r.average_cost),
                           cuisines.empty() ? "-" : cuisines, r.rating);
    }
    out += "Attractions:\n";
    for (const Attraction& a : sandbox.attractions) {
        out += fmt::format("- Attraction: {}, City: {}\n", a.name, a.city);
    }
    out += "Flights:\n";
    for (const Flight& f : sandbox.flights) {
        out += fmt::format(
            "- Flight Number: {}, from {} to {}, Price: {}, Departure Time: {:02d}:{:02d}, "
            "Arrival Time: {:02d}:{:02d}\n",
            f.number, f.origin, f.dest, format_money(f.price), f.departure.hour(),
            f.departure.minute(), f.arrival.hour(), f.arrival.minute());
    }
    out += "Ground Transport:\n";
    for (const GroundRoute& g : sandbox.ground_transport) {
        out += fmt::format("- {}, from {} to {}, cost: {}\n", g.mode, g.origin, g.dest,
                           format_money(g.cost));
    }
    return out;
}

}  // namespace modulo
