#include "modulo/oracles.hpp"

#include "modulo/critics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace modulo {

CancellationToken CancellationToken::make()
{
    CancellationToken t;
    t.flag_ = std::make_shared<std::atomic<bool>>(false);
    return t;
}

void CancellationToken::cancel()
{
    if (flag_) {
        flag_->store(true);
    }
}

bool CancellationToken::cancelled() const
{
    return flag_ && flag_->load();
}

void CancellationToken::check() const
{
    if (cancelled()) {
        throw SearchCancelled();
    }
}

// ---------------------------------------------------------------------------
// Calendar
// ---------------------------------------------------------------------------

std::vector<CalendarProposal> enumerate_calendar_slots(const CalendarQuery& q, int step_minutes)
{
    if (step_minutes <= 0 || 30 % step_minutes != 0) {
        throw std::invalid_argument(fmt::format("step {} does not divide 30", step_minutes));
    }

    std::vector<CalendarProposal> slots;
    for (Weekday day : q.candidate_days) {
        for (int start = q.work_window.start.minutes;
             start + q.duration_minutes <= q.work_window.end.minutes; start += step_minutes) {
            TimeInterval slot{TimeOfDay{start}, TimeOfDay{start + q.duration_minutes}};
            bool clash = false;
            for (const Participant& p : q.participants) {
                auto it = p.busy.find(day);
                if (it == p.busy.end()) {
                    continue;
                }
                for (const TimeInterval& block : it->second) {
                    if (block.overlaps(slot)) {
                        clash = true;
                        break;
                    }
                }
                if (clash) {
                    break;
                }
            }
            if (!clash) {
                slots.push_back(CalendarProposal{day, slot});
            }
        }
    }
    return slots;
}

bool oracle_valid_calendar(const CalendarQuery& q, const CalendarProposal& p)
{
    bool day_listed = false;
    for (Weekday d : q.candidate_days) {
        day_listed = day_listed || d == p.day;
    }
    if (!day_listed) {
        return false;
    }
    if (p.slot.end.minutes - p.slot.start.minutes != q.duration_minutes) {
        return false;
    }
    for (int minute = p.slot.start.minutes; minute < p.slot.end.minutes; ++minute) {
        if (minute < q.work_window.start.minutes || minute >= q.work_window.end.minutes) {
            return false;
        }
        for (const Participant& participant : q.participants) {
            auto it = participant.busy.find(p.day);
            if (it == participant.busy.end()) {
                continue;
            }
            for (const TimeInterval& block : it->second) {
                if (minute >= block.start.minutes && minute < block.end.minutes) {
                    return false;
                }
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Trip
// ---------------------------------------------------------------------------

namespace {

struct TripSearch {
    const TripQuery& q;
    const CancellationToken& cancel;
    std::vector<const TripEvent*> events_of_city(const std::string& city) const
    {
        std::vector<const TripEvent*> out;
        for (const TripEvent& e : q.events) {
            if (e.city == city) {
                out.push_back(&e);
            }
        }
        return out;
    }

    std::vector<bool> used;
    std::vector<TripSegment> chain;

    bool dfs()
    {
        cancel.check();
        const size_t n = q.stays.size();
        if (chain.size() == n) {
            return chain.back().end_day == q.total_days;
        }
        int start_day = chain.empty() ? 1 : chain.back().end_day;
        for (size_t i = 0; i < n; ++i) {
            if (used[i]) {
                continue;
            }
            const CityStay& stay = q.stays[i];
            int end_day = start_day + stay.required_days - 1;
            if (end_day > q.total_days) {
                continue;
            }
            if (!chain.empty() && !q.has_flight(chain.back().city, stay.city)) {
                continue;
            }
            bool events_ok = true;
            for (const TripEvent* e : events_of_city(stay.city)) {
                if (e->start_day < start_day || e->end_day > end_day) {
                    events_ok = false;
                    break;
                }
            }
            if (!events_ok) {
                continue;
            }
            used[i] = true;
            chain.push_back(TripSegment{stay.city, start_day, end_day});
            if (dfs()) {
                return true;
            }
            chain.pop_back();
            used[i] = false;
        }
        return false;
    }
};

}  // namespace

OracleVerdict solve_trip(const TripQuery& q, const CancellationToken& cancel)
{
    if (q.stays.size() > 10) {
        throw InstanceTooLarge(
            fmt::format("trip oracle bounded at 10 cities, got {}", q.stays.size()));
    }
    TripSearch search{q, cancel};
    search.used.assign(q.stays.size(), false);

    OracleVerdict verdict;
    if (!q.stays.empty() && search.dfs()) {
        verdict.valid = true;
        verdict.witness = PlanDocument{Domain::trip, TripPlan{search.chain}};
    }
    return verdict;
}

bool oracle_valid_trip(const TripQuery& q, const TripPlan& p)
{
    if (p.segments.empty() || q.total_days < 1) {
        return false;
    }
    for (const TripSegment& seg : p.segments) {
        if (seg.start_day > seg.end_day || seg.start_day < 1 || seg.end_day > q.total_days) {
            return false;
        }
    }
    // Day-occupancy view: every day covered; exactly two covers only on the
    // shared boundary of consecutive segments.
    for (int day = 1; day <= q.total_days; ++day) {
        std::vector<size_t> covering;
        for (size_t i = 0; i < p.segments.size(); ++i) {
            if (p.segments[i].start_day <= day && day <= p.segments[i].end_day) {
                covering.push_back(i);
            }
        }
        if (covering.size() == 1) {
            continue;
        }
        if (covering.size() != 2 || covering[1] != covering[0] + 1 ||
            p.segments[covering[0]].end_day != day || p.segments[covering[1]].start_day != day) {
            return false;
        }
    }
    if (p.segments.front().start_day != 1 || p.segments.back().end_day != q.total_days) {
        return false;
    }
    std::set<std::string> plan_cities;
    for (const TripSegment& seg : p.segments) {
        if (!plan_cities.insert(seg.city).second) {
            return false;
        }
        const CityStay* stay = q.find_stay(seg.city);
        if (stay == nullptr || stay->required_days != seg.end_day - seg.start_day + 1) {
            return false;
        }
    }
    if (plan_cities.size() != q.stays.size()) {
        return false;
    }
    for (size_t i = 0; i + 1 < p.segments.size(); ++i) {
        if (!q.has_flight(p.segments[i].city, p.segments[i + 1].city)) {
            return false;
        }
    }
    for (const TripEvent& e : q.events) {
        bool covered = false;
        for (const TripSegment& seg : p.segments) {
            if (seg.city == e.city && seg.start_day <= e.start_day && e.end_day <= seg.end_day) {
                covered = true;
            }
        }
        if (!covered) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Meeting
// ---------------------------------------------------------------------------

namespace {

struct MeetingSearch {
    const MeetingQuery& q;
    const CancellationToken& cancel;
    int best = -1;
    std::vector<size_t> best_order;
    std::vector<size_t> current;

    void dfs(const std::string& location, int now, uint32_t met_mask, int met_count)
    {
        cancel.check();
        if (met_count > best) {
            best = met_count;
            best_order = current;
        }
        const int n = static_cast<int>(q.friends.size());
        if (met_count + (n - std::popcount(met_mask)) <= best) {
            return;
        }
        for (size_t i = 0; i < q.friends.size(); ++i) {
            if (met_mask & (1u << i)) {
                continue;
            }
            const FriendConstraint& f = q.friends[i];
            int travel = 0;
            if (f.location != location) {
                auto t = q.travel_time(location, f.location);
                if (!t) {
                    continue;
                }
                travel = *t;
            }
            int start = std::max(now + travel, f.window.start.minutes);
            int end = start + f.min_duration_minutes;
            if (end > f.window.end.minutes) {
                continue;
            }
            current.push_back(i);
            dfs(f.location, end, met_mask | (1u << i), met_count + 1);
            current.pop_back();
        }
    }
};

MeetingPlan plan_from_order(const MeetingQuery& q, const std::vector<size_t>& order)
{
    MeetingPlan plan;
    plan.steps.push_back(StartStep{q.start_location, q.arrival});
    std::string location = q.start_location;
    int now = q.arrival.minutes;
    for (size_t i : order) {
        const FriendConstraint& f = q.friends[i];
        if (f.location != location) {
            int travel = q.travel_time(location, f.location).value();
            now += travel;
            plan.steps.push_back(TravelStep{f.location, travel, TimeOfDay{now}});
            location = f.location;
        }
        int start = std::max(now, f.window.start.minutes);
        if (start > now) {
            plan.steps.push_back(WaitStep{TimeOfDay{start}});
        }
        int end = start + f.min_duration_minutes;
        plan.steps.push_back(MeetStep{f.name, TimeOfDay{start}, TimeOfDay{end}});
        now = end;
    }
    return plan;
}

}  // namespace

OracleVerdict max_meetings(const MeetingQuery& q, const CancellationToken& cancel)
{
    if (q.friends.size() > 10) {
        throw InstanceTooLarge(
            fmt::format("meeting oracle bounded at 10 friends, got {}", q.friends.size()));
    }
    MeetingSearch search{q, cancel};
    search.dfs(q.start_location, q.arrival.minutes, 0, 0);

    OracleVerdict verdict;
    verdict.valid = true;
    verdict.optimum = search.best;
    verdict.witness = PlanDocument{Domain::meeting, plan_from_order(q, search.best_order)};
    return verdict;
}

bool oracle_valid_meeting(const MeetingQuery& q, const MeetingPlan& p)
{
    if (p.steps.empty()) {
        return false;
    }
    const auto* start = std::get_if<StartStep>(&p.steps.front());
    if (start == nullptr || start->location != q.start_location || start->at != q.arrival) {
        return false;
    }
    std::string location = start->location;
    int now = start->at.minutes;
    std::set<std::string> met;

    for (size_t i = 1; i < p.steps.size(); ++i) {
        const MeetingStep& step = p.steps[i];
        if (std::holds_alternative<StartStep>(step)) {
            return false;
        }
        if (const auto* travel = std::get_if<TravelStep>(&step)) {
            auto expected = q.travel_time(location, travel->to);
            if (!expected || *expected != travel->minutes) {
                return false;
            }
            if (travel->arrive.minutes != now + travel->minutes) {
                return false;
            }
            now = travel->arrive.minutes;
            location = travel->to;
        } else if (const auto* wait = std::get_if<WaitStep>(&step)) {
            if (wait->until.minutes < now) {
                return false;
            }
            now = wait->until.minutes;
        } else {
            const auto& meet = std::get<MeetStep>(step);
            const FriendConstraint* match = nullptr;
            for (const FriendConstraint& f : q.friends) {
                if (f.name == meet.friend_name) {
                    match = &f;
                }
            }
            if (match == nullptr || met.contains(meet.friend_name)) {
                return false;
            }
            if (match->location != location || meet.start.minutes != now) {
                return false;
            }
            if (meet.end.minutes <= meet.start.minutes ||
                meet.start.minutes < match->window.start.minutes ||
                meet.end.minutes > match->window.end.minutes ||
                meet.end.minutes - meet.start.minutes < match->min_duration_minutes) {
                return false;
            }
            met.insert(meet.friend_name);
            now = meet.end.minutes;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Travel
// ---------------------------------------------------------------------------

namespace {

// The travel oracle's own reading of the transportation field.
struct OracleLeg {
    std::string mode;  // "Flight", "Self-driving" or "Taxi"
    std::string number;
    std::string from;
    std::string to;
};

std::optional<OracleLeg> read_leg(const std::string& text)
{
    OracleLeg leg;
    std::string rest;
    const std::string flight_prefix = "Flight Number: ";
    if (text.starts_with(flight_prefix)) {
        leg.mode = "Flight";
        size_t comma = text.find(',', flight_prefix.size());
        if (comma == std::string::npos) {
            return std::nullopt;
        }
        leg.number = text.substr(flight_prefix.size(), comma - flight_prefix.size());
        rest = text.substr(comma);
    } else if (text.starts_with("Self-driving,")) {
        leg.mode = "Self-driving";
        rest = text.substr(std::string("Self-driving").size());
    } else if (text.starts_with("Taxi,")) {
        leg.mode = "Taxi";
        rest = text.substr(std::string("Taxi").size());
    } else {
        return std::nullopt;
    }
    const std::string from_marker = ", from ";
    if (!rest.starts_with(from_marker)) {
        return std::nullopt;
    }
    rest = rest.substr(from_marker.size());
    size_t to_at = rest.find(" to ");
    if (to_at == std::string::npos) {
        return std::nullopt;
    }
    leg.from = rest.substr(0, to_at);
    std::string tail = rest.substr(to_at + 4);
    size_t comma = tail.find(',');
    leg.to = comma == std::string::npos ? tail : tail.substr(0, comma);
    return leg.from.empty() || leg.to.empty() ? std::nullopt : std::optional(leg);
}

bool in_day_cities(const TravelPlanDay& day, const std::string& city)
{
    if (const auto* c = std::get_if<std::string>(&day.current_city)) {
        return *c == city;
    }
    const auto& t = std::get<Transition>(day.current_city);
    return t.from == city || t.to == city;
}

}  // namespace

bool oracle_valid_travel(const TravelSandbox& sandbox, const TravelQuery& q,
                         const TravelPlan& plan)
{
    if (static_cast<int>(plan.size()) != q.days || plan.empty()) {
        return false;
    }
    for (size_t i = 0; i < plan.size(); ++i) {
        if (plan[i].day != static_cast<int>(i) + 1 || plan[i].people_number != q.people) {
            return false;
        }
    }

    // Route walk with cost accumulation.
    double cost = 0;
    std::string here;
    std::set<std::string> modes_used;
    for (size_t i = 0; i < plan.size(); ++i) {
        const TravelPlanDay& day = plan[i];
        if (const auto* t = std::get_if<Transition>(&day.current_city)) {
            if (i == 0) {
                if (t->from != q.origin) {
                    return false;
                }
            } else if (t->from != here) {
                return false;
            }
            here = t->to;
            if (!day.transportation) {
                return false;
            }
            auto leg = read_leg(*day.transportation);
            if (!leg || leg->from != t->from || leg->to != t->to) {
                return false;
            }
            if (leg->mode == "Flight") {
                const Flight* flight = sandbox.find_flight(leg->number);
                if (flight == nullptr || flight->origin != leg->from || flight->dest != leg->to) {
                    return false;
                }
                cost += flight->price * q.people;
                modes_used.insert("Flight");
            } else {
                const GroundRoute* route = sandbox.find_ground(leg->from, leg->to, leg->mode);
                if (route == nullptr) {
                    return false;
                }
                cost += route->cost;
                modes_used.insert(leg->mode);
            }
        } else {
            if (i == 0) {
                return false;
            }
            if (std::get<std::string>(day.current_city) != here || day.transportation) {
                return false;
            }
        }
    }
    const auto* final_leg = std::get_if<Transition>(&plan.back().current_city);
    if (final_leg == nullptr || final_leg->to != q.origin) {
        return false;
    }
    if (plan.back().accommodation) {
        return false;
    }
    for (size_t i = 0; i + 1 < plan.size(); ++i) {
        if (!plan[i].accommodation) {
            return false;
        }
    }

    // Meals, attractions, accommodation: resolvable in the day's cities.
    std::map<std::pair<std::string, std::string>, int> meal_counts;
    std::set<std::string> cuisines;
    for (const TravelPlanDay& day : plan) {
        for (const std::optional<PlaceRef>& meal : {day.breakfast, day.lunch, day.dinner}) {
            if (!meal) {
                continue;
            }
            const Restaurant* r = sandbox.find_restaurant(meal->name, meal->city);
            if (r == nullptr || !in_day_cities(day, meal->city)) {
                return false;
            }
            cost += r->average_cost * q.people;
            ++meal_counts[{meal->name, meal->city}];
            cuisines.insert(r->cuisines.begin(), r->cuisines.end());
        }
        for (const PlaceRef& ref : day.attractions) {
            if (sandbox.find_attraction(ref.name, ref.city) == nullptr ||
                !in_day_cities(day, ref.city)) {
                return false;
            }
        }
        if (day.accommodation) {
            const Accommodation* a =
                sandbox.find_accommodation(day.accommodation->name, day.accommodation->city);
            if (a == nullptr || !in_day_cities(day, day.accommodation->city)) {
                return false;
            }
            int rooms = (q.people + a->maximum_occupancy - 1) / a->maximum_occupancy;
            cost += a->price_per_night * rooms;
        }
    }
    for (const auto& [_, uses] : meal_counts) {
        if (uses > 1) {
            return false;
        }
    }

    // Minimum nights per consecutive booking run.
    size_t i = 0;
    while (i < plan.size()) {
        if (!plan[i].accommodation) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < plan.size() && plan[j].accommodation &&
               *plan[j].accommodation == *plan[i].accommodation) {
            ++j;
        }
        const Accommodation* a =
            sandbox.find_accommodation(plan[i].accommodation->name, plan[i].accommodation->city);
        if (a != nullptr && static_cast<int>(j - i) < a->minimum_nights) {
            return false;
        }
        i = j;
    }

    // Query constraints.
    std::vector<const Accommodation*> listings;
    for (const TravelPlanDay& day : plan) {
        if (day.accommodation) {
            const Accommodation* a =
                sandbox.find_accommodation(day.accommodation->name, day.accommodation->city);
            if (a != nullptr &&
                std::find(listings.begin(), listings.end(), a) == listings.end()) {
                listings.push_back(a);
            }
        }
    }
    for (const TravelConstraint& c : q.constraints) {
        switch (c.kind) {
        case TravelConstraintKind::room_rule:
            for (const Accommodation* a : listings) {
                for (const std::string& rule : a->house_rules) {
                    if (rule == "No " + c.value) {
                        return false;
                    }
                }
            }
            break;
        case TravelConstraintKind::room_type:
            for (const Accommodation* a : listings) {
                if (c.value == "not shared room" ? a->room_type == "shared room"
                                                 : a->room_type != c.value) {
                    return false;
                }
            }
            break;
        case TravelConstraintKind::cuisine:
            if (!cuisines.contains(c.value)) {
                return false;
            }
            break;
        case TravelConstraintKind::transport_mode:
            if (c.value == "no flight" && modes_used.contains("Flight")) {
                return false;
            }
            if (c.value == "no self-driving" && modes_used.contains("Self-driving")) {
                return false;
            }
            break;
        }
    }

    return cost <= q.budget;
}

OracleVerdict solve_travel_small(const TravelSandbox& sandbox, const TravelQuery& q,
                                 const CancellationToken& cancel)
{
    auto too_large = [](std::string_view what, size_t n) {
        throw InstanceTooLarge(fmt::format("travel oracle bound exceeded: {} {} rows", n, what));
    };
    if (sandbox.accommodations.size() > 5) too_large("accommodation", sandbox.accommodations.size());
    if (sandbox.restaurants.size() > 5) too_large("restaurant", sandbox.restaurants.size());
    if (sandbox.attractions.size() > 5) too_large("attraction", sandbox.attractions.size());
    if (sandbox.flights.size() > 5) too_large("flight", sandbox.flights.size());
    if (q.days != 3 || q.destinations.size() != 1) {
        throw InstanceTooLarge("travel oracle handles 3-day single-destination trips");
    }
    const std::string& dest = q.destinations.front();

    auto leg_options = [&](const std::string& from, const std::string& to) {
        std::vector<std::string> options;
        for (const Flight& f : sandbox.flights) {
            if (f.origin == from && f.dest == to) {
                options.push_back(render_flight_leg(f));
            }
        }
        for (const char* mode : {"Self-driving", "Taxi"}) {
            if (const GroundRoute* g = sandbox.find_ground(from, to, mode)) {
                options.push_back(render_ground_leg(*g));
            }
        }
        return options;
    };
    const std::vector<std::string> outbound = leg_options(q.origin, dest);
    const std::vector<std::string> inbound = leg_options(dest, q.origin);

    // Meal combinations only matter when a cuisine has to be covered.
    std::set<std::string> needed_cuisines;
    for (const TravelConstraint& c : q.constraints) {
        if (c.kind == TravelConstraintKind::cuisine) {
            needed_cuisines.insert(c.value);
        }
    }
    std::vector<const Restaurant*> local;
    for (const Restaurant& r : sandbox.restaurants) {
        if (r.city == dest) {
            local.push_back(&r);
        }
    }
    std::vector<std::vector<const Restaurant*>> meal_choices{{}};
    if (!needed_cuisines.empty()) {
        meal_choices.clear();
        const size_t n = local.size();
        for (uint32_t mask = 1; mask < (1u << n); ++mask) {
            if (std::popcount(mask) > 3) {
                continue;
            }
            std::set<std::string> covered;
            std::vector<const Restaurant*> picked;
            for (size_t i = 0; i < n; ++i) {
                if (mask & (1u << i)) {
                    picked.push_back(local[i]);
                    covered.insert(local[i]->cuisines.begin(), local[i]->cuisines.end());
                }
            }
            if (std::includes(covered.begin(), covered.end(), needed_cuisines.begin(),
                              needed_cuisines.end())) {
                meal_choices.push_back(std::move(picked));
            }
        }
    }

    OracleVerdict verdict;
    for (const std::string& out_leg : outbound) {
        for (const std::string& in_leg : inbound) {
            for (const Accommodation& listing : sandbox.accommodations) {
                cancel.check();
                if (listing.city != dest) {
                    continue;
                }
                for (const std::vector<const Restaurant*>& meals : meal_choices) {
                    TravelPlan plan(3);
                    plan[0].day = 1;
                    plan[0].people_number = q.people;
                    plan[0].current_city = Transition{q.origin, dest};
                    plan[0].transportation = out_leg;
                    plan[0].accommodation = PlaceRef{listing.name, listing.city};
                    plan[1].day = 2;
                    plan[1].people_number = q.people;
                    plan[1].current_city = dest;
                    plan[1].accommodation = PlaceRef{listing.name, listing.city};
                    plan[2].day = 3;
                    plan[2].people_number = q.people;
                    plan[2].current_city = Transition{dest, q.origin};
                    plan[2].transportation = in_leg;
                    // Day 2 meal slots, in breakfast/lunch/dinner order.
                    std::optional<PlaceRef>* slots[] = {&plan[1].breakfast, &plan[1].lunch,
                                                        &plan[1].dinner};
                    for (size_t m = 0; m < meals.size() && m < 3; ++m) {
                        *slots[m] = PlaceRef{meals[m]->name, meals[m]->city};
                    }
                    if (critique_travel(sandbox, q, plan).all_passed) {
                        verdict.valid = true;
                        verdict.witness = PlanDocument{Domain::travel, std::move(plan)};
                        return verdict;
                    }
                }
            }
        }
    }
    return verdict;
}

bool oracle_valid(const QueryInstance& instance, const PlanDocument& plan)
{
    if (instance.domain != plan.domain) {
        return false;
    }
    switch (instance.domain) {
    case Domain::calendar:
        return oracle_valid_calendar(std::get<CalendarQuery>(instance.query),
                                     std::get<CalendarProposal>(plan.plan));
    case Domain::trip:
        return oracle_valid_trip(std::get<TripQuery>(instance.query),
                                 std::get<TripPlan>(plan.plan));
    case Domain::meeting:
        return oracle_valid_meeting(std::get<MeetingQuery>(instance.query),
                                    std::get<MeetingPlan>(plan.plan));
    case Domain::travel: {
        const auto& c = std::get<TravelCase>(instance.query);
        return oracle_valid_travel(c.sandbox, c.query, std::get<TravelPlan>(plan.plan));
    }
    }
    return false;
}

}  // namespace modulo
