#include "modulo/harness.hpp"

#include "modulo/critics.hpp"
#include "modulo/json_io.hpp"
#include "modulo/parsers.hpp"
#include "modulo/prompts.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <thread>

namespace modulo {

// ---------------------------------------------------------------------------
// Loading / saving
// ---------------------------------------------------------------------------

std::vector<QueryInstance> load_instances(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open {}", path.string()));
    }
    std::vector<QueryInstance> instances;
    std::vector<std::string> errors;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            errors.push_back(fmt::format("line {}: not valid JSON", line_number));
            continue;
        }
        try {
            QueryInstance instance = instance_from_json(j);
            std::vector<std::string> violations = validate_query(instance);
            if (!violations.empty()) {
                errors.push_back(
                    fmt::format("line {}: {}", line_number, fmt::join(violations, "; ")));
                continue;
            }
            instances.push_back(std::move(instance));
        } catch (const std::exception& e) {
            errors.push_back(fmt::format("line {}: {}", line_number, e.what()));
        }
    }
    if (!errors.empty()) {
        throw std::runtime_error(
            fmt::format("rejected {}: {}", path.string(), fmt::join(errors, " | ")));
    }
    return instances;
}

void save_instances(const std::vector<QueryInstance>& instances,
                    const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot write {}", path.string()));
    }
    for (const QueryInstance& instance : instances) {
        out << instance_to_json(instance).dump() << "\n";
    }
}

// ---------------------------------------------------------------------------
// CSV ingestion
// ---------------------------------------------------------------------------

namespace {

// RFC-4180-ish row splitting: quoted fields may hold commas and "" escapes.
std::vector<std::string> split_csv_row(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field.push_back('"');
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

class CsvTable {
public:
    explicit CsvTable(const std::filesystem::path& path)
    {
        std::ifstream in(path);
        if (!in) {
            throw std::runtime_error(fmt::format("cannot open {}", path.string()));
        }
        std::string line;
        if (!std::getline(in, line)) {
            throw std::runtime_error(fmt::format("{} has no header row", path.string()));
        }
        header_ = split_csv_row(line);
        while (std::getline(in, line)) {
            if (!line.empty()) {
                rows_.push_back(split_csv_row(line));
            }
        }
        path_ = path.string();
    }

    size_t size() const { return rows_.size(); }

    const std::string& at(size_t row, const std::string& column) const
    {
        for (size_t i = 0; i < header_.size(); ++i) {
            if (header_[i] == column) {
                if (i >= rows_[row].size()) {
                    throw std::runtime_error(
                        fmt::format("{} row {} is missing column '{}'", path_, row + 2, column));
                }
                return rows_[row][i];
            }
        }
        throw std::runtime_error(fmt::format("{} has no column '{}'", path_, column));
    }

private:
    std::string path_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::vector<std::string> split_list(const std::string& text, const std::string& sep)
{
    std::vector<std::string> out;
    size_t begin = 0;
    while (begin <= text.size()) {
        size_t end = text.find(sep, begin);
        std::string part = text.substr(begin, end - begin);
        size_t lo = part.find_first_not_of(" \t");
        size_t hi = part.find_last_not_of(" \t");
        if (lo != std::string::npos) {
            out.push_back(part.substr(lo, hi - lo + 1));
        }
        if (end == std::string::npos) {
            break;
        }
        begin = end + sep.size();
    }
    return out;
}

}  // namespace

TravelSandbox sandbox_from_csv(const TravelCsvPaths& paths)
{
    TravelSandbox sandbox;
    if (!paths.accommodations.empty()) {
        CsvTable table(paths.accommodations);
        for (size_t i = 0; i < table.size(); ++i) {
            Accommodation a;
            a.name = table.at(i, "NAME");
            a.city = table.at(i, "city");
            a.price_per_night = std::stod(table.at(i, "price"));
            a.room_type = table.at(i, "room type");
            a.house_rules = split_list(table.at(i, "house_rules"), "&");
            a.minimum_nights = static_cast<int>(std::stod(table.at(i, "minimum nights")));
            a.maximum_occupancy = static_cast<int>(std::stod(table.at(i, "maximum occupancy")));
            sandbox.accommodations.push_back(std::move(a));
        }
    }
    if (!paths.restaurants.empty()) {
        CsvTable table(paths.restaurants);
        for (size_t i = 0; i < table.size(); ++i) {
            Restaurant r;
            r.name = table.at(i, "Name");
            r.city = table.at(i, "City");
            r.average_cost = std::stod(table.at(i, "Average Cost"));
            r.cuisines = split_list(table.at(i, "Cuisines"), ",");
            r.rating = std::stod(table.at(i, "Aggregate Rating"));
            sandbox.restaurants.push_back(std::move(r));
        }
    }
    if (!paths.attractions.empty()) {
        CsvTable table(paths.attractions);
        for (size_t i = 0; i < table.size(); ++i) {
            sandbox.attractions.push_back(Attraction{table.at(i, "Name"), table.at(i, "City")});
        }
    }
    if (!paths.flights.empty()) {
        CsvTable table(paths.flights);
        for (size_t i = 0; i < table.size(); ++i) {
            Flight f;
            f.number = table.at(i, "Flight Number");
            f.origin = table.at(i, "OriginCityName");
            f.dest = table.at(i, "DestCityName");
            f.price = std::stod(table.at(i, "Price"));
            f.departure = parse_time_of_day(table.at(i, "DepTime"));
            f.arrival = parse_time_of_day(table.at(i, "ArrTime"));
            sandbox.flights.push_back(std::move(f));
        }
    }
    if (!paths.ground.empty()) {
        CsvTable table(paths.ground);
        for (size_t i = 0; i < table.size(); ++i) {
            sandbox.ground_transport.push_back(
                GroundRoute{table.at(i, "origin"), table.at(i, "destination"),
                            table.at(i, "mode"), std::stod(table.at(i, "cost"))});
        }
    }
    return sandbox;
}

// ---------------------------------------------------------------------------
// Instance generation
// ---------------------------------------------------------------------------

namespace {

int rand_int(std::mt19937& rng, int lo, int hi)
{
    return lo + static_cast<int>(rng() % static_cast<uint32_t>(hi - lo + 1));
}

bool chance(std::mt19937& rng, int percent)
{
    return rand_int(rng, 0, 99) < percent;
}

template <typename T>
std::vector<T> sample(std::mt19937& rng, std::vector<T> pool, size_t k)
{
    for (size_t i = 0; i < k && i + 1 < pool.size(); ++i) {
        std::swap(pool[i], pool[i + rng() % (pool.size() - i)]);
    }
    pool.resize(std::min(k, pool.size()));
    return pool;
}

const std::vector<std::string> kPersonNames{
    "James", "Mary",   "Robert", "Patricia", "John",    "Jennifer", "Michael",
    "Linda", "David",  "Susan",  "William",  "Barbara", "Richard",  "Jessica",
    "Joseph", "Sarah", "Thomas", "Karen",    "Daniel",  "Nancy"};

const std::vector<std::string> kSfLocations{
    "North Beach",    "Pacific Heights", "Golden Gate Park", "Sunset District",
    "Chinatown",      "Fisherman's Wharf", "Embarcadero",    "Mission District",
    "Union Square",   "Alamo Square",    "Nob Hill",         "Richmond District",
    "Presidio",       "Haight-Ashbury",  "Marina District",  "Castro",
    "Bayview",        "Twin Peaks",      "Noe Valley",       "Glen Park"};

const std::vector<std::string> kEuropeanCities{
    "Vienna", "Frankfurt", "Oslo",     "Prague", "Valencia", "Dubrovnik", "Edinburgh",
    "London", "Munich",    "Budapest", "Paris",  "Lyon",     "Nice",      "Rome",
    "Milan",  "Venice",    "Florence", "Madrid", "Barcelona", "Seville"};

const std::vector<std::string> kOrigins{"Washington", "Ithaca", "Seattle", "Boston", "Denver"};
const std::vector<std::string> kDestinations{"Myrtle Beach", "Charlotte", "Austin", "Portland",
                                             "Savannah"};

const std::vector<std::string> kAccommodationNames{
    "Cozy Corner Apartment", "Sunny Loft Downtown", "Harbor View Studio",
    "Garden Retreat House",  "Modern City Flat",    "Quiet Brick Cottage",
    "Riverside Guest Suite", "Hilltop Bungalow"};

const std::vector<std::string> kRestaurantNames{
    "Exotic India",     "Twigly",          "Cafe Verde",      "The Copper Pot",
    "Blue Lagoon Grill", "Mama Rosa's",    "Golden Chopsticks", "Le Petit Jardin",
    "Taco Siete",       "Smokehouse 21"};

const std::vector<std::string> kAttractionNames{
    "City History Museum", "Grand Aquarium",   "Riverfront Park",
    "Old Lighthouse",      "Botanical Gardens", "Science Discovery Center"};

const std::vector<std::string> kCuisines{"American", "Chinese", "Italian",
                                         "Indian",   "Mexican", "French"};
const std::vector<std::string> kRoomTypes{"entire home", "private room", "shared room"};
const std::vector<std::string> kHouseRules{"No smoking", "No parties", "No children under 10",
                                           "No pets", "No visitors"};

CalendarQuery gen_calendar_query(std::mt19937& rng, int participants, int days, int duration,
                                 bool prefer_earliest)
{
    const int busy_percent = std::max(15, 45 - 5 * participants);
    for (int attempt = 0; attempt < 500; ++attempt) {
        CalendarQuery q;
        q.duration_minutes = duration;
        q.prefer_earliest = prefer_earliest;
        q.work_window = TimeInterval{TimeOfDay{9 * 60}, TimeOfDay{17 * 60}};
        for (int d = 0; d < days; ++d) {
            q.candidate_days.push_back(all_weekdays[d]);
        }
        std::vector<std::string> names = sample(rng, kPersonNames, participants);
        for (const std::string& name : names) {
            Participant p;
            p.name = name;
            for (Weekday day : q.candidate_days) {
                std::vector<TimeInterval> blocks;
                int cell_start = -1;
                for (int cell = 0; cell <= 16; ++cell) {
                    bool busy = cell < 16 && chance(rng, busy_percent);
                    if (busy && cell_start < 0) {
                        cell_start = cell;
                    } else if (!busy && cell_start >= 0) {
                        blocks.push_back(TimeInterval{TimeOfDay{540 + 30 * cell_start},
                                                      TimeOfDay{540 + 30 * cell}});
                        cell_start = -1;
                    }
                }
                if (!blocks.empty()) {
                    p.busy[day] = std::move(blocks);
                }
            }
            q.participants.push_back(std::move(p));
        }
        if (!enumerate_calendar_slots(q, 30).empty()) {
            return q;
        }
    }
    throw ParamsOutOfRange("could not generate a satisfiable calendar instance");
}

QueryInstance gen_calendar(std::mt19937& rng, const GenParams& params, int index)
{
    int participants = params.participants.value_or(3);
    int days = params.days.value_or(1);
    if (participants < 1 || participants > 7 || days < 1 || days > 5) {
        throw ParamsOutOfRange("calendar axes: participants 1..7, days 1..5");
    }
    int duration = params.duration.value_or(chance(rng, 50) ? 30 : 60);
    if (duration != 30 && duration != 60) {
        throw ParamsOutOfRange("duration must be 30 or 60");
    }

    QueryInstance instance;
    instance.domain = Domain::calendar;
    instance.id = fmt::format("calendar-{}-{:04d}", params.seed, index);
    instance.subset =
        days > 1 ? fmt::format("days={}", days) : fmt::format("participants={}", participants);
    CalendarQuery q = gen_calendar_query(rng, participants, days, duration, params.prefer_earliest);
    instance.prompt_text = render_calendar_query_text(q);
    std::vector<CalendarProposal> slots = enumerate_calendar_slots(q, 30);
    instance.golden = render_calendar_proposal(slots.front());
    instance.query = std::move(q);
    return instance;
}

QueryInstance gen_trip(std::mt19937& rng, const GenParams& params, int index)
{
    int cities = params.cities.value_or(4);
    if (cities < 3 || cities > 10) {
        throw ParamsOutOfRange("trip axis: cities 3..10");
    }

    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<std::string> names = sample(rng, kEuropeanCities, cities);
        TripQuery q;
        int end_day = 0;
        std::vector<TripSegment> intended;
        for (int i = 0; i < cities; ++i) {
            int stay = rand_int(rng, 2, 5);
            q.stays.push_back(CityStay{names[i], stay});
            int start = intended.empty() ? 1 : intended.back().end_day;
            end_day = start + stay - 1;
            intended.push_back(TripSegment{names[i], start, end_day});
        }
        q.total_days = end_day;

        std::set<std::pair<std::string, std::string>> edge_set;
        for (int i = 0; i + 1 < cities; ++i) {
            bool both = chance(rng, 70);
            q.flights.push_back(FlightEdge{names[i], names[i + 1], both});
            edge_set.insert({names[i], names[i + 1]});
        }
        for (int i = 0; i < cities / 2; ++i) {
            const std::string& a = names[rng() % names.size()];
            const std::string& b = names[rng() % names.size()];
            if (a != b && !edge_set.contains({a, b}) && !edge_set.contains({b, a})) {
                q.flights.push_back(FlightEdge{a, b, true});
                edge_set.insert({a, b});
            }
        }

        int event_count = rand_int(rng, 0, 2);
        std::set<int> event_cities;
        for (int e = 0; e < event_count; ++e) {
            int i = rand_int(rng, 0, cities - 1);
            if (!event_cities.insert(i).second) {
                continue;
            }
            const TripSegment& seg = intended[static_cast<size_t>(i)];
            int a = rand_int(rng, seg.start_day, seg.end_day);
            int b = rand_int(rng, a, seg.end_day);
            q.events.push_back(TripEvent{seg.city, a, b});
        }

        OracleVerdict verdict = solve_trip(q);
        if (!verdict.valid) {
            continue;
        }
        QueryInstance instance;
        instance.domain = Domain::trip;
        instance.id = fmt::format("trip-{}-{:04d}", params.seed, index);
        instance.subset = fmt::format("cities={}", cities);
        instance.prompt_text = render_trip_query_text(q);
        instance.golden = render_plan(*verdict.witness);
        instance.query = std::move(q);
        return instance;
    }
    throw ParamsOutOfRange("could not generate a satisfiable trip instance");
}

QueryInstance gen_meeting(std::mt19937& rng, const GenParams& params, int index)
{
    int friends = params.friends.value_or(3);
    if (friends < 0 || friends > 10) {
        throw ParamsOutOfRange("meeting axis: friends 0..10");
    }

    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<std::string> locations = sample(rng, kSfLocations, friends + 1);
        std::vector<std::string> names = sample(rng, kPersonNames, friends);
        MeetingQuery q;
        q.start_location = locations[0];
        q.arrival = TimeOfDay{9 * 60};
        for (size_t i = 0; i < locations.size(); ++i) {
            for (size_t j = 0; j < locations.size(); ++j) {
                if (i != j) {
                    q.travel_minutes[{locations[i], locations[j]}] = rand_int(rng, 5, 30);
                }
            }
        }
        for (int i = 0; i < friends; ++i) {
            int window_start = 15 * rand_int(rng, 36, 68);      // 9:00..17:00
            int length = 15 * rand_int(rng, 5, 24);             // 75m..6h
            int window_end = std::min(window_start + length, 21 * 60);
            int max_duration = std::min(120, window_end - window_start);
            int min_duration = 15 * rand_int(rng, 1, max_duration / 15);
            q.friends.push_back(FriendConstraint{
                names[static_cast<size_t>(i)], locations[static_cast<size_t>(i) + 1],
                TimeInterval{TimeOfDay{window_start}, TimeOfDay{window_end}}, min_duration});
        }

        OracleVerdict verdict = max_meetings(q);
        if (friends > 0 && verdict.optimum.value_or(0) < 1) {
            continue;
        }
        QueryInstance instance;
        instance.domain = Domain::meeting;
        instance.id = fmt::format("meeting-{}-{:04d}", params.seed, index);
        instance.subset = fmt::format("people={}", friends);
        instance.prompt_text = render_meeting_query_text(q);
        instance.golden = render_plan(*verdict.witness);
        instance.query = std::move(q);
        return instance;
    }
    throw ParamsOutOfRange("could not generate a satisfiable meeting instance");
}

QueryInstance gen_travel(std::mt19937& rng, const GenParams& params, int index)
{
    int constraint_count = params.constraints.value_or(1);
    if (constraint_count < 0 || constraint_count > 3) {
        throw ParamsOutOfRange("travel axis: constraints 0..3");
    }

    for (int attempt = 0; attempt < 200; ++attempt) {
        const std::string origin = kOrigins[rng() % kOrigins.size()];
        const std::string dest = kDestinations[rng() % kDestinations.size()];

        TravelSandbox sandbox;
        for (int i = 0; i < 2; ++i) {
            for (bool outbound : {true, false}) {
                Flight f;
                f.number = fmt::format("F{:07d}", rand_int(rng, 0, 9999999));
                f.origin = outbound ? origin : dest;
                f.dest = outbound ? dest : origin;
                f.price = rand_int(rng, 80, 300);
                f.departure = TimeOfDay{rand_int(rng, 5 * 60, 20 * 60)};
                f.arrival = TimeOfDay{std::min(f.departure.minutes + rand_int(rng, 60, 200), 1439)};
                sandbox.flights.push_back(std::move(f));
            }
        }
        for (bool outbound : {true, false}) {
            for (const char* mode : {"Self-driving", "Taxi"}) {
                sandbox.ground_transport.push_back(GroundRoute{
                    outbound ? origin : dest, outbound ? dest : origin, mode,
                    static_cast<double>(rand_int(rng, 40, 180))});
            }
        }
        for (const std::string& name : sample(rng, kAccommodationNames, 4)) {
            Accommodation a;
            a.name = name;
            a.city = dest;
            a.price_per_night = rand_int(rng, 40, 200);
            a.room_type = kRoomTypes[rng() % kRoomTypes.size()];
            for (const std::string& rule : kHouseRules) {
                if (chance(rng, 30)) {
                    a.house_rules.push_back(rule);
                }
            }
            a.minimum_nights = rand_int(rng, 1, 3);
            a.maximum_occupancy = rand_int(rng, 1, 4);
            sandbox.accommodations.push_back(std::move(a));
        }
        for (const std::string& name : sample(rng, kRestaurantNames, 5)) {
            Restaurant r;
            r.name = name;
            r.city = dest;
            r.average_cost = rand_int(rng, 10, 60);
            r.cuisines.push_back(kCuisines[rng() % kCuisines.size()]);
            if (chance(rng, 40)) {
                std::string extra = kCuisines[rng() % kCuisines.size()];
                if (extra != r.cuisines.front()) {
                    r.cuisines.push_back(std::move(extra));
                }
            }
            r.rating = rand_int(rng, 30, 50) / 10.0;
            sandbox.restaurants.push_back(std::move(r));
        }
        for (const std::string& name : sample(rng, kAttractionNames, 3)) {
            sandbox.attractions.push_back(Attraction{name, dest});
        }

        TravelQuery q;
        q.origin = origin;
        q.destinations = {dest};
        q.days = 3;
        q.people = rand_int(rng, 1, 3);
        q.budget = 1e9;

        std::set<std::string> local_cuisines;
        for (const Restaurant& r : sandbox.restaurants) {
            local_cuisines.insert(r.cuisines.begin(), r.cuisines.end());
        }
        std::vector<TravelConstraintKind> kinds{
            TravelConstraintKind::room_rule, TravelConstraintKind::room_type,
            TravelConstraintKind::cuisine, TravelConstraintKind::transport_mode};
        kinds = sample(rng, kinds, constraint_count);
        for (TravelConstraintKind kind : kinds) {
            TravelConstraint c;
            c.kind = kind;
            switch (kind) {
            case TravelConstraintKind::room_rule:
                c.value = kHouseRules[rng() % kHouseRules.size()].substr(3);
                break;
            case TravelConstraintKind::room_type:
                c.value = chance(rng, 25) ? "not shared room"
                                          : kRoomTypes[rng() % kRoomTypes.size()];
                break;
            case TravelConstraintKind::cuisine: {
                std::vector<std::string> pool(local_cuisines.begin(), local_cuisines.end());
                c.value = pool[rng() % pool.size()];
                break;
            }
            case TravelConstraintKind::transport_mode:
                c.value = chance(rng, 50) ? "no flight" : "no self-driving";
                break;
            }
            q.constraints.push_back(std::move(c));
        }

        OracleVerdict verdict = solve_travel_small(sandbox, q);
        if (!verdict.valid) {
            continue;
        }
        const TravelPlan& witness = std::get<TravelPlan>(verdict.witness->plan);
        double cost = get_total_cost(sandbox, witness);
        q.budget = std::ceil(cost * (1.0 + rand_int(rng, 20, 50) / 100.0));
        if (!critique_travel(sandbox, q, witness).all_passed) {
            continue;
        }

        QueryInstance instance;
        instance.domain = Domain::travel;
        instance.id = fmt::format("travel-{}-{:04d}", params.seed, index);
        instance.subset = fmt::format("constraints={}", constraint_count);
        instance.prompt_text = render_travel_query_text(q);
        instance.golden = render_plan(*verdict.witness);
        instance.query = TravelCase{std::move(q), std::move(sandbox)};
        return instance;
    }
    throw ParamsOutOfRange("could not generate a satisfiable travel instance");
}

}  // namespace

std::vector<QueryInstance> generate_instances(Domain domain, const GenParams& params)
{
    std::mt19937 rng(params.seed);
    std::vector<QueryInstance> instances;
    instances.reserve(params.count);
    for (int i = 0; i < params.count; ++i) {
        switch (domain) {
        case Domain::calendar: instances.push_back(gen_calendar(rng, params, i)); break;
        case Domain::trip: instances.push_back(gen_trip(rng, params, i)); break;
        case Domain::meeting: instances.push_back(gen_meeting(rng, params, i)); break;
        case Domain::travel: instances.push_back(gen_travel(rng, params, i)); break;
        }
    }
    return instances;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

Evaluation evaluate_plan(const QueryInstance& instance, const PlanDocument& plan)
{
    Evaluation eval;
    eval.valid = run_critic_pipeline(instance, render_plan(plan)).all_passed();

    if (instance.domain == Domain::meeting) {
        const auto& q = std::get<MeetingQuery>(instance.query);
        int met = 0;
        for (const MeetingStep& step : std::get<MeetingPlan>(plan.plan).steps) {
            met += std::holds_alternative<MeetStep>(step) ? 1 : 0;
        }
        OracleVerdict verdict = max_meetings(q);
        eval.optimal = eval.valid && verdict.optimum && met == *verdict.optimum;
    } else if (instance.domain == Domain::calendar) {
        const auto& q = std::get<CalendarQuery>(instance.query);
        if (q.prefer_earliest) {
            std::vector<CalendarProposal> slots = enumerate_calendar_slots(q, 30);
            eval.optimal = eval.valid && !slots.empty() &&
                           std::get<CalendarProposal>(plan.plan) == slots.front();
        }
    }
    return eval;
}

// ---------------------------------------------------------------------------
// Benchmark runs and reports
// ---------------------------------------------------------------------------

namespace {

// "cities=10" -> 10; unparsable labels sort first.
long subset_axis_value(const std::string& subset)
{
    size_t eq = subset.find('=');
    if (eq == std::string::npos) {
        return -1;
    }
    try {
        return std::stol(subset.substr(eq + 1));
    } catch (const std::exception&) {
        return -1;
    }
}

bool row_less(const SubsetRow& a, const SubsetRow& b)
{
    auto key = [](const SubsetRow& r) {
        size_t eq = r.subset.find('=');
        std::string axis = eq == std::string::npos ? r.subset : r.subset.substr(0, eq);
        return std::tuple(std::string(domain_name(r.domain)), axis, subset_axis_value(r.subset));
    };
    return key(a) < key(b);
}

nlohmann::json format_critique_to_json(const FormatCritique& f)
{
    return {{"passed", f.passed}, {"messages", f.messages}};
}

nlohmann::json report_json_of(const CritiqueReport& r)
{
    nlohmann::json critiques = nlohmann::json::array();
    for (const Critique& c : r.critiques) {
        critiques.push_back(
            {{"critic_id", c.critic_id}, {"passed", c.passed}, {"messages", c.messages}});
    }
    return {{"all_passed", r.all_passed}, {"critiques", std::move(critiques)}};
}

nlohmann::json outcome_to_json(const LoopOutcome& outcome)
{
    nlohmann::json j;
    if (const Solved* s = outcome.solution()) {
        j["status"] = "solved";
        j["at_iteration"] = s->at_iteration;
        j["plan"] = render_plan(s->plan);
    } else {
        const auto& e = std::get<Exhausted>(outcome.status);
        j["status"] = "exhausted";
        j["budget"] = e.budget;
    }
    nlohmann::json transcript = nlohmann::json::array();
    for (const IterationRecord& r : outcome.transcript) {
        nlohmann::json rec{{"index", r.index},
                           {"prompt", r.prompt},
                           {"raw_response", r.raw_response},
                           {"format", format_critique_to_json(r.format)}};
        if (r.report) {
            rec["report"] = report_json_of(*r.report);
        }
        transcript.push_back(std::move(rec));
    }
    j["transcript"] = std::move(transcript);
    return j;
}

std::vector<SubsetRow> hardest_rows(const std::vector<SubsetRow>& rows)
{
    std::vector<SubsetRow> hardest;
    for (const SubsetRow& row : rows) {
        auto it = std::find_if(hardest.begin(), hardest.end(),
                               [&row](const SubsetRow& h) { return h.domain == row.domain; });
        if (it == hardest.end()) {
            hardest.push_back(row);
        } else if (subset_axis_value(row.subset) > subset_axis_value(it->subset)) {
            *it = row;
        }
    }
    return hardest;
}

}  // namespace

Report Report::build(nlohmann::json metadata, std::vector<EvalResult> results)
{
    std::sort(results.begin(), results.end(),
              [](const EvalResult& a, const EvalResult& b) { return a.instance_id < b.instance_id; });

    std::map<std::pair<std::string, std::string>, SubsetRow> groups;
    std::map<std::pair<std::string, std::string>, std::pair<long, long>> iteration_sums;
    for (const EvalResult& r : results) {
        auto key = std::make_pair(std::string(domain_name(r.domain)), r.subset);
        SubsetRow& row = groups[key];
        row.domain = r.domain;
        row.subset = r.subset;
        row.instances += 1;
        if (r.valid) {
            row.valid += 1;
            iteration_sums[key].first += r.iterations_used;
            iteration_sums[key].second += 1;
        }
    }

    Report report;
    report.metadata = std::move(metadata);
    for (auto& [key, row] : groups) {
        row.accuracy_pct = row.instances == 0 ? 0 : 100.0 * row.valid / row.instances;
        const auto& [sum, solved] = iteration_sums[key];
        row.mean_iterations = solved == 0 ? 0 : static_cast<double>(sum) / solved;
        report.rows.push_back(row);
    }
    std::sort(report.rows.begin(), report.rows.end(), row_less);
    report.results = std::move(results);
    return report;
}

Report run_benchmark(const std::vector<QueryInstance>& instances, GeneratorBackend& backend,
                     const LoopConfig& cfg, int workers)
{
    std::vector<EvalResult> results(instances.size());
    std::atomic<size_t> next{0};

    auto work = [&]() {
        for (size_t i = next.fetch_add(1); i < instances.size(); i = next.fetch_add(1)) {
            const QueryInstance& instance = instances[i];
            EvalResult r;
            r.instance_id = instance.id;
            r.domain = instance.domain;
            r.subset = instance.subset;
            try {
                LoopOutcome outcome = run(instance, backend, cfg);
                if (const Solved* s = outcome.solution()) {
                    Evaluation eval = evaluate_plan(instance, s->plan);
                    r.valid = eval.valid;
                    r.optimal = eval.optimal;
                    r.iterations_used = s->at_iteration;
                } else {
                    r.iterations_used = cfg.budget;
                }
                r.outcome = std::move(outcome);
            } catch (const GeneratorError& e) {
                r.error = e.what();
                r.iterations_used = static_cast<int>(e.transcript.size());
                r.outcome = LoopOutcome{Exhausted{cfg.budget, std::nullopt}, e.transcript};
            }
            results[i] = std::move(r);
        }
    };

    workers = std::max(1, workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    nlohmann::json metadata{{"model", cfg.model},
                            {"budget", cfg.budget},
                            {"feedback", std::string(feedback_mode_name(cfg.feedback_mode))},
                            {"history_n", cfg.history_n},
                            {"history_unique", cfg.history_unique_only},
                            {"history_critiques", cfg.history_include_critiques},
                            {"filtering", cfg.filtering_enabled},
                            {"cot", cfg.cot_suffix},
                            {"strategy", cfg.strategy == LoopStrategy::bfs ? "bfs" : "chain"},
                            {"branch", cfg.bfs_branch_k},
                            {"temperature", cfg.temperature},
                            {"instances", instances.size()}};
    return Report::build(std::move(metadata), std::move(results));
}

std::string report_to_csv(const Report& report)
{
    std::string out = "domain,subset,instances,valid,accuracy_pct,mean_iterations\n";
    for (const SubsetRow& row : report.rows) {
        out += fmt::format("{},{},{},{},{:.2f},{:.2f}\n", domain_name(row.domain), row.subset,
                           row.instances, row.valid, row.accuracy_pct, row.mean_iterations);
    }
    return out;
}

std::string report_to_markdown(const Report& report)
{
    std::string out = "# Benchmark report\n\n";
    if (report.metadata.contains("model")) {
        out += fmt::format("Model: `{}`, budget {}, strategy {}\n\n",
                           report.metadata.value("model", ""), report.metadata.value("budget", 0),
                           report.metadata.value("strategy", "chain"));
    }
    out += "| Domain | Subset | Instances | Valid | Accuracy (%) | Mean iterations |\n";
    out += "|---|---|---:|---:|---:|---:|\n";
    for (const SubsetRow& row : report.rows) {
        out += fmt::format("| {} | {} | {} | {} | {:.2f} | {:.2f} |\n", domain_name(row.domain),
                           row.subset, row.instances, row.valid, row.accuracy_pct,
                           row.mean_iterations);
    }
    out += "\n## Hardest subsets\n\n";
    out += "| Domain | Subset | Instances | Valid | Accuracy (%) |\n";
    out += "|---|---|---:|---:|---:|\n";
    for (const SubsetRow& row : hardest_rows(report.rows)) {
        out += fmt::format("| {} | {} | {} | {} | {:.2f} |\n", domain_name(row.domain),
                           row.subset, row.instances, row.valid, row.accuracy_pct);
    }
    return out;
}

nlohmann::json report_to_json(const Report& report)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const SubsetRow& row : report.rows) {
        rows.push_back({{"domain", std::string(domain_name(row.domain))},
                        {"subset", row.subset},
                        {"instances", row.instances},
                        {"valid", row.valid},
                        {"accuracy_pct", row.accuracy_pct},
                        {"mean_iterations", row.mean_iterations}});
    }
    nlohmann::json hardest = nlohmann::json::array();
    for (const SubsetRow& row : hardest_rows(report.rows)) {
        hardest.push_back({{"domain", std::string(domain_name(row.domain))},
                           {"subset", row.subset},
                           {"instances", row.instances},
                           {"valid", row.valid},
                           {"accuracy_pct", row.accuracy_pct}});
    }
    nlohmann::json results = nlohmann::json::array();
    for (const EvalResult& r : report.results) {
        nlohmann::json rj{{"id", r.instance_id},
                          {"domain", std::string(domain_name(r.domain))},
                          {"subset", r.subset},
                          {"valid", r.valid},
                          {"iterations_used", r.iterations_used},
                          {"error", r.error},
                          {"outcome", outcome_to_json(r.outcome)}};
        if (r.optimal) {
            rj["optimal"] = *r.optimal;
        }
        results.push_back(std::move(rj));
    }
    return {{"metadata", report.metadata},
            {"rows", std::move(rows)},
            {"hardest_subsets", std::move(hardest)},
            {"results", std::move(results)}};
}

Report report_from_json(const nlohmann::json& j)
{
    Report report;
    report.metadata = j.value("metadata", nlohmann::json::object());
    for (const auto& row : j.value("rows", nlohmann::json::array())) {
        SubsetRow r;
        r.domain = parse_domain(row.at("domain").get<std::string>());
        r.subset = row.at("subset").get<std::string>();
        r.instances = row.at("instances").get<int>();
        r.valid = row.at("valid").get<int>();
        r.accuracy_pct = row.at("accuracy_pct").get<double>();
        r.mean_iterations = row.at("mean_iterations").get<double>();
        report.rows.push_back(std::move(r));
    }
    return report;
}

void write_report_files(const Report& report, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "report.json");
        out << report_to_json(report).dump(2) << "\n";
    }
    {
        std::ofstream out(dir / "report.csv");
        out << report_to_csv(report);
    }
    {
        std::ofstream out(dir / "report.md");
        out << report_to_markdown(report);
    }
}

}  // namespace modulo
