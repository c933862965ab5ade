#pragma once

#include "modulo/domains.hpp"
#include "modulo/parsers.hpp"

#include <set>
#include <string>
#include <vector>

namespace modulo {

struct UnresolvedEntity : std::runtime_error {
    explicit UnresolvedEntity(const std::string& what) : std::runtime_error(what) {}
};

/// One critic's verdict. passed <=> messages empty.
struct Critique {
    std::string critic_id;
    bool passed = true;
    std::vector<std::string> messages;

    static Critique of(std::string critic_id, std::vector<std::string> messages);
};

struct CritiqueReport {
    std::vector<Critique> critiques;
    bool all_passed = true;

    static CritiqueReport of(std::vector<Critique> critiques);
};

struct TravelCostOptions {
    /// Ground transport is priced per leg for the whole group by default;
    /// set to bill each person separately.
    bool ground_cost_per_person = false;
};

/// Work-hours containment, exact duration, per-participant clash check.
CritiqueReport critique_calendar(const CalendarQuery& q, const CalendarProposal& p);

/// Stay durations, flight availability (directional), event coverage,
/// total duration / visit-once / all-cities-present.
CritiqueReport critique_trip(const TripQuery& q, const TripPlan& p);

/// Single feasibility critic that replays the timeline step by step and
/// reports the first inconsistent step.
CritiqueReport critique_meeting(const MeetingQuery& q, const MeetingPlan& p);

/// Entity validity, minimum nights, room rules/occupancy, budget, routing,
/// and restaurant repetition, resolved against the sandbox.
CritiqueReport critique_travel(const TravelSandbox& sandbox, const TravelQuery& q,
                               const TravelPlan& plan, const TravelCostOptions& opts = {});

/// Total trip cost: transportation (flights per person, ground per leg by
/// default), meals per person, accommodation per night with
/// ceil(people / maximum_occupancy) rooms. Attractions are free.
/// Throws UnresolvedEntity if a referenced name is missing from the sandbox.
double get_total_cost(const TravelSandbox& sandbox, const TravelPlan& plan,
                      const TravelCostOptions& opts = {});

struct PipelineResult {
    FormatCritique format;
    std::optional<CritiqueReport> report;

    bool all_passed() const { return format.passed && report && report->all_passed; }
};

/// Format critic first; constraint critics only when the format passes.
PipelineResult run_critic_pipeline(const QueryInstance& instance, const std::string& raw_text);

/// All violation messages of a report in critic declaration order.
std::vector<std::string> collect_messages(const CritiqueReport& report);

/// Accommodation names called out by the minimum-nights / room-rule critics
/// (the candidates for backprompt filtering).
std::set<std::string> flagged_accommodations(const CritiqueReport& report);

/// One line per sandbox row; the block the travel prompts embed and the
/// filtering strategy prunes.
std::string render_sandbox_context(const TravelSandbox& sandbox);

/// Plain-money rendering: integral values without decimals, otherwise two.
std::string format_money(double value);

}  // namespace modulo
