#pragma once

#include "modulo/domains.hpp"
#include "modulo/parsers.hpp"

#include <atomic>
#include <memory>
#include <optional>
#include <vector>

namespace modulo {

struct InstanceTooLarge : std::runtime_error {
    explicit InstanceTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct SearchCancelled : std::runtime_error {
    SearchCancelled() : std::runtime_error("search cancelled") {}
};

/// Cooperative cancellation for long searches. Default-constructed tokens
/// never cancel.
class CancellationToken {
public:
    CancellationToken() = default;

    static CancellationToken make();
    void cancel();
    bool cancelled() const;
    void check() const;  // throws SearchCancelled when set

private:
    std::shared_ptr<std::atomic<bool>> flag_;
};

struct OracleVerdict {
    bool valid = false;
    std::optional<PlanDocument> witness;
    /// Domain-specific: max friends met (meeting) or earliest slot start
    /// in minutes (calendar).
    std::optional<int> optimum;
};

/// All clash-free proposals of the query duration on the step grid
/// (anchored at the work-window start), ordered by candidate day then start.
/// step must divide 30.
std::vector<CalendarProposal> enumerate_calendar_slots(const CalendarQuery& q,
                                                       int step_minutes = 30);

/// Depth-first search over city orderings pruned by flight edges; segment
/// days are forced by the stay lengths and the shared-boundary convention.
/// Throws InstanceTooLarge above 10 cities.
OracleVerdict solve_trip(const TripQuery& q, const CancellationToken& cancel = {});

/// Exhaustive search over friend orders with earliest-start scheduling and
/// meetings fixed at their minimum duration. Throws InstanceTooLarge above
/// 10 friends.
OracleVerdict max_meetings(const MeetingQuery& q, const CancellationToken& cancel = {});

/// Exhaustive product over flights, accommodation and meal choices for
/// synthetic sandboxes (<= 5 rows per table, 3-day trips, one destination).
OracleVerdict solve_travel_small(const TravelSandbox& sandbox, const TravelQuery& q,
                                 const CancellationToken& cancel = {});

// Independent ground-truth validity checks, deliberately implemented apart
// from the critics so the two can certify each other.

/// Minute-sweep validity: every minute of the slot inside the work window
/// and clash-free for every participant.
bool oracle_valid_calendar(const CalendarQuery& q, const CalendarProposal& p);

/// Day-occupancy validity: every trip day covered, boundaries shared,
/// stays/flights/events all honored.
bool oracle_valid_trip(const TripQuery& q, const TripPlan& p);

/// Straight replay of the step list against the query.
bool oracle_valid_meeting(const MeetingQuery& q, const MeetingPlan& p);

/// Direct re-check of every travel constraint, cost recomputed inline.
bool oracle_valid_travel(const TravelSandbox& sandbox, const TravelQuery& q,
                         const TravelPlan& plan);

bool oracle_valid(const QueryInstance& instance, const PlanDocument& plan);

}  // namespace modulo
