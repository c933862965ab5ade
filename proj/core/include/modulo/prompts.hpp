#pragma once

#include "modulo/domains.hpp"
#include "modulo/loop.hpp"

#include <set>
#include <string>
#include <vector>

namespace modulo {

struct MissingTemplate : std::runtime_error {
    explicit MissingTemplate(const std::string& what) : std::runtime_error(what) {}
};

struct NoFailureToReport : std::runtime_error {
    NoFailureToReport() : std::runtime_error("no failing iteration to backprompt about") {}
};

/// Domain template (one-shot for travel, five-shot otherwise) filled with
/// the instance's query block. cot_suffix appends "Think step-by-step".
std::string build_initial_prompt(const QueryInstance& instance, const LoopConfig& cfg);

/// Fix-template for the domain filled with the last failing plan, feedback
/// per cfg.feedback_mode, the history window, and (travel) the sandbox
/// context, filtered when filtering is enabled.
std::string build_backprompt(const QueryInstance& instance,
                             const std::vector<IterationRecord>& history, const LoopConfig& cfg);

/// Removes the context lines describing flagged accommodations. Idempotent.
std::string filter_context(const std::string& sandbox_block,
                           const std::set<std::string>& flagged);

/// Feedback block formatting as the backprompts use it: numbered for travel
/// and calendar, plain lines for trip, "Had error:" lines for meeting.
std::string render_feedback(Domain domain, const std::vector<std::string>& messages);

/// The exact binary-feedback sentence.
extern const std::string kBinaryFeedback;

// Canonical query blocks, used for generated instances and template examples.
std::string render_calendar_query_text(const CalendarQuery& q);
std::string render_trip_query_text(const TripQuery& q);
std::string render_meeting_query_text(const MeetingQuery& q);
std::string render_travel_query_text(const TravelQuery& q);

}  // namespace modulo
