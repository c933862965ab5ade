#pragma once

#include "modulo/critics.hpp"
#include "modulo/generator.hpp"

#include <string>
#include <variant>
#include <vector>

namespace modulo {

enum class FeedbackMode { full, binary, first_only };
enum class LoopStrategy { chain, bfs };

FeedbackMode parse_feedback_mode(std::string_view name);
std::string_view feedback_mode_name(FeedbackMode mode);

struct LoopConfig {
    int budget = 10;
    FeedbackMode feedback_mode = FeedbackMode::full;
    int history_n = 0;
    bool history_unique_only = false;
    bool history_include_critiques = false;
    bool filtering_enabled = false;
    bool cot_suffix = false;
    LoopStrategy strategy = LoopStrategy::chain;
    int bfs_branch_k = 1;
    std::string model = "gpt-4o-mini";
    double temperature = 0.0;
};

struct IterationRecord {
    int index = 1;
    std::string prompt;
    std::string raw_response;
    FormatCritique format;
    std::optional<CritiqueReport> report;

    bool all_passed() const { return format.passed && report && report->all_passed; }
};

struct Solved {
    PlanDocument plan;
    int at_iteration = 1;  // chain: generator call; bfs: tree depth
};

struct Exhausted {
    int budget = 0;
    std::optional<CritiqueReport> last_report;
};

struct LoopOutcome {
    std::variant<Solved, Exhausted> status;
    std::vector<IterationRecord> transcript;

    bool solved() const { return std::holds_alternative<Solved>(status); }
    const Solved* solution() const { return std::get_if<Solved>(&status); }
};

struct GeneratorError : std::runtime_error {
    std::vector<IterationRecord> transcript;
    GeneratorError(const std::string& what, std::vector<IterationRecord> transcript_so_far)
        : std::runtime_error(what), transcript(std::move(transcript_so_far)) {}
};

/// Generate-test-critique chain. Every generator call consumes one budget
/// unit, format-fix rounds included. A Solved outcome is re-verified through
/// the critic pipeline before it is returned.
LoopOutcome run_loop(const QueryInstance& instance, GeneratorBackend& generator,
                     const LoopConfig& cfg);

/// Breadth-first variant: each node asks for bfs_branch_k candidates in one
/// completion, children are expanded level by level, and the first approved
/// candidate (level order, then list order) wins. budget bounds the depth.
/// With k = 1 this is exactly run_loop.
LoopOutcome run_bfs(const QueryInstance& instance, GeneratorBackend& generator,
                    const LoopConfig& cfg);

/// Dispatch on cfg.strategy.
LoopOutcome run(const QueryInstance& instance, GeneratorBackend& generator, const LoopConfig& cfg);

}  // namespace modulo
