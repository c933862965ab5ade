#include "modulo/loop.hpp"

#include "modulo/parsers.hpp"
#include "modulo/prompts.hpp"

#include <fmt/format.h>

#include <regex>

namespace modulo {

namespace {

GenerationRequest make_request(const QueryInstance& instance, const LoopConfig& cfg,
                               std::string prompt)
{
    GenerationRequest req;
    req.messages.push_back(ChatMessage{"user", std::move(prompt)});
    req.model = cfg.model;
    req.temperature = cfg.temperature;
    req.tag = instance.id;
    return req;
}

// The returned plan must survive a fresh pass through the pipeline; the loop
// is not allowed to hand out anything the critics would reject.
void assert_sound(const QueryInstance& instance, const PlanDocument& plan)
{
    PipelineResult check = run_critic_pipeline(instance, render_plan(plan));
    if (!check.all_passed()) {
        throw std::logic_error(
            fmt::format("soundness gate: re-verification failed for instance {}", instance.id));
    }
}

// Splits a k-alternatives completion on "Alternative <i>:" markers. Without
// markers the whole completion is the single candidate.
std::vector<std::string> split_alternatives(const std::string& text, int k)
{
    static const std::regex marker_re(R"((^|\n)\s*Alternative\s+\d+\s*:)");
    std::vector<std::pair<size_t, size_t>> markers;  // (start, end) of each marker
    for (auto it = std::sregex_iterator(text.begin(), text.end(), marker_re);
         it != std::sregex_iterator(); ++it) {
        size_t begin = static_cast<size_t>(it->position());
        if (!it->str().empty() && (it->str().front() == '\n')) {
            ++begin;
        }
        markers.emplace_back(begin, begin + it->length() - (it->str().front() == '\n' ? 1 : 0));
    }
    if (markers.empty()) {
        return {text};
    }
    std::vector<std::string> candidates;
    for (size_t i = 0; i < markers.size() && static_cast<int>(candidates.size()) < k; ++i) {
        size_t body = markers[i].second;
        size_t end = i + 1 < markers.size() ? markers[i + 1].first : text.size();
        candidates.push_back(text.substr(body, end - body));
    }
    return candidates;
}

}  // namespace

LoopOutcome run_loop(const QueryInstance& instance, GeneratorBackend& generator,
                     const LoopConfig& cfg)
{
    std::vector<IterationRecord> transcript;
    for (int iteration = 1; iteration <= cfg.budget; ++iteration) {
        std::string prompt = iteration == 1 ? build_initial_prompt(instance, cfg)
                                            : build_backprompt(instance, transcript, cfg);
        std::string response;
        try {
            response = generator.complete(make_request(instance, cfg, prompt));
        } catch (const std::exception& e) {
            throw GeneratorError(e.what(), std::move(transcript));
        }

        PipelineResult result = run_critic_pipeline(instance, response);
        transcript.push_back(IterationRecord{iteration, std::move(prompt), std::move(response),
                                             result.format, result.report});
        if (transcript.back().all_passed()) {
            PlanDocument plan = *transcript.back().format.parsed;
            assert_sound(instance, plan);
            return LoopOutcome{Solved{std::move(plan), iteration}, std::move(transcript)};
        }
    }
    std::optional<CritiqueReport> last_report =
        transcript.empty() ? std::nullopt : transcript.back().report;
    return LoopOutcome{Exhausted{cfg.budget, std::move(last_report)}, std::move(transcript)};
}

LoopOutcome run_bfs(const QueryInstance& instance, GeneratorBackend& generator,
                    const LoopConfig& cfg)
{
    if (cfg.bfs_branch_k <= 1) {
        return run_loop(instance, generator, cfg);
    }

    // Each frontier node is the chain of failing records along its path; the
    // backprompt for its children is built from that chain.
    std::vector<std::vector<IterationRecord>> frontier{{}};
    std::vector<IterationRecord> transcript;
    int index = 0;

    for (int depth = 1; depth <= cfg.budget && !frontier.empty(); ++depth) {
        std::vector<std::vector<IterationRecord>> next;
        for (const std::vector<IterationRecord>& chain : frontier) {
            std::string prompt = chain.empty() ? build_initial_prompt(instance, cfg)
                                               : build_backprompt(instance, chain, cfg);
            std::string completion;
            try {
                completion = generator.complete(make_request(instance, cfg, prompt));
            } catch (const std::exception& e) {
                throw GeneratorError(e.what(), std::move(transcript));
            }

            for (std::string& candidate : split_alternatives(completion, cfg.bfs_branch_k)) {
                PipelineResult result = run_critic_pipeline(instance, candidate);
                IterationRecord record{++index, prompt, std::move(candidate), result.format,
                                       result.report};
                transcript.push_back(record);
                if (record.all_passed()) {
                    PlanDocument plan = *record.format.parsed;
                    assert_sound(instance, plan);
                    return LoopOutcome{Solved{std::move(plan), depth}, std::move(transcript)};
                }
                std::vector<IterationRecord> child = chain;
                child.push_back(std::move(record));
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }

    std::optional<CritiqueReport> last_report =
        transcript.empty() ? std::nullopt : transcript.back().report;
    return LoopOutcome{Exhausted{cfg.budget, std::move(last_report)}, std::move(transcript)};
}

LoopOutcome run(const QueryInstance& instance, GeneratorBackend& generator, const LoopConfig& cfg)
{
    return cfg.strategy == LoopStrategy::bfs ? run_bfs(instance, generator, cfg)
                                             : run_loop(instance, generator, cfg);
}

}  // namespace modulo
