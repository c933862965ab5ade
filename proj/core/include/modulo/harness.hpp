#pragma once

#include "modulo/domains.hpp"
#include "modulo/loop.hpp"
#include "modulo/oracles.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace modulo {

struct ParamsOutOfRange : std::runtime_error {
    explicit ParamsOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

/// JSON-lines instances, one per line, validated on load. Any bad line
/// rejects the whole file.
std::vector<QueryInstance> load_instances(const std::filesystem::path& path);
void save_instances(const std::vector<QueryInstance>& instances,
                    const std::filesystem::path& path);

/// Upstream CSV tables -> sandbox. Column names follow the source benchmark
/// (accommodations: NAME/price/room type/house_rules/minimum nights/maximum
/// occupancy/city; restaurants: Name/Average Cost/Cuisines/Aggregate
/// Rating/City; attractions: Name/City; flights: Flight Number/Price/
/// DepTime/ArrTime/OriginCityName/DestCityName). The optional ground table
/// uses origin,destination,mode,cost. Empty paths skip that table.
struct TravelCsvPaths {
    std::filesystem::path accommodations;
    std::filesystem::path restaurants;
    std::filesystem::path attractions;
    std::filesystem::path flights;
    std::filesystem::path ground;
};

TravelSandbox sandbox_from_csv(const TravelCsvPaths& paths);

struct GenParams {
    int count = 1;
    uint32_t seed = 0;
    // calendar
    std::optional<int> participants;
    std::optional<int> days;
    std::optional<int> duration;  // 30 or 60; unset picks randomly
    bool prefer_earliest = false;
    // trip
    std::optional<int> cities;
    // meeting
    std::optional<int> friends;
    // travel
    std::optional<int> constraints;
};

/// Seeded instances along the benchmark subset axes, each guaranteed
/// satisfiable (the oracle witness is stored as the golden answer).
std::vector<QueryInstance> generate_instances(Domain domain, const GenParams& params);

struct Evaluation {
    bool valid = false;
    std::optional<bool> optimal;  // meeting and prefer-earliest calendar only
};

/// valid = critic pipeline all-pass; calendar accepts any critic-valid slot
/// regardless of the golden answer; meeting optimality compares the number
/// of friends met with the oracle optimum.
Evaluation evaluate_plan(const QueryInstance& instance, const PlanDocument& plan);

struct EvalResult {
    std::string instance_id;
    Domain domain = Domain::calendar;
    std::string subset;
    bool valid = false;
    std::optional<bool> optimal;
    int iterations_used = 0;
    std::string error;  // generator error text; empty when the run completed
    LoopOutcome outcome;
};

struct SubsetRow {
    Domain domain = Domain::calendar;
    std::string subset;
    int instances = 0;
    int valid = 0;
    double accuracy_pct = 0;
    double mean_iterations = 0;  // over solved instances
};

struct Report {
    nlohmann::json metadata;
    std::vector<EvalResult> results;  // sorted by instance id
    std::vector<SubsetRow> rows;      // sorted by (domain, subset)

    static Report build(nlohmann::json metadata, std::vector<EvalResult> results);
};

/// Runs the loop for every instance on a bounded worker pool. Generator
/// errors mark the instance failed and the run continues. The report is
/// independent of worker count.
Report run_benchmark(const std::vector<QueryInstance>& instances, GeneratorBackend& backend,
                     const LoopConfig& cfg, int workers);

std::string report_to_csv(const Report& report);
std::string report_to_markdown(const Report& report);
nlohmann::json report_to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);

/// Writes report.json, report.csv and report.md into dir.
void write_report_files(const Report& report, const std::filesystem::path& dir);

}  // namespace modulo
