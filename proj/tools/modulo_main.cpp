// modulo: run the generate-test-critique loop, verify plans, query oracles,
// generate benchmark instances, and emit reports.

#include "modulo/critics.hpp"
#include "modulo/harness.hpp"
#include "modulo/json_io.hpp"
#include "modulo/oracles.hpp"
#include "modulo/parsers.hpp"
#include "modulo/prompts.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using modulo::Domain;

constexpr int kExitOk = 0;
constexpr int kExitInstanceError = 1;
constexpr int kExitBadConfig = 2;

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw modulo::BadConfig("cannot open " + path);
    }
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

struct RunOptions {
    std::string domain;
    std::string dataset;
    std::string backend = "scripted";
    std::string url;
    std::string api_key_env = "OPENAI_API_KEY";
    std::string script;
    std::string cache_dir;
    std::string cache_mode = "replay";
    std::string model = "gpt-4o-mini";
    int budget = 10;
    std::string feedback = "full";
    int history = 0;
    bool history_unique = false;
    bool history_critiques = false;
    bool filtering = false;
    bool cot = false;
    std::string strategy = "chain";
    int branch = 1;
    int workers = 1;
    double temperature = 0.0;
    std::string out = "out";
    bool direct_baseline = false;
};

void apply_config_file(RunOptions& opts, const std::string& path)
{
    nlohmann::json j = nlohmann::json::parse(read_file(path), nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw modulo::BadConfig("config file is not a JSON object: " + path);
    }
    opts.domain = j.value("domain", opts.domain);
    opts.dataset = j.value("dataset", opts.dataset);
    opts.backend = j.value("backend", opts.backend);
    opts.url = j.value("url", opts.url);
    opts.api_key_env = j.value("api_key_env", opts.api_key_env);
    opts.script = j.value("script", opts.script);
    opts.cache_dir = j.value("cache_dir", opts.cache_dir);
    opts.cache_mode = j.value("cache_mode", opts.cache_mode);
    opts.model = j.value("model", opts.model);
    opts.budget = j.value("budget", opts.budget);
    opts.feedback = j.value("feedback", opts.feedback);
    opts.history = j.value("history", opts.history);
    opts.history_unique = j.value("history_unique", opts.history_unique);
    opts.history_critiques = j.value("history_critiques", opts.history_critiques);
    opts.filtering = j.value("filtering", opts.filtering);
    opts.cot = j.value("cot", opts.cot);
    opts.strategy = j.value("strategy", opts.strategy);
    opts.branch = j.value("branch", opts.branch);
    opts.workers = j.value("workers", opts.workers);
    opts.temperature = j.value("temperature", opts.temperature);
    opts.out = j.value("out", opts.out);
    opts.direct_baseline = j.value("direct", opts.direct_baseline);
}

modulo::LoopConfig loop_config_of(const RunOptions& opts)
{
    modulo::LoopConfig cfg;
    cfg.budget = opts.budget;
    cfg.feedback_mode = modulo::parse_feedback_mode(opts.feedback);
    cfg.history_n = opts.history;
    cfg.history_unique_only = opts.history_unique;
    cfg.history_include_critiques = opts.history_critiques;
    cfg.filtering_enabled = opts.filtering;
    cfg.cot_suffix = opts.cot;
    if (opts.strategy == "chain") {
        cfg.strategy = modulo::LoopStrategy::chain;
    } else if (opts.strategy == "bfs") {
        cfg.strategy = modulo::LoopStrategy::bfs;
    } else {
        throw modulo::BadConfig("strategy must be 'chain' or 'bfs'");
    }
    cfg.bfs_branch_k = opts.branch;
    cfg.model = opts.model;
    cfg.temperature = opts.temperature;
    if (cfg.budget < 1 || cfg.bfs_branch_k < 1) {
        throw modulo::BadConfig("budget and branch must be at least 1");
    }
    return cfg;
}

std::shared_ptr<modulo::GeneratorBackend> backend_of(const RunOptions& opts)
{
    nlohmann::json spec;
    if (opts.backend == "http") {
        spec = {{"kind", "http"}, {"url", opts.url}, {"api_key_env", opts.api_key_env}};
    } else if (opts.backend == "scripted") {
        if (opts.script.empty()) {
            throw modulo::BadConfig("scripted backend needs --script");
        }
        spec = {{"kind", "scripted"}, {"script", opts.script}};
    } else if (opts.backend == "cache") {
        if (opts.cache_dir.empty()) {
            throw modulo::BadConfig("cache backend needs --cache-dir");
        }
        spec = {{"kind", "cache"}, {"dir", opts.cache_dir}, {"mode", opts.cache_mode}};
        if (opts.cache_mode == "record") {
            nlohmann::json inner;
            if (!opts.script.empty()) {
                inner = {{"kind", "scripted"}, {"script", opts.script}};
            } else if (!opts.url.empty()) {
                inner = {{"kind", "http"}, {"url", opts.url}, {"api_key_env", opts.api_key_env}};
            } else {
                throw modulo::BadConfig("cache record mode needs --script or --url");
            }
            spec["inner"] = std::move(inner);
        }
    } else {
        throw modulo::BadConfig("backend must be http, scripted or cache");
    }
    return modulo::make_backend(spec);
}

int cmd_run(const RunOptions& opts)
{
    modulo::LoopConfig cfg = loop_config_of(opts);
    if (opts.dataset.empty()) {
        throw modulo::BadConfig("run needs --dataset");
    }
    std::vector<modulo::QueryInstance> instances = modulo::load_instances(opts.dataset);
    if (!opts.domain.empty()) {
        Domain filter = modulo::parse_domain(opts.domain);
        std::erase_if(instances,
                      [filter](const modulo::QueryInstance& q) { return q.domain != filter; });
    }
    if (instances.empty()) {
        throw modulo::BadConfig("no instances to run");
    }

    auto backend = backend_of(opts);
    modulo::Report report = modulo::run_benchmark(instances, *backend, cfg, opts.workers);
    modulo::write_report_files(report, opts.out);
    std::cout << modulo::report_to_csv(report);

    bool any_error = false;
    for (const modulo::EvalResult& r : report.results) {
        if (!r.error.empty()) {
            any_error = true;
            std::cerr << fmt::format("instance {} errored: {}\n", r.instance_id, r.error);
        }
    }

    if (opts.direct_baseline) {
        modulo::LoopConfig direct = cfg;
        direct.budget = 1;
        modulo::Report baseline = modulo::run_benchmark(instances, *backend, direct, opts.workers);
        std::filesystem::path dir(opts.out);
        std::ofstream json_out(dir / "report_direct.json");
        json_out << modulo::report_to_json(baseline).dump(2) << "\n";
        std::ofstream csv_out(dir / "report_direct.csv");
        csv_out << modulo::report_to_csv(baseline);
    }
    return any_error ? kExitInstanceError : kExitOk;
}

modulo::QueryInstance instance_from_query_file(const std::string& domain_name,
                                               const std::string& query_path)
{
    nlohmann::json j = nlohmann::json::parse(read_file(query_path), nullptr, false);
    if (j.is_discarded()) {
        throw modulo::BadConfig("query file is not valid JSON: " + query_path);
    }
    if (j.contains("domain") && j.contains("query")) {
        return modulo::instance_from_json(j);
    }
    if (domain_name.empty()) {
        throw modulo::BadConfig("--domain is required when the query file is a bare query");
    }
    modulo::QueryInstance instance;
    instance.id = query_path;
    instance.domain = modulo::parse_domain(domain_name);
    switch (instance.domain) {
    case Domain::travel: instance.query = modulo::travel_case_from_json(j); break;
    case Domain::trip: instance.query = modulo::trip_query_from_json(j); break;
    case Domain::meeting: instance.query = modulo::meeting_query_from_json(j); break;
    case Domain::calendar: instance.query = modulo::calendar_query_from_json(j); break;
    }
    return instance;
}

int cmd_verify(const std::string& domain, const std::string& query_path,
               const std::string& plan_path)
{
    modulo::QueryInstance instance = instance_from_query_file(domain, query_path);
    std::string plan_text = read_file(plan_path);
    modulo::PipelineResult result = modulo::run_critic_pipeline(instance, plan_text);

    if (!result.format.passed) {
        std::cout << "format: FAIL\n";
        for (const std::string& m : result.format.messages) {
            std::cout << "  " << m << "\n";
        }
        return kExitInstanceError;
    }
    std::cout << "format: pass\n";
    for (const modulo::Critique& c : result.report->critiques) {
        std::cout << fmt::format("{}: {}\n", c.critic_id, c.passed ? "pass" : "FAIL");
        for (const std::string& m : c.messages) {
            std::cout << "  " << m << "\n";
        }
    }
    std::cout << (result.all_passed() ? "plan is valid\n" : "plan is invalid\n");
    return result.all_passed() ? kExitOk : kExitInstanceError;
}

int cmd_oracle(const std::string& domain, const std::string& query_path, int step)
{
    modulo::QueryInstance instance = instance_from_query_file(domain, query_path);
    nlohmann::json out;
    switch (instance.domain) {
    case Domain::calendar: {
        const auto& q = std::get<modulo::CalendarQuery>(instance.query);
        nlohmann::json slots = nlohmann::json::array();
        for (const modulo::CalendarProposal& slot : modulo::enumerate_calendar_slots(q, step)) {
            slots.push_back(modulo::render_calendar_proposal(slot));
        }
        out = {{"valid", !slots.empty()}, {"slots", std::move(slots)}};
        break;
    }
    case Domain::trip: {
        modulo::OracleVerdict v = modulo::solve_trip(std::get<modulo::TripQuery>(instance.query));
        out = {{"valid", v.valid}};
        if (v.witness) {
            out["witness"] = modulo::render_plan(*v.witness);
        }
        break;
    }
    case Domain::meeting: {
        modulo::OracleVerdict v =
            modulo::max_meetings(std::get<modulo::MeetingQuery>(instance.query));
        out = {{"valid", v.valid}, {"optimum", v.optimum.value_or(0)}};
        if (v.witness) {
            out["witness"] = modulo::render_plan(*v.witness);
        }
        break;
    }
    case Domain::travel: {
        const auto& c = std::get<modulo::TravelCase>(instance.query);
        modulo::OracleVerdict v = modulo::solve_travel_small(c.sandbox, c.query);
        out = {{"valid", v.valid}};
        if (v.witness) {
            out["witness"] = modulo::render_plan(*v.witness);
        }
        break;
    }
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_gen(const std::string& domain_name, const modulo::GenParams& params,
            const std::string& out_path)
{
    Domain domain = modulo::parse_domain(domain_name);
    std::vector<modulo::QueryInstance> instances = modulo::generate_instances(domain, params);
    if (out_path.empty()) {
        for (const modulo::QueryInstance& instance : instances) {
            std::cout << modulo::instance_to_json(instance).dump() << "\n";
        }
    } else {
        modulo::save_instances(instances, out_path);
        std::cerr << fmt::format("wrote {} instances to {}\n", instances.size(), out_path);
    }
    return kExitOk;
}

int cmd_ingest(const modulo::TravelCsvPaths& paths, const std::string& out_path)
{
    modulo::TravelSandbox sandbox = modulo::sandbox_from_csv(paths);
    std::string text = modulo::to_json(sandbox).dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        out << text;
        std::cerr << fmt::format("wrote sandbox with {} accommodations, {} restaurants, "
                                 "{} attractions, {} flights to {}\n",
                                 sandbox.accommodations.size(), sandbox.restaurants.size(),
                                 sandbox.attractions.size(), sandbox.flights.size(), out_path);
    }
    return kExitOk;
}

int cmd_report(const std::string& in_dir, const std::string& format, const std::string& out_path)
{
    nlohmann::json j = nlohmann::json::parse(read_file(in_dir + "/report.json"), nullptr, false);
    if (j.is_discarded()) {
        throw modulo::BadConfig("no readable report.json under " + in_dir);
    }
    std::string text;
    if (format == "json") {
        text = j.dump(2) + "\n";
    } else {
        modulo::Report report = modulo::report_from_json(j);
        if (format == "csv") {
            text = modulo::report_to_csv(report);
        } else if (format == "markdown") {
            text = modulo::report_to_markdown(report);
        } else {
            throw modulo::BadConfig("format must be csv, json or markdown");
        }
    }
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        out << text;
    }
    return kExitOk;
}

std::string find_config_arg(int argc, char** argv)
{
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string_view(argv[i]) == "--config") {
            return argv[i + 1];
        }
    }
    return "";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"LLM-Modulo scheduling loop"};
    app.require_subcommand(1);

    RunOptions run_opts;
    std::string config_path = find_config_arg(argc, argv);
    try {
        if (!config_path.empty()) {
            apply_config_file(run_opts, config_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    }

    std::string ignored_config;
    CLI::App* run = app.add_subcommand("run", "Run the loop over a dataset");
    run->add_option("--config", ignored_config, "JSON config file mirroring the flags");
    run->add_option("--domain", run_opts.domain, "Only run instances of this domain");
    run->add_option("--dataset", run_opts.dataset, "JSON-lines instance file");
    run->add_option("--backend", run_opts.backend, "http, scripted or cache");
    run->add_option("--url", run_opts.url, "Chat-completions base URL (http backend)");
    run->add_option("--api-key-env", run_opts.api_key_env, "Env var holding the API key");
    run->add_option("--script", run_opts.script, "Scripted responses JSON file");
    run->add_option("--cache-dir", run_opts.cache_dir, "Cache directory (cache backend)");
    run->add_option("--cache-mode", run_opts.cache_mode, "record or replay");
    run->add_option("--model", run_opts.model, "Model name sent to the backend");
    run->add_option("--budget", run_opts.budget, "Maximum loop iterations");
    run->add_option("--feedback", run_opts.feedback, "full, binary or first");
    run->add_option("--history", run_opts.history, "Number of previous incorrect plans to include");
    run->add_flag("--history-unique", run_opts.history_unique, "Deduplicate history plans");
    run->add_flag("--history-critiques", run_opts.history_critiques,
                  "Attach critiques to history plans");
    run->add_flag("--filtering", run_opts.filtering, "Filter flagged accommodations (travel)");
    run->add_flag("--cot", run_opts.cot, "Append 'Think step-by-step'");
    run->add_option("--strategy", run_opts.strategy, "chain or bfs");
    run->add_option("--branch", run_opts.branch, "Candidates per completion (bfs)");
    run->add_option("--workers", run_opts.workers, "Worker pool size");
    run->add_option("--temperature", run_opts.temperature, "Sampling temperature");
    run->add_option("--out", run_opts.out, "Report output directory");
    run->add_flag("--direct", run_opts.direct_baseline,
                  "Also run the budget-1 direct-prompting baseline");

    std::string verify_domain, verify_query, verify_plan;
    CLI::App* verify = app.add_subcommand("verify", "Run the critics on a plan file");
    verify->add_option("--domain", verify_domain, "Domain of the query");
    verify->add_option("--query", verify_query, "Query JSON file")->required();
    verify->add_option("--plan", verify_plan, "Plan text file")->required();

    std::string oracle_domain, oracle_query;
    int oracle_step = 30;
    CLI::App* oracle = app.add_subcommand("oracle", "Solve a query exhaustively");
    oracle->add_option("--domain", oracle_domain, "Domain of the query");
    oracle->add_option("--query", oracle_query, "Query JSON file")->required();
    oracle->add_option("--step", oracle_step, "Calendar enumeration grid (minutes)");

    std::string gen_domain, gen_out;
    modulo::GenParams gen_params;
    int gen_participants = -1, gen_days = -1, gen_duration = -1, gen_cities = -1,
        gen_friends = -1, gen_constraints = -1;
    CLI::App* gen = app.add_subcommand("gen", "Generate satisfiable instances");
    gen->add_option("--domain", gen_domain, "travel, trip, meeting or calendar")->required();
    gen->add_option("--n", gen_params.count, "Number of instances");
    gen->add_option("--seed", gen_params.seed, "RNG seed");
    gen->add_option("--participants", gen_participants, "Calendar participants (1..7)");
    gen->add_option("--days", gen_days, "Calendar days (1..5)");
    gen->add_option("--duration", gen_duration, "Meeting duration, 30 or 60");
    gen->add_flag("--prefer-earliest", gen_params.prefer_earliest,
                  "Ask for the earliest slot (calendar)");
    gen->add_option("--cities", gen_cities, "Trip cities (3..10)");
    gen->add_option("--friends", gen_friends, "Meeting friends (0..10)");
    gen->add_option("--constraints", gen_constraints, "Travel constraints (0..3)");
    gen->add_option("--out", gen_out, "Output JSON-lines file (default stdout)");

    modulo::TravelCsvPaths ingest_paths;
    std::string ingest_out;
    CLI::App* ingest = app.add_subcommand("ingest", "Convert upstream CSV tables to a sandbox");
    ingest->add_option("--accommodations", ingest_paths.accommodations, "Accommodations CSV");
    ingest->add_option("--restaurants", ingest_paths.restaurants, "Restaurants CSV");
    ingest->add_option("--attractions", ingest_paths.attractions, "Attractions CSV");
    ingest->add_option("--flights", ingest_paths.flights, "Flights CSV");
    ingest->add_option("--ground", ingest_paths.ground, "Ground transport CSV");
    ingest->add_option("--out", ingest_out, "Output sandbox JSON file (default stdout)");

    std::string report_in, report_format = "csv", report_out;
    CLI::App* report = app.add_subcommand("report", "Re-emit a stored report");
    report->add_option("--in", report_in, "Directory holding report.json")->required();
    report->add_option("--format", report_format, "csv, json or markdown");
    report->add_option("--out", report_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadConfig;
    }

    try {
        if (run->parsed()) {
            return cmd_run(run_opts);
        }
        if (verify->parsed()) {
            return cmd_verify(verify_domain, verify_query, verify_plan);
        }
        if (oracle->parsed()) {
            return cmd_oracle(oracle_domain, oracle_query, oracle_step);
        }
        if (gen->parsed()) {
            if (gen_participants >= 0) gen_params.participants = gen_participants;
            if (gen_days >= 0) gen_params.days = gen_days;
            if (gen_duration >= 0) gen_params.duration = gen_duration;
            if (gen_cities >= 0) gen_params.cities = gen_cities;
            if (gen_friends >= 0) gen_params.friends = gen_friends;
            if (gen_constraints >= 0) gen_params.constraints = gen_constraints;
            return cmd_gen(gen_domain, gen_params, gen_out);
        }
        if (ingest->parsed()) {
            return cmd_ingest(ingest_paths, ingest_out);
        }
        if (report->parsed()) {
            return cmd_report(report_in, report_format, report_out);
        }
    } catch (const modulo::BadConfig& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const modulo::ParamsOutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInstanceError;
    }
    return kExitOk;
}
