#include "modulo/critics.hpp"
#include "modulo/harness.hpp"
#include "modulo/oracles.hpp"
#include "modulo/parsers.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace modulo;

namespace {

QueryInstance instance_of(Domain domain, int axis)
{
    GenParams params;
    params.count = 1;
    params.seed = 1234 + static_cast<uint32_t>(axis);
    switch (domain) {
    case Domain::calendar: params.participants = axis; break;
    case Domain::trip: params.cities = axis; break;
    case Domain::meeting: params.friends = axis; break;
    case Domain::travel: params.constraints = std::min(axis, 3); break;
    }
    return generate_instances(domain, params)[0];
}

}  // namespace

static void BM_FreeIntervals(benchmark::State& state)
{
    std::mt19937 rng(1);
    std::vector<TimeInterval> busy;
    for (int i = 0; i < state.range(0); ++i) {
        int start = static_cast<int>(rng() % 1380);
        busy.push_back({TimeOfDay{start}, TimeOfDay{start + 30}});
    }
    TimeInterval window{TimeOfDay{540}, TimeOfDay{1020}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(free_intervals(busy, window));
    }
}
BENCHMARK(BM_FreeIntervals)->Arg(4)->Arg(16)->Arg(64);

static void BM_ParseCalendarPlan(benchmark::State& state)
{
    const std::string text = "Here is the proposed time: Monday, 12:00 - 13:00";
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_calendar_plan(text));
    }
}
BENCHMARK(BM_ParseCalendarPlan);

static void BM_ParseTravelPlan(benchmark::State& state)
{
    QueryInstance instance = instance_of(Domain::travel, 2);
    const std::string text = *instance.golden;
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_travel_plan(text));
    }
}
BENCHMARK(BM_ParseTravelPlan);

static void BM_CriticPipeline(benchmark::State& state)
{
    Domain domain = static_cast<Domain>(state.range(0));
    QueryInstance instance = instance_of(domain, 4);
    const std::string text = *instance.golden;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_critic_pipeline(instance, text));
    }
}
BENCHMARK(BM_CriticPipeline)->DenseRange(0, 3)->ArgName("domain");

static void BM_CalendarEnumeration(benchmark::State& state)
{
    QueryInstance instance = instance_of(Domain::calendar, static_cast<int>(state.range(0)));
    const auto& q = std::get<CalendarQuery>(instance.query);
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_calendar_slots(q, 30));
    }
}
BENCHMARK(BM_CalendarEnumeration)->Arg(3)->Arg(7);

static void BM_TripOracle(benchmark::State& state)
{
    QueryInstance instance = instance_of(Domain::trip, static_cast<int>(state.range(0)));
    const auto& q = std::get<TripQuery>(instance.query);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_trip(q));
    }
}
BENCHMARK(BM_TripOracle)->Arg(4)->Arg(6)->Arg(8);

static void BM_MeetingOracle(benchmark::State& state)
{
    QueryInstance instance = instance_of(Domain::meeting, static_cast<int>(state.range(0)));
    const auto& q = std::get<MeetingQuery>(instance.query);
    for (auto _ : state) {
        benchmark::DoNotOptimize(max_meetings(q));
    }
}
BENCHMARK(BM_MeetingOracle)->Arg(4)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
