#include <benchmark/benchmark.h>

#include <string>

#include "hourscap/choice.hpp"
#include "hourscap/io/config.hpp"
#include "hourscap/metrics.hpp"
#include "hourscap/scenario.hpp"
#include "hourscap/sweep.hpp"

using namespace hourscap;

namespace {

const io::ConfigDocument& reference() {
    static const io::ConfigDocument doc = io::load_config(std::string(HOURSCAP_CONFIG_DIR) + "/reference.json");
    return doc;
}

ChoiceProblem problem(Group g) {
    const auto& e = reference().economy;
    ChoiceProblem p;
    p.economy = e;
    p.group = g;
    p.hbar = 36;
    p.formal_prev = 0.6 * e.group(g).workforce;
    p.tau_effective = e.group(g).wedge;
    return p;
}

}  // namespace

static void BM_SolveGroup(benchmark::State& state) {
    const ChoiceProblem p = problem(state.range(0) == 0 ? Group::S : Group::L);
    for (auto _ : state) benchmark::DoNotOptimize(solve_group(p));
}
BENCHMARK(BM_SolveGroup)->Arg(0)->Arg(1);

static void BM_InitialState(benchmark::State& state) {
    const auto& e = reference().economy;
    for (auto _ : state) benchmark::DoNotOptimize(initial_state(e, 44));
}
BENCHMARK(BM_InitialState);

static void BM_RunPair(benchmark::State& state) {
    const auto& doc = reference();
    const auto& pol = doc.policy;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_pair(doc.economy, pol.horizon, pol.hbar_base, pol.hbar_cap, pol.relief));
    }
    state.SetLabel("horizon " + std::to_string(pol.horizon));
}
BENCHMARK(BM_RunPair)->Unit(benchmark::kMillisecond);

static void BM_HeatmapCell(benchmark::State& state) {
    const auto& e = reference().economy;
    const SweepSpec spec = SweepSpec::defaults(SweepKind::heatmap);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_cell(e, spec, spec.hbar_cap, 1.5, 0.4));
}
BENCHMARK(BM_HeatmapCell)->Unit(benchmark::kMillisecond);

static void BM_Heatmap(benchmark::State& state) {
    const auto& e = reference().economy;
    const SweepSpec spec = SweepSpec::defaults(SweepKind::heatmap);
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(heatmap(e, spec, threads));
}
BENCHMARK(BM_Heatmap)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
