#include "hourscap/metrics.hpp"

#include <string>

#include "hourscap/error.hpp"

namespace hourscap {

namespace {

const PeriodRecord& at(const ScenarioResult& s, int t) {
    if (t < 0 || static_cast<std::size_t>(t) >= s.records.size()) {
        throw MetricError("period " + std::to_string(t) + " outside the scenario horizon");
    }
    return s.records[static_cast<std::size_t>(t)];
}

void check_aligned(const ScenarioResult& base, const ScenarioResult& cap) {
    if (base.records.size() != cap.records.size()) throw MetricError("scenarios have different horizons");
}

double ratio(double num, double den, const char* what) {
    if (!(den > 0.0)) throw MetricError(std::string("undefined metric: non-positive ") + what);
    return num / den;
}

}  // namespace

double a_req(const ScenarioResult& base, const ScenarioResult& cap, int t) {
    check_aligned(base, cap);
    return ratio(at(base, t).output, at(cap, t).output, "cap-scenario output");
}

double group_a_req(const ScenarioResult& base, const ScenarioResult& cap, Group g, int t) {
    check_aligned(base, cap);
    return ratio(at(base, t).group(g).output, at(cap, t).group(g).output, "cap-scenario group output");
}

Deltas deltas(const ScenarioResult& base, const ScenarioResult& cap, int t) {
    check_aligned(base, cap);
    const auto& b = at(base, t);
    const auto& c = at(cap, t);
    Deltas d;
    d.dY_pct = to_pct(ratio(c.output, b.output, "baseline output"));
    d.dC_pct = to_pct(ratio(c.consumption, b.consumption, "baseline consumption"));
    d.d_informality_pp = 100.0 * (c.informality_share - b.informality_share);
    const double gph_base = ratio(b.output, b.hours, "baseline hours");
    const double gph_cap = ratio(c.output, c.hours, "cap-scenario hours");
    d.d_gdp_per_hour_pct = to_pct(ratio(gph_cap, gph_base, "baseline GDP per hour"));
    return d;
}

GroupMetrics group_metrics(const ScenarioResult& base, const ScenarioResult& cap, Group g, int t) {
    check_aligned(base, cap);
    const auto& b = at(base, t).group(g);
    const auto& c = at(cap, t).group(g);
    const double n = base.params.group(g).workforce;
    GroupMetrics m;
    m.dY_pct = to_pct(ratio(c.output, b.output, "baseline group output"));
    m.d_informality_pp = 100.0 * (c.informal - b.informal) / n;
    m.a_req_pct = to_pct(group_a_req(base, cap, g, t));
    return m;
}

Decomposition decompose_fatigue(const EconomyParams& params, const PairSetup& setup, const ScenarioPair& pair) {
    const int t = setup.horizon - 1;
    SimulationOptions frozen_opts;
    frozen_opts.efficiency_hbar = setup.hbar_base;
    const FormalState init = initial_state(params, setup.hbar_base);
    const ScenarioResult frozen = run_scenario(
        params, PolicyPath::constant(setup.horizon, setup.hbar_cap).with_relief(Group::S, setup.relief), init,
        frozen_opts);

    const Deltas total = deltas(pair.base, pair.cap, t);
    const Deltas other = deltas(pair.base, frozen, t);
    Decomposition d;
    d.total_pct = total.dY_pct;
    d.other_pct = other.dY_pct;
    d.fatigue_pct = d.total_pct - d.other_pct;
    d.total_per_hour_pct = total.d_gdp_per_hour_pct;
    d.other_per_hour_pct = other.d_gdp_per_hour_pct;
    d.fatigue_per_hour_pct = d.total_per_hour_pct - d.other_per_hour_pct;
    return d;
}

Decomposition decompose_fatigue(const EconomyParams& params, const PairSetup& setup) {
    const ScenarioPair pair = run_pair(params, setup.horizon, setup.hbar_base, setup.hbar_cap, setup.relief);
    return decompose_fatigue(params, setup, pair);
}

MetricsReport build_report(const ScenarioPair& pair, const Decomposition& decomposition) {
    check_aligned(pair.base, pair.cap);
    MetricsReport r;
    const int horizon = static_cast<int>(pair.base.records.size());
    if (horizon == 0) throw MetricError("empty scenario");
    const int t = horizon - 1;
    r.a_req_path.reserve(static_cast<std::size_t>(horizon));
    for (int s = 0; s < horizon; ++s) r.a_req_path.push_back(a_req(pair.base, pair.cap, s));
    r.a_req_terminal_pct = to_pct(r.a_req_path.back());
    r.terminal = deltas(pair.base, pair.cap, t);
    for (Group g : kGroups) r.per_group[index(g)] = group_metrics(pair.base, pair.cap, g, t);
    r.decomposition = decomposition;
    return r;
}

PairRun run_and_measure(const EconomyParams& params, const PairSetup& setup) {
    PairRun run;
    run.setup = setup;
    run.pair = run_pair(params, setup.horizon, setup.hbar_base, setup.hbar_cap, setup.relief);
    run.report = build_report(run.pair, decompose_fatigue(params, setup, run.pair));
    return run;
}

}  // namespace hourscap
