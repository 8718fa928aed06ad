#pragma once

#include <array>
#include <vector>

#include "hourscap/scenario.hpp"

namespace hourscap {

// Y_base[t] / Y_cap[t]: the multiplicative TFP factor that would restore
// baseline output under the cap. Throws MetricError when Y_cap[t] <= 0.
double a_req(const ScenarioResult& base, const ScenarioResult& cap, int t);

double group_a_req(const ScenarioResult& base, const ScenarioResult& cap, Group g, int t);

inline double to_pct(double ratio) { return 100.0 * (ratio - 1.0); }

struct Deltas {
    double dY_pct = 0.0;
    double dC_pct = 0.0;
    double d_informality_pp = 0.0;
    double d_gdp_per_hour_pct = 0.0;
};

Deltas deltas(const ScenarioResult& base, const ScenarioResult& cap, int t);

struct GroupMetrics {
    double dY_pct = 0.0;
    double d_informality_pp = 0.0;
    double a_req_pct = 0.0;
};

GroupMetrics group_metrics(const ScenarioResult& base, const ScenarioResult& cap, Group g, int t);

// Output change split into the per-hour efficiency (fatigue) channel and
// everything else. The counterfactual reruns the cap scenario with
// efficiency frozen at baseline-cap hours; other = its output change and
// fatigue = total - other. The same split is reported for GDP per paid hour.
struct Decomposition {
    double fatigue_pct = 0.0;
    double other_pct = 0.0;
    double total_pct = 0.0;
    double fatigue_per_hour_pct = 0.0;
    double other_per_hour_pct = 0.0;
    double total_per_hour_pct = 0.0;
};

struct PairSetup {
    int horizon = simulation_settings::kDefaultHorizon;
    double hbar_base = 44.0;
    double hbar_cap = 36.0;
    double relief = 0.0;
};

Decomposition decompose_fatigue(const EconomyParams& params, const PairSetup& setup);

// Same split when the scenario pair has already been run.
Decomposition decompose_fatigue(const EconomyParams& params, const PairSetup& setup, const ScenarioPair& pair);

struct MetricsReport {
    std::vector<double> a_req_path;  // ratios, one per period
    double a_req_terminal_pct = 0.0;
    Deltas terminal;
    std::array<GroupMetrics, 2> per_group;
    Decomposition decomposition;

    const GroupMetrics& group(Group g) const noexcept { return per_group[index(g)]; }
};

MetricsReport build_report(const ScenarioPair& pair, const Decomposition& decomposition);

// Runs the pair and the frozen-efficiency counterfactual.
struct PairRun {
    PairSetup setup;
    ScenarioPair pair;
    MetricsReport report;
};

PairRun run_and_measure(const EconomyParams& params, const PairSetup& setup);

}  // namespace hourscap
