#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "hourscap/model.hpp"

namespace hourscap {

// Exogenous per-period formal-hours cap plus per-group wedge multipliers.
struct PolicyPath {
    std::vector<double> hbar;
    std::array<std::vector<double>, 2> wedge_multiplier;  // per group, length T

    int horizon() const noexcept { return static_cast<int>(hbar.size()); }
    double multiplier(Group g, int t) const { return wedge_multiplier[index(g)][static_cast<std::size_t>(t)]; }

    static PolicyPath constant(int horizon, double hbar);
    static PolicyPath linear_ramp(int horizon, double from, double to);

    // Multiply group g's wedge by (1 - relief) in every period.
    PolicyPath& with_relief(Group g, double relief);

    friend bool operator==(const PolicyPath&, const PolicyPath&) = default;
};

// Throws ValidationError with paths rooted at "policy".
void validate(const PolicyPath& policy);

struct GroupRecord {
    double formal = 0.0;       // N_F
    double informal = 0.0;     // N_I
    double hours_index = 0.0;  // ell_F
    double formal_labor = 0.0; // L_F
    double informal_labor = 0.0;
    double labor = 0.0;        // CES aggregate L
    double output = 0.0;
    double adjustment = 0.0;
    double deadweight = 0.0;
    double informal_cost = 0.0;
    double hours_paid = 0.0;
    double tau_effective = 0.0;

    friend bool operator==(const GroupRecord&, const GroupRecord&) = default;
};

struct PeriodRecord {
    int t = 0;
    std::array<GroupRecord, 2> groups;
    double output = 0.0;
    double consumption = 0.0;
    double hours = 0.0;
    double informality_share = 0.0;
    bool negative_consumption = false;

    const GroupRecord& group(Group g) const noexcept { return groups[index(g)]; }

    friend bool operator==(const PeriodRecord&, const PeriodRecord&) = default;
};

struct ScenarioResult {
    EconomyParams params;
    PolicyPath policy;
    std::vector<PeriodRecord> records;
    // False when the last two periods differ by more than 1e-6 N_g in any
    // group's formal employment.
    bool settled = true;

    const PeriodRecord& terminal() const { return records.back(); }
    bool any_negative_consumption() const noexcept;
};

struct SimulationOptions {
    // Evaluate efficiency at min(h, efficiency_hbar) instead of the cap in
    // force (used to switch off the fatigue channel).
    std::optional<double> efficiency_hbar;
};

using FormalState = std::array<double, 2>;

namespace simulation_settings {
inline constexpr int kDefaultHorizon = 12;
inline constexpr double kFixedPointDamping = 0.5;
inline constexpr double kFixedPointTolerance = 1e-8;  // relative to N_g
inline constexpr int kFixedPointMaxIterations = 500;
inline constexpr double kSettledTolerance = 1e-6;     // relative to N_g
}  // namespace simulation_settings

// Steady choice of a single group: the fixed point N_F* = solve(N_F_prev = N_F*)
// under constant cap and wedge. Throws ConvergenceError with the residual.
double steady_formal(const EconomyParams& params, Group g, double hbar, double tau_effective,
                     const SimulationOptions& options = {});

// Steady formal employment of both groups under hbar0 and the baseline wedges.
FormalState initial_state(const EconomyParams& params, double hbar0);

ScenarioResult run_scenario(const EconomyParams& params, const PolicyPath& policy, const FormalState& initial,
                            const SimulationOptions& options = {});

// Starts from the steady state at hbar_base.
ScenarioResult run_scenario(const EconomyParams& params, const PolicyPath& policy, double hbar_base,
                            const SimulationOptions& options = {});

struct ScenarioPair {
    ScenarioResult base;
    ScenarioResult cap;
};

// Baseline at hbar_base with multipliers 1; policy run at hbar_cap with group
// S wedge scaled by (1 - relief). Both start from the same initial state.
ScenarioPair run_pair(const EconomyParams& params, int horizon, double hbar_base, double hbar_cap,
                      double relief, const SimulationOptions& cap_options = {});

}  // namespace hourscap
