#include "hourscap/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "hourscap/choice.hpp"
#include "hourscap/error.hpp"

namespace hourscap {

namespace {

ChoiceProblem make_problem(const EconomyParams& params, Group g, double hbar, double prev, double tau,
                           const SimulationOptions& options) {
    ChoiceProblem problem;
    problem.economy = params;
    problem.group = g;
    problem.hbar = hbar;
    problem.formal_prev = prev;
    problem.tau_effective = tau;
    problem.efficiency_hbar = options.efficiency_hbar;
    return problem;
}

GroupRecord assemble(const EconomyParams& params, Group g, double hbar, double formal, double prev, double tau,
                     const SimulationOptions& options) {
    const auto& gp = params.group(g);
    GroupRecord r;
    r.formal = formal;
    r.informal = gp.workforce - formal;
    r.hours_index = formal_hours_index(gp.mixture, hbar, params.fatigue, options.efficiency_hbar);
    r.formal_labor = effective_formal_labor(r.formal, r.hours_index);
    r.informal_labor = effective_informal_labor(r.informal, params);
    r.labor = ces_aggregate(r.formal_labor, r.informal_labor, params.omega, params.sigma_sub);
    r.output = production(params.tfp, gp.capital, r.labor, params.alpha);
    r.adjustment = adjustment_cost(formal, prev, gp.adjustment_gamma);
    r.deadweight = deadweight(tau, formal, params.lambda_dw);
    r.informal_cost = informal_cost(r.informal, gp.informal_linear, gp.informal_convex);
    r.hours_paid = r.formal * paid_formal_hours(gp.mixture, hbar) + r.informal * params.hours_informal;
    r.tau_effective = tau;
    return r;
}

}  // namespace

PolicyPath PolicyPath::constant(int horizon, double hbar) {
    PolicyPath p;
    p.hbar.assign(static_cast<std::size_t>(std::max(horizon, 0)), hbar);
    for (auto& m : p.wedge_multiplier) m.assign(p.hbar.size(), 1.0);
    return p;
}

PolicyPath PolicyPath::linear_ramp(int horizon, double from, double to) {
    PolicyPath p = constant(horizon, from);
    if (horizon > 1) {
        for (int t = 0; t < horizon; ++t) {
            const double s = static_cast<double>(t) / (horizon - 1);
            p.hbar[static_cast<std::size_t>(t)] = from + s * (to - from);
        }
    } else if (horizon == 1) {
        p.hbar[0] = to;
    }
    return p;
}

PolicyPath& PolicyPath::with_relief(Group g, double relief) {
    for (double& m : wedge_multiplier[index(g)]) m *= (1.0 - relief);
    return *this;
}

void validate(const PolicyPath& policy) {
    if (policy.hbar.empty()) throw ValidationError("policy.horizon", "must be a positive integer");
    for (std::size_t t = 0; t < policy.hbar.size(); ++t) {
        const double h = policy.hbar[t];
        if (!std::isfinite(h) || h <= 0.0) {
            throw ValidationError("policy.hbar[" + std::to_string(t) + "]", "must be positive and finite");
        }
    }
    for (Group g : kGroups) {
        const auto& m = policy.wedge_multiplier[index(g)];
        const std::string base = "policy.wedge_multiplier." + std::string(group_name(g));
        if (m.size() != policy.hbar.size()) {
            throw ValidationError(base, "length must equal the horizon (" + std::to_string(policy.hbar.size()) + ")");
        }
        for (std::size_t t = 0; t < m.size(); ++t) {
            if (!std::isfinite(m[t]) || m[t] < 0.0) {
                throw ValidationError(base + "[" + std::to_string(t) + "]", "must be non-negative and finite");
            }
        }
    }
}

bool ScenarioResult::any_negative_consumption() const noexcept {
    for (const auto& r : records) {
        if (r.negative_consumption) return true;
    }
    return false;
}

double steady_formal(const EconomyParams& params, Group g, double hbar, double tau_effective,
                     const SimulationOptions& options) {
    using namespace simulation_settings;
    const double n = params.group(g).workforce;

    // With adjustment costs switched off the choice does not depend on the
    // inherited state, so this is the fixed point whenever it is interior.
    EconomyParams frictionless = params;
    frictionless.group(g).adjustment_gamma = 0.0;
    double x = solve_group(make_problem(frictionless, g, hbar, 0.0, tau_effective, options)).formal;

    double residual = 0.0;
    for (int it = 0; it < kFixedPointMaxIterations; ++it) {
        const double y = solve_group(make_problem(params, g, hbar, x, tau_effective, options)).formal;
        residual = std::abs(y - x);
        if (residual <= kFixedPointTolerance * n) return x;
        x += kFixedPointDamping * (y - x);
    }
    std::ostringstream os;
    os.precision(17);
    os << "steady state for group " << group_name(g) << " at hbar=" << hbar << " did not converge in "
       << kFixedPointMaxIterations << " iterations (residual " << residual << ")";
    throw ConvergenceError(os.str(), residual);
}

FormalState initial_state(const EconomyParams& params, double hbar0) {
    FormalState state{};
    for (Group g : kGroups) state[index(g)] = steady_formal(params, g, hbar0, params.group(g).wedge);
    return state;
}

ScenarioResult run_scenario(const EconomyParams& params, const PolicyPath& policy, const FormalState& initial,
                            const SimulationOptions& options) {
    ScenarioResult result;
    result.params = params;
    result.policy = policy;
    result.records.reserve(policy.hbar.size());

    FormalState prev = initial;
    double total_workforce = 0.0;
    for (Group g : kGroups) total_workforce += params.group(g).workforce;

    for (int t = 0; t < policy.horizon(); ++t) {
        PeriodRecord rec;
        rec.t = t;
        const double hbar = policy.hbar[static_cast<std::size_t>(t)];
        std::array<ResourceUse, 2> uses{};
        double informal_total = 0.0;
        for (Group g : kGroups) {
            const std::size_t i = index(g);
            const double tau = params.group(g).wedge * policy.multiplier(g, t);
            double formal = 0.0;
            try {
                formal = solve_group(make_problem(params, g, hbar, prev[i], tau, options)).formal;
            } catch (const SolverError& e) {
                throw SolverError("t=" + std::to_string(t) + ", group " + std::string(group_name(g)) + ": " +
                                  e.what());
            }
            rec.groups[i] = assemble(params, g, hbar, formal, prev[i], tau, options);
            const auto& gr = rec.groups[i];
            uses[i] = {gr.output, gr.deadweight, gr.adjustment, gr.informal_cost};
            rec.output += gr.output;
            rec.hours += gr.hours_paid;
            informal_total += gr.informal;
            prev[i] = formal;
        }
        rec.consumption = consumption(uses);
        rec.negative_consumption = rec.consumption < 0.0;
        rec.informality_share = informal_total / total_workforce;
        result.records.push_back(rec);
    }

    const auto& recs = result.records;
    if (recs.size() >= 2) {
        const auto& last = recs[recs.size() - 1];
        const auto& before = recs[recs.size() - 2];
        for (Group g : kGroups) {
            const double gap = std::abs(last.group(g).formal - before.group(g).formal);
            if (gap > simulation_settings::kSettledTolerance * params.group(g).workforce) result.settled = false;
        }
    }
    return result;
}

ScenarioResult run_scenario(const EconomyParams& params, const PolicyPath& policy, double hbar_base,
                            const SimulationOptions& options) {
    return run_scenario(params, policy, initial_state(params, hbar_base), options);
}

ScenarioPair run_pair(const EconomyParams& params, int horizon, double hbar_base, double hbar_cap, double relief,
                      const SimulationOptions& cap_options) {
    const FormalState init = initial_state(params, hbar_base);
    ScenarioPair pair;
    pair.base = run_scenario(params, PolicyPath::constant(horizon, hbar_base), init);
    pair.cap = run_scenario(params, PolicyPath::constant(horizon, hbar_cap).with_relief(Group::S, relief), init,
                            cap_options);
    return pair;
}

}  // namespace hourscap
