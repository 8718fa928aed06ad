#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hourscap/metrics.hpp"

namespace hourscap {

enum class HeadlineMetric {
    a_req_pct,
    dY_pct,
    dC_pct,
    d_informality_pp,
    d_gdp_per_hour_pct,
    a_req_S_pct,
    a_req_L_pct,
    dY_S_pct,
    dY_L_pct,
    d_informality_S_pp,
    d_informality_L_pp,
    fatigue_pct,
    other_pct,
};

std::string_view headline_metric_name(HeadlineMetric m) noexcept;
std::optional<HeadlineMetric> parse_headline_metric(std::string_view name) noexcept;

struct HeadlineTarget {
    HeadlineMetric metric = HeadlineMetric::a_req_pct;
    double value = 0.0;
    double weight = 1.0;
    // Cap at which the metric is measured; defaults to the settings' cap.
    std::optional<double> hbar_cap;

    friend bool operator==(const HeadlineTarget&, const HeadlineTarget&) = default;
};

struct CalibrationTargets {
    std::array<double, 2> informality_share{0.45, 0.25};
    std::vector<HeadlineTarget> headline;

    friend bool operator==(const CalibrationTargets&, const CalibrationTargets&) = default;
};

// Parameters the fine-tuner may move. Names match the config document paths
// under "economy".
enum class TunedParam {
    kappa,
    eta_informal,
    sigma_sub,
    omega,
    informal_convex_S,
    informal_convex_L,
    adjustment_gamma_S,
    adjustment_gamma_L,
    lambda_dw,
};

std::string_view tuned_param_name(TunedParam p) noexcept;
std::optional<TunedParam> parse_tuned_param(std::string_view name) noexcept;
std::vector<TunedParam> default_tuned_params();

struct CalibrationSettings {
    PairSetup pair;  // horizon, hbar_base, default hbar_cap; relief is ignored
    std::optional<std::array<double, 2>> tau_max;  // default 10x formal marginal product
    std::vector<TunedParam> tuned = default_tuned_params();
    int max_iterations = 60;
    double initial_step = 0.1;  // relative to max(|x|, floor)
    double min_step = 1e-3;     // relative; search stops below this
    unsigned threads = 1;
};

// Baseline steady-state informal share N_I / N of group g when its wedge is tau.
double baseline_informality(const EconomyParams& params, Group g, double tau, double hbar_base);

// Upper end of the wedge bracket for group g: 10x the marginal product of a
// formal worker at the baseline cap, evaluated with half the workforce formal.
double default_tau_max(const EconomyParams& params, Group g, double hbar_base);

// Bisects each group's wedge so the baseline steady state hits its target
// informality share within 1e-6. Returns a new parameter set.
EconomyParams calibrate_wedges(const EconomyParams& params_template, const CalibrationTargets& targets,
                               const CalibrationSettings& settings = {});

struct CalibrationReport {
    EconomyParams params;
    std::map<std::string, double> residuals;  // achieved - target
    double objective = 0.0;                   // weighted squared headline residuals
    int iterations = 0;
    bool converged = false;
};

// Key used in CalibrationReport::residuals, e.g. "a_req_pct" or "a_req_pct@40".
std::string residual_key(const HeadlineTarget& target, double default_cap);

// Evaluates every headline metric of the targets at `params` (wedges as given).
std::map<std::string, double> evaluate_headline(const EconomyParams& params, const CalibrationTargets& targets,
                                                const CalibrationSettings& settings);

// Derivative-free compass search over settings.tuned minimizing the weighted
// squared headline residuals; wedges are re-calibrated at every candidate.
CalibrationReport tune_reference(const EconomyParams& params, const CalibrationTargets& targets,
                                 const CalibrationSettings& settings = {});

}  // namespace hourscap
