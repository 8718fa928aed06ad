#include "hourscap/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "hourscap/choice.hpp"
#include "hourscap/error.hpp"
#include "hourscap/parallel.hpp"

namespace hourscap {

namespace {

constexpr double kShareTolerance = 1e-6;
constexpr int kBisectionIterations = 200;

struct MetricName {
    HeadlineMetric metric;
    std::string_view name;
};

constexpr std::array kMetricNames{
    MetricName{HeadlineMetric::a_req_pct, "a_req_pct"},
    MetricName{HeadlineMetric::dY_pct, "dY_pct"},
    MetricName{HeadlineMetric::dC_pct, "dC_pct"},
    MetricName{HeadlineMetric::d_informality_pp, "d_informality_pp"},
    MetricName{HeadlineMetric::d_gdp_per_hour_pct, "d_gdp_per_hour_pct"},
    MetricName{HeadlineMetric::a_req_S_pct, "a_req_S_pct"},
    MetricName{HeadlineMetric::a_req_L_pct, "a_req_L_pct"},
    MetricName{HeadlineMetric::dY_S_pct, "dY_S_pct"},
    MetricName{HeadlineMetric::dY_L_pct, "dY_L_pct"},
    MetricName{HeadlineMetric::d_informality_S_pp, "d_informality_S_pp"},
    MetricName{HeadlineMetric::d_informality_L_pp, "d_informality_L_pp"},
    MetricName{HeadlineMetric::fatigue_pct, "fatigue_pct"},
    MetricName{HeadlineMetric::other_pct, "other_pct"},
};

struct ParamInfo {
    TunedParam param;
    std::string_view name;
    double lo;
    double hi;
    double floor;  // scale used for steps when the value is near zero
};

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::array kParamInfo{
    ParamInfo{TunedParam::kappa, "fatigue.kappa", 0.0, 0.05, 1e-4},
    ParamInfo{TunedParam::eta_informal, "eta_I", 1e-3, 0.999, 0.01},
    ParamInfo{TunedParam::sigma_sub, "sigma_sub", 0.05, 20.0, 0.05},
    ParamInfo{TunedParam::omega, "omega", 1e-3, 0.999, 0.01},
    ParamInfo{TunedParam::informal_convex_S, "groups.S.informal_convex", 0.0, kInf, 0.01},
    ParamInfo{TunedParam::informal_convex_L, "groups.L.informal_convex", 0.0, kInf, 0.01},
    ParamInfo{TunedParam::adjustment_gamma_S, "groups.S.adjustment_gamma", 0.0, kInf, 0.1},
    ParamInfo{TunedParam::adjustment_gamma_L, "groups.L.adjustment_gamma", 0.0, kInf, 0.1},
    ParamInfo{TunedParam::lambda_dw, "lambda_dw", 0.0, 1.0, 0.01},
};

const ParamInfo& info(TunedParam p) {
    for (const auto& i : kParamInfo) {
        if (i.param == p) return i;
    }
    throw std::logic_error("unknown tuned parameter");
}

double& slot(EconomyParams& e, TunedParam p) {
    switch (p) {
        case TunedParam::kappa: return e.fatigue.kappa;
        case TunedParam::eta_informal: return e.eta_informal;
        case TunedParam::sigma_sub: return e.sigma_sub;
        case TunedParam::omega: return e.omega;
        case TunedParam::informal_convex_S: return e.group(Group::S).informal_convex;
        case TunedParam::informal_convex_L: return e.group(Group::L).informal_convex;
        case TunedParam::adjustment_gamma_S: return e.group(Group::S).adjustment_gamma;
        case TunedParam::adjustment_gamma_L: return e.group(Group::L).adjustment_gamma;
        case TunedParam::lambda_dw: return e.lambda_dw;
    }
    throw std::logic_error("unknown tuned parameter");
}

double extract(HeadlineMetric m, const MetricsReport& r) {
    switch (m) {
        case HeadlineMetric::a_req_pct: return r.a_req_terminal_pct;
        case HeadlineMetric::dY_pct: return r.terminal.dY_pct;
        case HeadlineMetric::dC_pct: return r.terminal.dC_pct;
        case HeadlineMetric::d_informality_pp: return r.terminal.d_informality_pp;
        case HeadlineMetric::d_gdp_per_hour_pct: return r.terminal.d_gdp_per_hour_pct;
        case HeadlineMetric::a_req_S_pct: return r.group(Group::S).a_req_pct;
        case HeadlineMetric::a_req_L_pct: return r.group(Group::L).a_req_pct;
        case HeadlineMetric::dY_S_pct: return r.group(Group::S).dY_pct;
        case HeadlineMetric::dY_L_pct: return r.group(Group::L).dY_pct;
        case HeadlineMetric::d_informality_S_pp: return r.group(Group::S).d_informality_pp;
        case HeadlineMetric::d_informality_L_pp: return r.group(Group::L).d_informality_pp;
        case HeadlineMetric::fatigue_pct: return r.decomposition.fatigue_pct;
        case HeadlineMetric::other_pct: return r.decomposition.other_pct;
    }
    return 0.0;
}

bool has_weight(const CalibrationTargets& t) {
    return std::any_of(t.headline.begin(), t.headline.end(), [](const auto& h) { return h.weight > 0.0; });
}

}  // namespace

std::string_view headline_metric_name(HeadlineMetric m) noexcept {
    for (const auto& n : kMetricNames) {
        if (n.metric == m) return n.name;
    }
    return "unknown";
}

std::optional<HeadlineMetric> parse_headline_metric(std::string_view name) noexcept {
    for (const auto& n : kMetricNames) {
        if (n.name == name) return n.metric;
    }
    return std::nullopt;
}

std::string_view tuned_param_name(TunedParam p) noexcept {
    for (const auto& i : kParamInfo) {
        if (i.param == p) return i.name;
    }
    return "unknown";
}

std::optional<TunedParam> parse_tuned_param(std::string_view name) noexcept {
    for (const auto& i : kParamInfo) {
        if (i.name == name) return i.param;
    }
    return std::nullopt;
}

std::vector<TunedParam> default_tuned_params() {
    std::vector<TunedParam> v;
    for (const auto& i : kParamInfo) v.push_back(i.param);
    return v;
}

double baseline_informality(const EconomyParams& params, Group g, double tau, double hbar_base) {
    EconomyParams p = params;
    p.group(g).wedge = tau;
    const double formal = steady_formal(p, g, hbar_base, tau);
    return (p.group(g).workforce - formal) / p.group(g).workforce;
}

double default_tau_max(const EconomyParams& params, Group g, double hbar_base) {
    ChoiceProblem problem;
    problem.economy = params;
    problem.group = g;
    problem.hbar = hbar_base;
    const double n = params.group(g).workforce;
    problem.formal_prev = 0.5 * n;
    return 10.0 * formal_marginal_product(problem, 0.5 * n);
}

EconomyParams calibrate_wedges(const EconomyParams& params_template, const CalibrationTargets& targets,
                               const CalibrationSettings& settings) {
    EconomyParams out = params_template;
    const double hbar = settings.pair.hbar_base;
    for (Group g : kGroups) {
        const double target = targets.informality_share[index(g)];
        const std::string name(group_name(g));
        if (!(target > 0.0 && target < 1.0)) {
            throw ValidationError("targets.informality_share." + name, "must lie in (0, 1)");
        }
        const double tau_max =
            settings.tau_max ? (*settings.tau_max)[index(g)] : default_tau_max(params_template, g, hbar);
        auto share = [&](double tau) { return baseline_informality(params_template, g, tau, hbar); };

        const double lo_share = share(0.0);
        if (std::abs(lo_share - target) <= kShareTolerance) {
            out.group(g).wedge = 0.0;
            continue;
        }
        const double hi_share = share(tau_max);
        if (target < lo_share || target > hi_share + kShareTolerance) {
            std::ostringstream os;
            os.precision(10);
            os << "informality target " << target << " for group " << name << " unreachable: shares in ["
               << lo_share << ", " << hi_share << "] for wedge in [0, " << tau_max << "]";
            throw InfeasibleTargetError(os.str(), lo_share, hi_share);
        }
        double a = 0.0;
        double b = tau_max;
        for (int it = 0; it < kBisectionIterations; ++it) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            (share(mid) < target ? a : b) = mid;
        }
        const double tau = 0.5 * (a + b);
        const double achieved = share(tau);
        if (std::abs(achieved - target) > kShareTolerance) {
            std::ostringstream os;
            os.precision(10);
            os << "informality share for group " << name << " jumps across target " << target
               << " near wedge " << tau << " (achieved " << achieved << ")";
            throw InfeasibleTargetError(os.str(), lo_share, hi_share);
        }
        out.group(g).wedge = tau;
    }
    return out;
}

std::string residual_key(const HeadlineTarget& target, double default_cap) {
    std::string key(headline_metric_name(target.metric));
    if (target.hbar_cap && *target.hbar_cap != default_cap) {
        std::ostringstream os;
        os << key << '@' << *target.hbar_cap;
        key = os.str();
    }
    return key;
}

std::map<std::string, double> evaluate_headline(const EconomyParams& params, const CalibrationTargets& targets,
                                                const CalibrationSettings& settings) {
    std::set<double> caps;
    for (const auto& t : targets.headline) caps.insert(t.hbar_cap.value_or(settings.pair.hbar_cap));
    std::map<double, MetricsReport> reports;
    for (double cap : caps) {
        PairSetup setup = settings.pair;
        setup.hbar_cap = cap;
        setup.relief = 0.0;
        reports.emplace(cap, run_and_measure(params, setup).report);
    }
    std::map<std::string, double> achieved;
    for (const auto& t : targets.headline) {
        const double cap = t.hbar_cap.value_or(settings.pair.hbar_cap);
        achieved[residual_key(t, settings.pair.hbar_cap)] = extract(t.metric, reports.at(cap));
    }
    return achieved;
}

CalibrationReport tune_reference(const EconomyParams& params, const CalibrationTargets& targets,
                                 const CalibrationSettings& settings) {
    CalibrationReport report;
    // an infeasible informality target at the starting point is an error, not a bad candidate
    report.params = calibrate_wedges(params, targets, settings);
    if (!has_weight(targets)) {
        report.converged = true;
        return report;
    }

    struct Evaluation {
        double objective = kInf;
        EconomyParams params;
        std::map<std::string, double> residuals;
    };
    auto evaluate = [&](const EconomyParams& candidate) {
        Evaluation e;
        try {
            e.params = calibrate_wedges(candidate, targets, settings);
            const auto achieved = evaluate_headline(e.params, targets, settings);
            double obj = 0.0;
            for (const auto& t : targets.headline) {
                const std::string key = residual_key(t, settings.pair.hbar_cap);
                const double r = achieved.at(key) - t.value;
                e.residuals[key] = r;
                obj += t.weight * r * r;
            }
            e.objective = std::isfinite(obj) ? obj : kInf;
        } catch (const std::exception&) {
            e.objective = kInf;
        }
        return e;
    };

    const auto& tuned = settings.tuned;
    std::vector<double> step(tuned.size());
    EconomyParams current = params;
    for (std::size_t i = 0; i < tuned.size(); ++i) {
        const auto& pi = info(tuned[i]);
        step[i] = settings.initial_step * std::max(std::abs(slot(current, tuned[i])), pi.floor);
    }

    Evaluation best = evaluate(current);
    int iter = 0;
    bool converged = false;
    for (; iter < settings.max_iterations; ++iter) {
        bool small = true;
        for (std::size_t i = 0; i < tuned.size(); ++i) {
            const auto& pi = info(tuned[i]);
            if (step[i] > settings.min_step * std::max(std::abs(slot(current, tuned[i])), pi.floor)) small = false;
        }
        if (small) {
            converged = true;
            break;
        }

        std::vector<EconomyParams> candidates;
        for (std::size_t i = 0; i < tuned.size(); ++i) {
            const auto& pi = info(tuned[i]);
            for (double sign : {-1.0, 1.0}) {
                EconomyParams c = current;
                double& v = slot(c, tuned[i]);
                const double moved = std::clamp(v + sign * step[i], pi.lo, pi.hi);
                if (moved == v) continue;
                v = moved;
                candidates.push_back(std::move(c));
            }
        }
        std::vector<Evaluation> evals(candidates.size());
        parallel_for(candidates.size(), settings.threads,
                     [&](std::size_t k) { evals[k] = evaluate(candidates[k]); });

        std::size_t pick = evals.size();
        for (std::size_t k = 0; k < evals.size(); ++k) {
            if (evals[k].objective < best.objective && (pick == evals.size() || evals[k].objective < evals[pick].objective)) {
                pick = k;
            }
        }
        if (pick < evals.size()) {
            current = candidates[pick];
            best = std::move(evals[pick]);
        } else {
            for (double& s : step) s *= 0.5;
        }
    }

    if (std::isfinite(best.objective)) {
        report.params = best.params;
        report.residuals = best.residuals;
    }
    for (Group g : kGroups) {
        const double share = baseline_informality(report.params, g, report.params.group(g).wedge,
                                                  settings.pair.hbar_base);
        report.residuals["informality_share." + std::string(group_name(g))] =
            share - targets.informality_share[index(g)];
    }
    report.objective = best.objective;
    report.iterations = iter;
    report.converged = converged && std::isfinite(best.objective);
    return report;
}

}  // namespace hourscap
