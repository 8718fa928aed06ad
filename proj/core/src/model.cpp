#include "hourscap/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hourscap/error.hpp"

namespace hourscap {

namespace {

void require(bool ok, const std::string& path, const std::string& message) {
    if (!ok) throw ValidationError(path, message);
}

bool finite(double x) { return std::isfinite(x); }

// |rho| below this is treated as the Cobb-Douglas limit. The log-space CES
// evaluation below stays accurate well under this threshold.
constexpr double kCobbDouglasRho = 1e-14;

}  // namespace

std::optional<Group> parse_group(std::string_view name) noexcept {
    if (name == "S") return Group::S;
    if (name == "L") return Group::L;
    return std::nullopt;
}

HoursMixture HoursMixture::make(std::vector<HoursPoint> points) {
    require(!points.empty(), "mixture", "must contain at least one hours type");
    std::sort(points.begin(), points.end(),
              [](const HoursPoint& a, const HoursPoint& b) { return a.hours < b.hours; });
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        const std::string at = "mixture[" + std::to_string(i) + "]";
        require(finite(p.hours) && p.hours > 0.0, at + ".hours", "must be positive and finite");
        require(finite(p.weight) && p.weight >= 0.0 && p.weight <= 1.0, at + ".weight",
                "must lie in [0, 1]");
        if (i > 0) require(p.hours > points[i - 1].hours, at + ".hours", "hours values must be distinct");
        total += p.weight;
    }
    require(std::abs(total - 1.0) <= 1e-12, "mixture",
            "weights must sum to 1 (got " + std::to_string(total) + ")");
    return HoursMixture(std::move(points));
}

void validate(const EconomyParams& p) {
    auto open_unit = [](double x) { return finite(x) && x > 0.0 && x < 1.0; };
    auto positive = [](double x) { return finite(x) && x > 0.0; };
    auto nonneg = [](double x) { return finite(x) && x >= 0.0; };

    require(open_unit(p.alpha), "economy.alpha", "must lie in (0, 1)");
    require(positive(p.tfp), "economy.tfp", "must be positive");
    require(open_unit(p.omega), "economy.omega", "must lie in (0, 1)");
    require(positive(p.sigma_sub), "economy.sigma_sub", "must be positive");
    require(open_unit(p.eta_informal), "economy.eta_I", "must lie in (0, 1)");
    require(positive(p.hours_informal), "economy.h_I", "must be positive");
    require(finite(p.lambda_dw) && p.lambda_dw >= 0.0 && p.lambda_dw <= 1.0, "economy.lambda_dw",
            "must lie in [0, 1]");
    require(nonneg(p.fatigue.kappa), "economy.fatigue.kappa", "must be non-negative");
    require(positive(p.fatigue.h_star), "economy.fatigue.h_star", "must be positive");

    for (Group g : kGroups) {
        const auto& gp = p.group(g);
        const std::string base = "economy.groups." + std::string(group_name(g));
        require(positive(gp.capital), base + ".capital", "must be positive");
        require(positive(gp.workforce), base + ".workforce", "must be positive");
        require(nonneg(gp.wedge), base + ".wedge", "must be non-negative");
        require(nonneg(gp.adjustment_gamma), base + ".adjustment_gamma", "must be non-negative");
        require(nonneg(gp.informal_linear), base + ".informal_linear", "must be non-negative");
        require(nonneg(gp.informal_convex), base + ".informal_convex", "must be non-negative");
        require(gp.mixture.size() > 0, base + ".mixture", "must contain at least one hours type");
    }
}

double efficiency(double hours, const FatigueParams& fatigue) {
    if (!finite(hours) || hours <= 0.0) throw DomainError("efficiency: hours must be positive and finite");
    const double gap = hours - fatigue.h_star;
    return std::exp(-fatigue.kappa * gap * gap);
}

double capped_hours(double hours, double hbar) { return std::min(hours, hbar); }

double formal_hours_index(const HoursMixture& mixture, double hbar, const FatigueParams& fatigue,
                          std::optional<double> efficiency_hbar) {
    const double eff_cap = efficiency_hbar.value_or(hbar);
    double sum = 0.0;
    for (const auto& [h, theta] : mixture.points()) {
        sum += theta * capped_hours(h, hbar) * efficiency(capped_hours(h, eff_cap), fatigue);
    }
    return sum;
}

double paid_formal_hours(const HoursMixture& mixture, double hbar) {
    double sum = 0.0;
    for (const auto& [h, theta] : mixture.points()) sum += theta * capped_hours(h, hbar);
    return sum;
}

double effective_formal_labor(double formal_workers, double hours_index) {
    if (!(formal_workers >= 0.0) || !finite(formal_workers))
        throw DomainError("effective_formal_labor: workers must be non-negative and finite");
    return formal_workers * hours_index;
}

double effective_informal_labor(double informal_workers, const EconomyParams& params) {
    return params.eta_informal * informal_workers * params.hours_informal *
           efficiency(params.hours_informal, params.fatigue);
}

double ces_aggregate(double lf, double li, double omega, double sigma_sub) {
    if (!(lf >= 0.0) || !(li >= 0.0) || !finite(lf) || !finite(li))
        throw DomainError("ces_aggregate: labor inputs must be non-negative and finite");
    const double rho = (sigma_sub - 1.0) / sigma_sub;
    if (lf <= 0.0 && li <= 0.0) return 0.0;
    if (lf <= 0.0 || li <= 0.0) {
        if (rho <= kCobbDouglasRho) return 0.0;
        const double weight = lf > 0.0 ? omega : 1.0 - omega;
        return std::pow(weight, 1.0 / rho) * (lf > 0.0 ? lf : li);
    }
    const double log_f = std::log(lf);
    const double log_i = std::log(li);
    if (std::abs(rho) <= kCobbDouglasRho) return std::exp(omega * log_f + (1.0 - omega) * log_i);

    // Factor out the larger input so the power terms stay in (0, 1] for
    // rho > 0, and evaluate log(sum) near 1 with expm1/log1p.
    const double pivot = std::max(log_f, log_i);
    const double sum_minus_one =
        omega * std::expm1(rho * (log_f - pivot)) + (1.0 - omega) * std::expm1(rho * (log_i - pivot));
    return std::exp(pivot + std::log1p(sum_minus_one) / rho);
}

CesGradient ces_gradient(double lf, double li, double omega, double sigma_sub) {
    const double rho = (sigma_sub - 1.0) / sigma_sub;
    const double total = ces_aggregate(lf, li, omega, sigma_sub);
    if (std::abs(rho) <= kCobbDouglasRho) {
        return {omega * total / lf, (1.0 - omega) * total / li};
    }
    // dL/dL_F = omega (L / L_F)^(1 - rho)
    return {omega * std::pow(total / lf, 1.0 - rho), (1.0 - omega) * std::pow(total / li, 1.0 - rho)};
}

double production(double tfp, double capital, double labor, double alpha) {
    if (labor <= 0.0) return 0.0;
    return tfp * std::pow(capital, alpha) * std::pow(labor, 1.0 - alpha);
}

double adjustment_cost(double formal_workers, double formal_prev, double gamma) {
    const double delta = formal_workers - formal_prev;
    return 0.5 * gamma * delta * delta;
}

double informal_cost(double informal_workers, double linear, double convex) {
    return linear * informal_workers + 0.5 * convex * informal_workers * informal_workers;
}

double deadweight(double wedge, double formal_workers, double lambda_dw) {
    return lambda_dw * wedge * formal_workers;
}

double consumption(std::span<const ResourceUse> groups) {
    double total = 0.0;
    for (const auto& g : groups) total += g.output - g.deadweight - g.adjustment - g.informal_cost;
    return total;
}

}  // namespace hourscap
