#pragma once

// Closed-form building blocks of the short-run hours-cap economy: per-hour
// efficiency, capped contractual hours, effective labor, CES aggregation of
// formal and informal labor, Cobb-Douglas output, and the real-resource
// cost terms that separate output from consumption.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace hourscap {

enum class Group : std::size_t { S = 0, L = 1 };

inline constexpr std::array<Group, 2> kGroups{Group::S, Group::L};

constexpr std::size_t index(Group g) noexcept { return static_cast<std::size_t>(g); }

constexpr std::string_view group_name(Group g) noexcept { return g == Group::S ? "S" : "L"; }

std::optional<Group> parse_group(std::string_view name) noexcept;

struct FatigueParams {
    double kappa = 0.0;   // 1 / hours^2
    double h_star = 40.0; // hours per week at peak efficiency
};

struct HoursPoint {
    double hours;
    double weight;

    friend bool operator==(const HoursPoint&, const HoursPoint&) = default;
};

// Discrete distribution of contractual weekly hours inside a group's formal
// block. Always canonical: hours strictly increasing, weights on the simplex.
class HoursMixture {
public:
    HoursMixture() = default;

    // Sorts by hours and validates. Throws ValidationError (path "mixture").
    static HoursMixture make(std::vector<HoursPoint> points);

    std::span<const HoursPoint> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    double max_hours() const noexcept { return points_.empty() ? 0.0 : points_.back().hours; }

    friend bool operator==(const HoursMixture&, const HoursMixture&) = default;

private:
    explicit HoursMixture(std::vector<HoursPoint> points) : points_(std::move(points)) {}
    std::vector<HoursPoint> points_;
};

struct GroupParams {
    double capital = 1.0;          // K_g
    double workforce = 1.0;        // N_g
    double wedge = 0.0;            // tau_g, output units per formal worker
    double adjustment_gamma = 0.0; // quadratic adjustment cost coefficient
    double informal_linear = 0.0;  // F_I,g
    double informal_convex = 0.0;  // pi_m,g
    HoursMixture mixture;
};

struct EconomyParams {
    double alpha = 0.35;
    double tfp = 1.0;
    double omega = 0.5;
    double sigma_sub = 1.0;
    double eta_informal = 0.5;
    double hours_informal = 44.0;
    double lambda_dw = 0.0;
    FatigueParams fatigue;
    std::array<GroupParams, 2> groups;

    // (sigma_sub - 1) / sigma_sub; derived on demand, never stored.
    double rho() const noexcept { return (sigma_sub - 1.0) / sigma_sub; }

    const GroupParams& group(Group g) const noexcept { return groups[index(g)]; }
    GroupParams& group(Group g) noexcept { return groups[index(g)]; }
};

// Throws ValidationError naming the first violated field, using paths rooted
// at "economy" (e.g. "economy.groups.S.mixture").
void validate(const EconomyParams& params);

// exp(-kappa (h - h*)^2). Throws DomainError for non-finite or non-positive h.
double efficiency(double hours, const FatigueParams& fatigue);

double capped_hours(double hours, double hbar);

// Efficiency-weighted average formal hours: sum_h theta_h * min(h, hbar) *
// e(min(h, efficiency_hbar)). `efficiency_hbar` defaults to hbar; passing a
// different cap freezes the efficiency term at that cap's hours.
double formal_hours_index(const HoursMixture& mixture, double hbar, const FatigueParams& fatigue,
                          std::optional<double> efficiency_hbar = std::nullopt);

// Paid (not efficiency-weighted) average formal hours under the cap.
double paid_formal_hours(const HoursMixture& mixture, double hbar);

double effective_formal_labor(double formal_workers, double hours_index);

double effective_informal_labor(double informal_workers, const EconomyParams& params);

// [omega L_F^rho + (1 - omega) L_I^rho]^(1/rho), rho = (sigma - 1)/sigma,
// with the Cobb-Douglas limit at sigma = 1 and limit values at zero inputs.
double ces_aggregate(double formal_labor, double informal_labor, double omega, double sigma_sub);

// Partial derivatives of ces_aggregate with respect to each input. Only
// meaningful for strictly positive inputs.
struct CesGradient {
    double d_formal;
    double d_informal;
};
CesGradient ces_gradient(double formal_labor, double informal_labor, double omega, double sigma_sub);

double production(double tfp, double capital, double labor, double alpha);

double adjustment_cost(double formal_workers, double formal_prev, double gamma);

// F_I * N_I + (pi_m / 2) * N_I^2.
double informal_cost(double informal_workers, double linear, double convex);

double deadweight(double wedge, double formal_workers, double lambda_dw);

struct ResourceUse {
    double output = 0.0;
    double deadweight = 0.0;
    double adjustment = 0.0;
    double informal_cost = 0.0;
};

// Sum over groups of Y - DW - Adj - Phi_I. May be negative; callers flag it.
double consumption(std::span<const ResourceUse> groups);

}  // namespace hourscap
