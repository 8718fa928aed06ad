#pragma once

#include <optional>

#include "hourscap/model.hpp"

namespace hourscap {

// One group's per-period private problem: pick formal employment in
// [0, N_g] to maximize output net of the full wedge, adjustment cost and the
// real cost of running informal workers.
struct ChoiceProblem {
    EconomyParams economy;
    Group group = Group::S;
    double hbar = 44.0;
    double formal_prev = 0.0;
    double tau_effective = 0.0;
    // When set, efficiency inside the formal hours index is evaluated at
    // min(h, efficiency_hbar) instead of min(h, hbar).
    std::optional<double> efficiency_hbar;

    const GroupParams& params() const noexcept { return economy.group(group); }
};

enum class Boundary { lower, upper, interior, both };

struct ChoiceSolution {
    double formal = 0.0;
    double payoff = 0.0;
    Boundary at_boundary = Boundary::interior;

    friend bool operator==(const ChoiceSolution&, const ChoiceSolution&) = default;
};

// Throws DomainError when formal lies outside [0, N].
double group_payoff(const ChoiceProblem& problem, double formal);

// d payoff / d N_F. Finite only for 0 < formal < N.
double marginal_payoff(const ChoiceProblem& problem, double formal);

// dY_g / dN_F holding N_I fixed: the marginal product of one more formal
// worker.
double formal_marginal_product(const ChoiceProblem& problem, double formal);

// Global maximizer of group_payoff on [0, N]: 1,024-interval uniform scan,
// golden-section refinement on the best bracket, a first-order polish when
// the marginal payoff changes sign inside the bracket, then boundary checks.
// Ties within 1e-12 (1 + |payoff|) go to the larger N_F.
ChoiceSolution solve_group(const ChoiceProblem& problem);

namespace solver_settings {
inline constexpr int kScanIntervals = 1024;
inline constexpr double kTieTolerance = 1e-12;
}  // namespace solver_settings

}  // namespace hourscap
