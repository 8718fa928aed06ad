#include "hourscap/choice.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "hourscap/error.hpp"

namespace hourscap {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2
constexpr int kGoldenIterations = 200;
constexpr int kPolishIterations = 200;

// Per-problem quantities that do not depend on the choice variable.
struct PayoffModel {
    const ChoiceProblem& problem;
    const GroupParams& group;
    double hours_index;
    double workforce;

    explicit PayoffModel(const ChoiceProblem& p)
        : problem(p),
          group(p.params()),
          hours_index(formal_hours_index(group.mixture, p.hbar, p.economy.fatigue, p.efficiency_hbar)),
          workforce(group.workforce) {}

    double operator()(double formal) const {
        const auto& econ = problem.economy;
        const double informal = workforce - formal;
        const double labor = ces_aggregate(effective_formal_labor(formal, hours_index),
                                           effective_informal_labor(informal, econ), econ.omega, econ.sigma_sub);
        const double output = production(econ.tfp, group.capital, labor, econ.alpha);
        return output - problem.tau_effective * formal -
               adjustment_cost(formal, problem.formal_prev, group.adjustment_gamma) -
               informal_cost(informal, group.informal_linear, group.informal_convex);
    }

    double formal_product(double formal) const {
        const auto& econ = problem.economy;
        const double lf = effective_formal_labor(formal, hours_index);
        const double li = effective_informal_labor(workforce - formal, econ);
        const double labor = ces_aggregate(lf, li, econ.omega, econ.sigma_sub);
        const double output = production(econ.tfp, group.capital, labor, econ.alpha);
        return (1.0 - econ.alpha) * output / labor * ces_gradient(lf, li, econ.omega, econ.sigma_sub).d_formal *
               hours_index;
    }

    double marginal(double formal) const {
        const auto& econ = problem.economy;
        const double informal = workforce - formal;
        const double per_informal = effective_informal_labor(1.0, econ);
        const double lf = effective_formal_labor(formal, hours_index);
        const double li = effective_informal_labor(informal, econ);
        const double labor = ces_aggregate(lf, li, econ.omega, econ.sigma_sub);
        const double output = production(econ.tfp, group.capital, labor, econ.alpha);
        const auto grad = ces_gradient(lf, li, econ.omega, econ.sigma_sub);
        const double d_output =
            (1.0 - econ.alpha) * output / labor * (grad.d_formal * hours_index - grad.d_informal * per_informal);
        return d_output - problem.tau_effective - group.adjustment_gamma * (formal - problem.formal_prev) +
               group.informal_linear + group.informal_convex * informal;
    }
};

// True when `candidate` should replace `incumbent`: strictly better beyond
// the tie band, or tied and at a larger N_F.
bool prefer(double cand_payoff, double cand_x, double inc_payoff, double inc_x) {
    const double band = solver_settings::kTieTolerance * (1.0 + std::abs(inc_payoff));
    if (cand_payoff > inc_payoff + band) return true;
    if (cand_payoff < inc_payoff - band) return false;
    return cand_x > inc_x;
}

[[noreturn]] void throw_non_finite(const ChoiceProblem& p, double x) {
    std::ostringstream os;
    os.precision(17);
    os << "non-finite payoff for group " << group_name(p.group) << " at N_F=" << x << " (hbar=" << p.hbar
       << ", tau_effective=" << p.tau_effective << ", N_F_prev=" << p.formal_prev
       << ", sigma_sub=" << p.economy.sigma_sub << ", omega=" << p.economy.omega
       << ", capital=" << p.params().capital << ", workforce=" << p.params().workforce << ")";
    throw SolverError(os.str());
}

}  // namespace

double group_payoff(const ChoiceProblem& problem, double formal) {
    const double n = problem.params().workforce;
    if (!std::isfinite(formal) || formal < 0.0 || formal > n) {
        throw DomainError("group_payoff: N_F must lie in [0, N]");
    }
    return PayoffModel(problem)(formal);
}

double marginal_payoff(const ChoiceProblem& problem, double formal) {
    const double n = problem.params().workforce;
    if (!std::isfinite(formal) || formal < 0.0 || formal > n) {
        throw DomainError("marginal_payoff: N_F must lie in [0, N]");
    }
    return PayoffModel(problem).marginal(formal);
}

double formal_marginal_product(const ChoiceProblem& problem, double formal) {
    const double n = problem.params().workforce;
    if (!std::isfinite(formal) || formal <= 0.0 || formal > n) {
        throw DomainError("formal_marginal_product: N_F must lie in (0, N]");
    }
    return PayoffModel(problem).formal_product(formal);
}

ChoiceSolution solve_group(const ChoiceProblem& problem) {
    const double n = problem.params().workforce;
    if (n <= 0.0) return {0.0, 0.0, Boundary::both};

    const PayoffModel payoff(problem);
    constexpr int kIntervals = solver_settings::kScanIntervals;

    std::array<double, kIntervals + 1> grid_x{};
    std::array<double, kIntervals + 1> grid_v{};
    int best = 0;
    for (int i = 0; i <= kIntervals; ++i) {
        grid_x[i] = i == kIntervals ? n : n * (static_cast<double>(i) / kIntervals);
        grid_v[i] = payoff(grid_x[i]);
        if (!std::isfinite(grid_v[i])) throw_non_finite(problem, grid_x[i]);
        if (i > 0 && prefer(grid_v[i], grid_x[i], grid_v[best], grid_x[best])) best = i;
    }

    const double lo = grid_x[best > 0 ? best - 1 : 0];
    const double hi = grid_x[best < kIntervals ? best + 1 : kIntervals];

    // Golden-section search on the bracket around the best scan point.
    double a = lo;
    double b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = payoff(c);
    double fd = payoff(d);
    for (int it = 0; it < kGoldenIterations && (b - a) > 1e-13 * n; ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = payoff(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = payoff(d);
        }
    }
    double interior_x = 0.5 * (a + b);

    // Near a smooth maximum the payoff is flat to rounding over a band of
    // width ~sqrt(eps); the sign of the marginal payoff is not. Bisect on it
    // when it brackets a root.
    const double p_lo = lo > 0.0 ? lo : a;
    const double p_hi = hi < n ? hi : b;
    if (p_lo > 0.0 && p_hi < n && p_lo < p_hi) {
        double m_lo = payoff.marginal(p_lo);
        double m_hi = payoff.marginal(p_hi);
        if (std::isfinite(m_lo) && std::isfinite(m_hi) && m_lo > 0.0 && m_hi < 0.0) {
            double x_lo = p_lo;
            double x_hi = p_hi;
            for (int it = 0; it < kPolishIterations; ++it) {
                const double mid = 0.5 * (x_lo + x_hi);
                if (mid <= x_lo || mid >= x_hi) break;
                const double m = payoff.marginal(mid);
                if (!std::isfinite(m)) break;
                (m > 0.0 ? x_lo : x_hi) = mid;
            }
            interior_x = 0.5 * (x_lo + x_hi);
        }
    }

    double best_x = interior_x;
    double best_v = payoff(interior_x);
    if (!std::isfinite(best_v)) throw_non_finite(problem, interior_x);
    const std::array<int, 3> challengers{best, 0, kIntervals};
    for (int i : challengers) {
        if (prefer(grid_v[i], grid_x[i], best_v, best_x)) {
            best_x = grid_x[i];
            best_v = grid_v[i];
        }
    }

    Boundary where = Boundary::interior;
    if (best_x <= 0.0) where = Boundary::lower;
    else if (best_x >= n) where = Boundary::upper;
    return {best_x, best_v, where};
}

}  // namespace hourscap
