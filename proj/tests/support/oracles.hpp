#pragma once

#include <algorithm>
#include <cmath>

#include "hourscap/choice.hpp"

namespace hourscap::testing {

struct GridMax {
    double formal = 0.0;
    double payoff = 0.0;
};

// Brute-force maximizer of group_payoff: a uniform grid of `points`
// intervals, then the vertex of the parabola through the best point and its
// neighbours when that vertex improves on it.
inline GridMax grid_oracle(const ChoiceProblem& p, int points = 100000) {
    const double n = p.params().workforce;
    auto x_at = [&](int i) { return i == points ? n : n * static_cast<double>(i) / points; };
    GridMax best{0.0, group_payoff(p, 0.0)};
    int best_i = 0;
    for (int i = 1; i <= points; ++i) {
        const double x = x_at(i);
        const double v = group_payoff(p, x);
        if (v >= best.payoff) {
            best = {x, v};
            best_i = i;
        }
    }
    if (best_i > 0 && best_i < points) {
        const double x0 = x_at(best_i - 1), x1 = x_at(best_i), x2 = x_at(best_i + 1);
        const double f0 = group_payoff(p, x0), f1 = best.payoff, f2 = group_payoff(p, x2);
        const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
        const double a = (x2 * (f1 - f0) + x1 * (f0 - f2) + x0 * (f2 - f1)) / denom;
        const double b = (x2 * x2 * (f0 - f1) + x1 * x1 * (f2 - f0) + x0 * x0 * (f1 - f2)) / denom;
        if (a < 0.0) {
            const double xv = std::clamp(-b / (2 * a), x0, x2);
            const double fv = group_payoff(p, xv);
            if (fv > best.payoff) best = {xv, fv};
        }
    }
    return best;
}

}  // namespace hourscap::testing
