#include "hourscap/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "hourscap/error.hpp"
#include "hourscap/parallel.hpp"

namespace hourscap {

namespace {

std::vector<double> linspace(double from, double step, int count) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(count));
    // Integer-indexed to keep grid values exact multiples of the step.
    for (int i = 0; i < count; ++i) v.push_back(from + step * i);
    return v;
}

void check_grid(const std::vector<double>& grid, const std::string& path) {
    if (grid.empty()) throw ValidationError(path, "grid must be non-empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) throw ValidationError(path + "[" + std::to_string(i) + "]", "must be finite");
    }
    if (grid.size() < 2) return;
    const bool up = grid[1] > grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const bool ok = up ? grid[i] > grid[i - 1] : grid[i] < grid[i - 1];
        if (!ok) throw ValidationError(path, "grid must be strictly monotone");
    }
}

SweepResult evaluate_grid(const EconomyParams& params, const SweepSpec& spec, unsigned threads) {
    validate(spec, params);
    struct Coord {
        double hbar, sigma, relief;
    };
    std::vector<Coord> coords;
    if (spec.kind == SweepKind::hours_curve) {
        for (double h : spec.hours) coords.push_back({h, params.sigma_sub, 0.0});
    } else {
        for (double s : spec.sigma_sub) {
            for (double r : spec.relief) coords.push_back({spec.hbar_cap, s, r});
        }
    }

    SweepResult result;
    result.spec = spec;
    result.cells.resize(coords.size());
    parallel_for(coords.size(), threads, [&](std::size_t i) {
        result.cells[i] = evaluate_cell(params, spec, coords[i].hbar, coords[i].sigma, coords[i].relief);
    });

    if (spec.kind == SweepKind::frontier) {
        const std::size_t width = spec.relief.size();
        for (std::size_t s = 0; s < spec.sigma_sub.size(); ++s) {
            const std::vector<SweepCell> curve(result.cells.begin() + static_cast<std::ptrdiff_t>(s * width),
                                               result.cells.begin() + static_cast<std::ptrdiff_t>((s + 1) * width));
            result.crossings.push_back({spec.sigma_sub[s], zero_crossing(curve)});
        }
    }
    return result;
}

}  // namespace

std::string_view sweep_kind_name(SweepKind kind) noexcept {
    switch (kind) {
        case SweepKind::hours_curve: return "hours_curve";
        case SweepKind::heatmap: return "heatmap";
        case SweepKind::frontier: return "frontier";
    }
    return "unknown";
}

std::optional<SweepKind> parse_sweep_kind(std::string_view name) noexcept {
    if (name == "hours_curve") return SweepKind::hours_curve;
    if (name == "heatmap") return SweepKind::heatmap;
    if (name == "frontier") return SweepKind::frontier;
    return std::nullopt;
}

SweepSpec SweepSpec::defaults(SweepKind kind) {
    SweepSpec s;
    s.kind = kind;
    switch (kind) {
        case SweepKind::hours_curve: s.hours = linspace(30.0, 1.0, 15); break;
        case SweepKind::heatmap:
            s.sigma_sub = linspace(0.75, 0.25, 9);
            s.relief = linspace(0.0, 0.1, 9);
            break;
        case SweepKind::frontier:
            s.sigma_sub = {0.75, 1.0, 1.5, 2.0, 2.5};
            s.relief = linspace(0.0, 0.1, 9);
            break;
    }
    return s;
}

void validate(const SweepSpec& spec, const EconomyParams& params) {
    if (spec.horizon < 1) throw ValidationError("sweep.horizon", "must be a positive integer");
    if (!(spec.hbar_base > 0.0)) throw ValidationError("sweep.hbar_base", "must be positive");
    if (spec.kind == SweepKind::hours_curve) {
        check_grid(spec.hours, "sweep.hours");
        double max_hours = 0.0;
        for (const auto& g : params.groups) max_hours = std::max(max_hours, g.mixture.max_hours());
        for (std::size_t i = 0; i < spec.hours.size(); ++i) {
            if (spec.hours[i] <= 0.0 || spec.hours[i] > max_hours) {
                throw ValidationError("sweep.hours[" + std::to_string(i) + "]",
                                      "must lie in (0, max mixture hour]");
            }
        }
        return;
    }
    if (!(spec.hbar_cap > 0.0)) throw ValidationError("sweep.hbar_cap", "must be positive");
    check_grid(spec.sigma_sub, "sweep.sigma_sub");
    check_grid(spec.relief, "sweep.relief");
    for (std::size_t i = 0; i < spec.sigma_sub.size(); ++i) {
        if (spec.sigma_sub[i] <= 0.0) {
            throw ValidationError("sweep.sigma_sub[" + std::to_string(i) + "]", "must be positive");
        }
    }
    for (std::size_t i = 0; i < spec.relief.size(); ++i) {
        if (spec.relief[i] < 0.0 || spec.relief[i] >= 1.0) {
            throw ValidationError("sweep.relief[" + std::to_string(i) + "]", "must lie in [0, 1)");
        }
    }
}

SweepCell evaluate_cell(const EconomyParams& params, const SweepSpec& spec, double hbar, double sigma_sub,
                        double relief) {
    SweepCell cell;
    cell.hbar = hbar;
    cell.sigma_sub = sigma_sub;
    cell.relief = relief;
    EconomyParams cell_params = params;
    cell_params.sigma_sub = sigma_sub;
    try {
        const ScenarioPair pair = run_pair(cell_params, spec.horizon, spec.hbar_base, hbar, relief);
        if (pair.base.any_negative_consumption() || pair.cap.any_negative_consumption()) {
            cell.diagnostic = "negative_consumption";
            return cell;
        }
        const int t = spec.horizon - 1;
        cell.a_req_terminal_pct = to_pct(a_req(pair.base, pair.cap, t));
        const Deltas d = deltas(pair.base, pair.cap, t);
        cell.d_informality_pp = d.d_informality_pp;
        cell.dY_pct = d.dY_pct;
        cell.valid = true;
        if (!pair.base.settled || !pair.cap.settled) cell.diagnostic = "unsettled";
    } catch (const ConvergenceError& e) {
        cell.diagnostic = std::string("no_steady_state: ") + e.what();
    } catch (const SolverError& e) {
        cell.diagnostic = std::string("solver_error: ") + e.what();
    } catch (const MetricError& e) {
        cell.diagnostic = std::string("metric_error: ") + e.what();
    }
    return cell;
}

SweepResult hours_curve(const EconomyParams& params, const SweepSpec& spec, unsigned threads) {
    SweepSpec s = spec;
    s.kind = SweepKind::hours_curve;
    return evaluate_grid(params, s, threads);
}

SweepResult heatmap(const EconomyParams& params, const SweepSpec& spec, unsigned threads) {
    SweepSpec s = spec;
    s.kind = SweepKind::heatmap;
    return evaluate_grid(params, s, threads);
}

SweepResult frontier(const EconomyParams& params, const SweepSpec& spec, unsigned threads) {
    SweepSpec s = spec;
    s.kind = SweepKind::frontier;
    return evaluate_grid(params, s, threads);
}

SweepResult run_sweep(const EconomyParams& params, const SweepSpec& spec, unsigned threads) {
    return evaluate_grid(params, spec, threads);
}

std::optional<double> zero_crossing(const std::vector<SweepCell>& curve) {
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const auto& a = curve[i - 1];
        const auto& b = curve[i];
        if (!a.valid || !b.valid) continue;
        if (a.d_informality_pp > 0.0 && b.d_informality_pp <= 0.0) {
            const double w = a.d_informality_pp / (a.d_informality_pp - b.d_informality_pp);
            return a.relief + w * (b.relief - a.relief);
        }
    }
    return std::nullopt;
}

}  // namespace hourscap
