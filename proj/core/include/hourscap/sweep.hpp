#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hourscap/metrics.hpp"

namespace hourscap {

enum class SweepKind { hours_curve, heatmap, frontier };

std::string_view sweep_kind_name(SweepKind kind) noexcept;
std::optional<SweepKind> parse_sweep_kind(std::string_view name) noexcept;

struct SweepSpec {
    SweepKind kind = SweepKind::hours_curve;
    std::vector<double> hours;      // hours_curve
    std::vector<double> sigma_sub;  // heatmap, frontier
    std::vector<double> relief;     // heatmap, frontier
    int horizon = simulation_settings::kDefaultHorizon;
    double hbar_base = 44.0;
    double hbar_cap = 36.0;  // heatmap, frontier

    // Default grids: hours 30..44 step 1; sigma_sub 0.75..2.75 step 0.25;
    // relief 0..0.8 step 0.1 (frontier uses five sigma_sub curves).
    static SweepSpec defaults(SweepKind kind);

    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

// Throws ValidationError with paths rooted at "sweep".
void validate(const SweepSpec& spec, const EconomyParams& params);

struct SweepCell {
    double hbar = 0.0;
    double sigma_sub = 0.0;
    double relief = 0.0;
    bool valid = false;
    double a_req_terminal_pct = 0.0;
    double d_informality_pp = 0.0;
    double dY_pct = 0.0;
    std::string diagnostic;  // empty when the cell is clean

    friend bool operator==(const SweepCell&, const SweepCell&) = default;
};

struct ZeroCrossing {
    double sigma_sub = 0.0;
    std::optional<double> relief;  // interpolated relief where d_informality_pp hits 0

    friend bool operator==(const ZeroCrossing&, const ZeroCrossing&) = default;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepCell> cells;  // lexicographic in grid order
    std::vector<ZeroCrossing> crossings;  // frontier only, one per sigma_sub

    friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

// Evaluates one (hbar, sigma_sub, relief) cell; failures become diagnostics.
SweepCell evaluate_cell(const EconomyParams& params, const SweepSpec& spec, double hbar, double sigma_sub,
                        double relief);

SweepResult hours_curve(const EconomyParams& params, const SweepSpec& spec, unsigned threads = 1);
SweepResult heatmap(const EconomyParams& params, const SweepSpec& spec, unsigned threads = 1);
SweepResult frontier(const EconomyParams& params, const SweepSpec& spec, unsigned threads = 1);

// Dispatches on spec.kind.
SweepResult run_sweep(const EconomyParams& params, const SweepSpec& spec, unsigned threads = 1);

// First sign change of d_informality from positive to non-positive along the
// relief grid, linearly interpolated. Missing cells break the bracket.
std::optional<double> zero_crossing(const std::vector<SweepCell>& curve);

}  // namespace hourscap
