#pragma once

#include <array>
#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hourscap/calibration.hpp"
#include "hourscap/metrics.hpp"
#include "hourscap/sweep.hpp"

namespace hourscap::io {

// Filesystem failure; the message carries the OS error text verbatim.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Column headers, frozen. See docs/csv_columns.md.
inline constexpr std::array<std::string_view, 21> kScenarioColumns{
    "scenario", "t",   "group",       "hbar", "tau_effective", "N_F", "N_I",        "ell_F",   "L_F",
    "L_I",      "L",   "Y",           "Adj",  "DW",            "Phi_I", "hours_paid", "Y_t", "C_t",
    "hours_t",  "informality_share", "negative_consumption"};

inline constexpr std::array<std::string_view, 8> kSweepColumns{
    "kind", "hbar", "sigma_sub", "relief", "a_req_terminal_pct", "d_informality_pp", "dY_pct", "diagnostic"};

inline constexpr std::array<std::string_view, 2> kCrossingColumns{"sigma_sub", "relief_zero"};

inline constexpr std::array<std::string_view, 7> kDecompositionColumns{
    "measure", "fatigue_pct", "other_pct", "total_pct", "fatigue_per_hour_pct", "other_per_hour_pct",
    "total_per_hour_pct"};

inline constexpr std::array<std::string_view, 3> kMetricsColumns{"metric", "group", "value"};

inline constexpr std::array<std::string_view, 2> kResidualColumns{"key", "residual"};

// 17 significant digits, "." separator, locale independent.
std::string format_number(double x);

// RFC-4180 field: quoted when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view s);

void write_scenario_csv(std::ostream& os, std::string_view scenario, const ScenarioResult& result,
                        bool header = true);
void write_sweep_csv(std::ostream& os, const SweepResult& result);
void write_crossings_csv(std::ostream& os, const SweepResult& result);
void write_decomposition_csv(std::ostream& os, const Decomposition& d);
void write_metrics_csv(std::ostream& os, const MetricsReport& report);
void write_residuals_csv(std::ostream& os, const CalibrationReport& report);

nlohmann::json scenario_json(const ScenarioResult& result);
nlohmann::json decomposition_json(const Decomposition& d);
nlohmann::json metrics_json(const PairSetup& setup, const MetricsReport& report);
nlohmann::json sweep_json(const SweepResult& result);
nlohmann::json calibration_json(const CalibrationReport& report);

// Writes bytes exactly as given (binary mode, so LF stays LF). Creates parent
// directories. Throws IoError.
void write_file(const std::filesystem::path& path, std::string_view contents);

// JSON text as written to disk: two-space indent, trailing newline.
std::string json_text(const nlohmann::json& j);

}  // namespace hourscap::io
