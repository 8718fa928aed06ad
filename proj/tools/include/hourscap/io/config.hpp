#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hourscap/calibration.hpp"
#include "hourscap/scenario.hpp"
#include "hourscap/sweep.hpp"

namespace hourscap::io {

inline constexpr int kSchemaVersion = 1;

// Malformed document: syntax error (with line/column), wrong type, unknown
// key, or schema version mismatch. Validation failures of model invariants
// surface as hourscap::ValidationError instead.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json, both };

std::string_view format_name(OutputFormat f) noexcept;
std::optional<OutputFormat> parse_format(std::string_view name) noexcept;

struct PolicyConfig {
    int horizon = simulation_settings::kDefaultHorizon;
    double hbar_base = 44.0;
    double hbar_cap = 36.0;
    double relief = 0.0;  // applied to group S in the cap scenario
    // Explicit per-period path for `simulate`; overrides horizon/hbar_cap.
    std::optional<std::vector<double>> hbar_path;
    std::optional<std::array<std::vector<double>, 2>> wedge_multiplier;

    friend bool operator==(const PolicyConfig&, const PolicyConfig&) = default;
};

struct CalibrationConfig {
    std::optional<std::array<double, 2>> tau_max;
    std::vector<TunedParam> tuned = default_tuned_params();
    int max_iterations = 60;
    double initial_step = 0.1;
    double min_step = 1e-3;

    friend bool operator==(const CalibrationConfig&, const CalibrationConfig&) = default;
};

struct OutputOptions {
    OutputFormat format = OutputFormat::both;
    bool plot = false;

    friend bool operator==(const OutputOptions&, const OutputOptions&) = default;
};

struct ConfigDocument {
    int schema_version = kSchemaVersion;
    EconomyParams economy;
    PolicyConfig policy;
    std::optional<SweepSpec> sweep;  // horizon and caps mirror `policy`
    CalibrationTargets targets;
    CalibrationConfig calibration;
    OutputOptions output;

    PolicyPath policy_path() const;
    PairSetup pair_setup() const;
    CalibrationSettings calibration_settings(unsigned threads) const;
};

// Parses and validates. Throws ConfigError or ValidationError.
ConfigDocument parse_config(const nlohmann::json& doc);
ConfigDocument parse_config_text(const std::string& text);
ConfigDocument load_config(const std::filesystem::path& path);

// Canonical form with every default made explicit. Reloading it yields an
// equal document.
nlohmann::json to_json(const ConfigDocument& doc);

nlohmann::json to_json(const EconomyParams& economy);

// SHA-256 (hex) of the canonical serialization; object keys are sorted, so
// the hash ignores key order in the source file.
std::string config_hash(const ConfigDocument& doc);

}  // namespace hourscap::io
