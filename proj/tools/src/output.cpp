#include "hourscap/io/output.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace hourscap::io {

using nlohmann::json;

namespace {

template <std::size_t N>
void write_header(std::ostream& os, const std::array<std::string_view, N>& columns) {
    for (std::size_t i = 0; i < N; ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
}

class Row {
public:
    explicit Row(std::ostream& os) : os_(os) {}
    ~Row() { os_ << '\n'; }

    Row& text(std::string_view s) {
        sep();
        os_ << csv_field(s);
        return *this;
    }
    Row& num(double x) {
        sep();
        os_ << format_number(x);
        return *this;
    }
    Row& integer(long long x) {
        sep();
        os_ << x;
        return *this;
    }
    Row& empty() {
        sep();
        return *this;
    }

private:
    void sep() {
        if (!first_) os_ << ',';
        first_ = false;
    }

    std::ostream& os_;
    bool first_ = true;
};

json group_metrics_json(const GroupMetrics& g) {
    return {{"dY_pct", g.dY_pct}, {"d_informality_pp", g.d_informality_pp}, {"a_req_pct", g.a_req_pct}};
}

json group_record_json(const GroupRecord& r) {
    return {
        {"N_F", r.formal},      {"N_I", r.informal},         {"ell_F", r.hours_index},
        {"L_F", r.formal_labor}, {"L_I", r.informal_labor},  {"L", r.labor},
        {"Y", r.output},        {"Adj", r.adjustment},       {"DW", r.deadweight},
        {"Phi_I", r.informal_cost}, {"hours_paid", r.hours_paid}, {"tau_effective", r.tau_effective},
    };
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    // snprintf honours LC_NUMERIC; normalize the separator.
    for (char* p = buf; *p; ++p) {
        if (*p == ',') *p = '.';
    }
    return buf;
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_scenario_csv(std::ostream& os, std::string_view scenario, const ScenarioResult& result, bool header) {
    if (header) write_header(os, kScenarioColumns);
    for (const auto& rec : result.records) {
        for (Group g : kGroups) {
            const auto& r = rec.group(g);
            Row(os)
                .text(scenario)
                .integer(rec.t)
                .text(group_name(g))
                .num(result.policy.hbar[static_cast<std::size_t>(rec.t)])
                .num(r.tau_effective)
                .num(r.formal)
                .num(r.informal)
                .num(r.hours_index)
                .num(r.formal_labor)
                .num(r.informal_labor)
                .num(r.labor)
                .num(r.output)
                .num(r.adjustment)
                .num(r.deadweight)
                .num(r.informal_cost)
                .num(r.hours_paid)
                .num(rec.output)
                .num(rec.consumption)
                .num(rec.hours)
                .num(rec.informality_share)
                .integer(rec.negative_consumption ? 1 : 0);
        }
    }
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
    write_header(os, kSweepColumns);
    const std::string_view kind = sweep_kind_name(result.spec.kind);
    for (const auto& c : result.cells) {
        Row row(os);
        row.text(kind).num(c.hbar).num(c.sigma_sub).num(c.relief);
        if (c.valid) {
            row.num(c.a_req_terminal_pct).num(c.d_informality_pp).num(c.dY_pct);
        } else {
            row.empty().empty().empty();
        }
        row.text(c.diagnostic);
    }
}

void write_crossings_csv(std::ostream& os, const SweepResult& result) {
    write_header(os, kCrossingColumns);
    for (const auto& z : result.crossings) {
        Row row(os);
        row.num(z.sigma_sub);
        if (z.relief) {
            row.num(*z.relief);
        } else {
            row.empty();
        }
    }
}

void write_decomposition_csv(std::ostream& os, const Decomposition& d) {
    write_header(os, kDecompositionColumns);
    Row(os)
        .text("terminal")
        .num(d.fatigue_pct)
        .num(d.other_pct)
        .num(d.total_pct)
        .num(d.fatigue_per_hour_pct)
        .num(d.other_per_hour_pct)
        .num(d.total_per_hour_pct);
}

void write_metrics_csv(std::ostream& os, const MetricsReport& report) {
    write_header(os, kMetricsColumns);
    auto row = [&](std::string_view metric, std::string_view group, double value) {
        Row(os).text(metric).text(group).num(value);
    };
    row("a_req_pct", "all", report.a_req_terminal_pct);
    row("dY_pct", "all", report.terminal.dY_pct);
    row("dC_pct", "all", report.terminal.dC_pct);
    row("d_informality_pp", "all", report.terminal.d_informality_pp);
    row("d_gdp_per_hour_pct", "all", report.terminal.d_gdp_per_hour_pct);
    for (Group g : kGroups) {
        const auto& m = report.group(g);
        row("a_req_pct", group_name(g), m.a_req_pct);
        row("dY_pct", group_name(g), m.dY_pct);
        row("d_informality_pp", group_name(g), m.d_informality_pp);
    }
    const auto& d = report.decomposition;
    row("fatigue_pct", "all", d.fatigue_pct);
    row("other_pct", "all", d.other_pct);
    row("total_pct", "all", d.total_pct);
    row("fatigue_per_hour_pct", "all", d.fatigue_per_hour_pct);
    row("other_per_hour_pct", "all", d.other_per_hour_pct);
    row("total_per_hour_pct", "all", d.total_per_hour_pct);
}

void write_residuals_csv(std::ostream& os, const CalibrationReport& report) {
    write_header(os, kResidualColumns);
    for (const auto& [key, value] : report.residuals) Row(os).text(key).num(value);
}

json scenario_json(const ScenarioResult& result) {
    json periods = json::array();
    for (const auto& rec : result.records) {
        json groups = json::object();
        for (Group g : kGroups) groups[std::string(group_name(g))] = group_record_json(rec.group(g));
        periods.push_back({
            {"t", rec.t},
            {"hbar", result.policy.hbar[static_cast<std::size_t>(rec.t)]},
            {"Y_t", rec.output},
            {"C_t", rec.consumption},
            {"hours_t", rec.hours},
            {"informality_share", rec.informality_share},
            {"negative_consumption", rec.negative_consumption},
            {"groups", groups},
        });
    }
    return {{"settled", result.settled}, {"periods", periods}};
}

json decomposition_json(const Decomposition& d) {
    return {
        {"fatigue_pct", d.fatigue_pct},
        {"other_pct", d.other_pct},
        {"total_pct", d.total_pct},
        {"fatigue_per_hour_pct", d.fatigue_per_hour_pct},
        {"other_per_hour_pct", d.other_per_hour_pct},
        {"total_per_hour_pct", d.total_per_hour_pct},
    };
}

json metrics_json(const PairSetup& setup, const MetricsReport& report) {
    json a_req_path = json::array();
    for (double r : report.a_req_path) a_req_path.push_back(to_pct(r));
    json groups = json::object();
    for (Group g : kGroups) groups[std::string(group_name(g))] = group_metrics_json(report.group(g));
    return {
        {"setup",
         {{"horizon", setup.horizon},
          {"hbar_base", setup.hbar_base},
          {"hbar_cap", setup.hbar_cap},
          {"relief", setup.relief}}},
        {"a_req_path_pct", a_req_path},
        {"a_req_terminal_pct", report.a_req_terminal_pct},
        {"terminal",
         {{"dY_pct", report.terminal.dY_pct},
          {"dC_pct", report.terminal.dC_pct},
          {"d_informality_pp", report.terminal.d_informality_pp},
          {"d_gdp_per_hour_pct", report.terminal.d_gdp_per_hour_pct}}},
        {"groups", groups},
        {"decomposition", decomposition_json(report.decomposition)},
    };
}

json sweep_json(const SweepResult& result) {
    const auto& s = result.spec;
    json spec = {
        {"kind", std::string(sweep_kind_name(s.kind))},
        {"horizon", s.horizon},
        {"hbar_base", s.hbar_base},
    };
    if (s.kind == SweepKind::hours_curve) {
        spec["hours"] = s.hours;
    } else {
        spec["hbar_cap"] = s.hbar_cap;
        spec["sigma_sub"] = s.sigma_sub;
        spec["relief"] = s.relief;
    }
    json cells = json::array();
    for (const auto& c : result.cells) {
        json cell = {
            {"hbar", c.hbar},
            {"sigma_sub", c.sigma_sub},
            {"relief", c.relief},
            {"valid", c.valid},
            {"diagnostic", c.diagnostic},
        };
        if (c.valid) {
            cell["a_req_terminal_pct"] = c.a_req_terminal_pct;
            cell["d_informality_pp"] = c.d_informality_pp;
            cell["dY_pct"] = c.dY_pct;
        } else {
            cell["a_req_terminal_pct"] = nullptr;
            cell["d_informality_pp"] = nullptr;
            cell["dY_pct"] = nullptr;
        }
        cells.push_back(cell);
    }
    json out = {{"spec", spec}, {"cells", cells}};
    if (s.kind == SweepKind::frontier) {
        json crossings = json::array();
        for (const auto& z : result.crossings) {
            crossings.push_back({{"sigma_sub", z.sigma_sub}, {"relief_zero", z.relief ? json(*z.relief) : json()}});
        }
        out["crossings"] = crossings;
    }
    return out;
}

json calibration_json(const CalibrationReport& report) {
    json residuals = json::object();
    for (const auto& [key, value] : report.residuals) residuals[key] = value;
    json wedges = json::object();
    for (Group g : kGroups) wedges[std::string(group_name(g))] = report.params.group(g).wedge;
    return {
        {"converged", report.converged},
        {"iterations", report.iterations},
        {"objective", report.objective},
        {"wedges", wedges},
        {"residuals", residuals},
    };
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing: " + std::strerror(errno));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out) throw IoError("write to '" + path.string() + "' failed: " + std::strerror(errno));
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

}  // namespace hourscap::io
