#include "hourscap/io/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hourscap/error.hpp"
#include "hourscap/io/config.hpp"
#include "hourscap/io/manifest.hpp"
#include "hourscap/io/output.hpp"
#include "hourscap/io/plot.hpp"
#include "hourscap/version.hpp"

namespace hourscap::io {

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
    std::string config;
    std::string out = "out";
    std::string format;  // empty: take it from the config document
    bool plot = false;
    unsigned threads = 1;
    std::optional<unsigned long long> seed;
    std::string kind;  // sweep only
};

// Collects result files for one invocation; every write goes through here
// so the manifest lists exactly what was produced.
class RunContext {
public:
    RunContext(ConfigDocument doc, const CommonOptions& opts)
        : doc_(std::move(doc)), dir_(opts.out), threads_(opts.threads), plot_(opts.plot || doc_.output.plot) {
        format_ = doc_.output.format;
        if (!opts.format.empty()) format_ = *parse_format(opts.format);
    }

    const ConfigDocument& doc() const noexcept { return doc_; }
    unsigned threads() const noexcept { return threads_; }
    bool plot() const noexcept { return plot_; }
    bool csv() const noexcept { return format_ != OutputFormat::json; }
    bool json() const noexcept { return format_ != OutputFormat::csv; }

    void write(const std::string& name, std::string_view contents) {
        write_file(dir_ / name, contents);
        outputs_.push_back(name);
    }

    template <class Fn>
    void write_csv(const std::string& name, Fn&& fill) {
        std::ostringstream os;
        fill(os);
        write(name, os.str());
    }

    void write_json(const std::string& name, const nlohmann::json& j) { write(name, json_text(j)); }

    void finish(const std::string& command, const std::optional<unsigned long long>& seed) {
        write_json("config_echo.json", to_json(doc_));
        RunManifest m;
        m.config_hash = config_hash(doc_);
        m.engine_version = kEngineVersion;
        m.timestamp = utc_timestamp();
        m.command = command;
        m.outputs = outputs_;
        m.threads = threads_;
        m.seed = seed;
        write_file(dir_ / "manifest.json", json_text(to_json(m)));
    }

    const std::vector<std::string>& outputs() const noexcept { return outputs_; }
    const fs::path& dir() const noexcept { return dir_; }

private:
    ConfigDocument doc_;
    fs::path dir_;
    unsigned threads_;
    bool plot_;
    OutputFormat format_ = OutputFormat::both;
    std::vector<std::string> outputs_;
};

void warn_negative_consumption(const ScenarioResult& r, std::string_view name, std::ostream& err) {
    if (r.any_negative_consumption()) {
        err << "warning: " << name << " scenario has negative consumption in some period\n";
    }
}

void write_pair(RunContext& ctx, const PairRun& run) {
    if (ctx.csv()) {
        ctx.write_csv("baseline.csv", [&](std::ostream& os) { write_scenario_csv(os, "baseline", run.pair.base); });
        ctx.write_csv("cap.csv", [&](std::ostream& os) { write_scenario_csv(os, "cap", run.pair.cap); });
        ctx.write_csv("metrics.csv", [&](std::ostream& os) { write_metrics_csv(os, run.report); });
    }
    if (ctx.json()) {
        ctx.write_json("baseline.json", scenario_json(run.pair.base));
        ctx.write_json("cap.json", scenario_json(run.pair.cap));
        ctx.write_json("metrics.json", metrics_json(run.setup, run.report));
    }
}

void write_sweep(RunContext& ctx, const SweepResult& result) {
    const std::string kind(sweep_kind_name(result.spec.kind));
    if (ctx.csv()) {
        ctx.write_csv(kind + "_cells.csv", [&](std::ostream& os) { write_sweep_csv(os, result); });
        if (result.spec.kind == SweepKind::frontier) {
            ctx.write_csv(kind + "_crossings.csv", [&](std::ostream& os) { write_crossings_csv(os, result); });
        }
    }
    if (ctx.json()) ctx.write_json(kind + ".json", sweep_json(result));
    if (ctx.plot()) ctx.write(kind + ".svg", render_svg(result));
}

void summarize(const MetricsReport& r, std::ostream& out) {
    auto line = [&](const char* name, double v) { out << "  " << name << " = " << format_number(v) << '\n'; };
    line("a_req_pct", r.a_req_terminal_pct);
    line("dY_pct", r.terminal.dY_pct);
    line("dC_pct", r.terminal.dC_pct);
    line("d_informality_pp", r.terminal.d_informality_pp);
    line("d_gdp_per_hour_pct", r.terminal.d_gdp_per_hour_pct);
    for (Group g : kGroups) {
        const auto& m = r.group(g);
        const std::string p(group_name(g));
        line(("a_req_" + p + "_pct").c_str(), m.a_req_pct);
        line(("dY_" + p + "_pct").c_str(), m.dY_pct);
        line(("d_informality_" + p + "_pp").c_str(), m.d_informality_pp);
    }
    line("fatigue_pct", r.decomposition.fatigue_pct);
    line("other_pct", r.decomposition.other_pct);
}

void cmd_simulate(RunContext& ctx, std::ostream& err) {
    const auto& doc = ctx.doc();
    const PolicyPath policy = doc.policy_path();
    const ScenarioResult result = run_scenario(doc.economy, policy, doc.policy.hbar_base);
    warn_negative_consumption(result, "simulated", err);
    if (!result.settled) err << "warning: formal employment has not settled by the last period\n";
    if (ctx.csv()) ctx.write_csv("scenario.csv", [&](std::ostream& os) { write_scenario_csv(os, "scenario", result); });
    if (ctx.json()) ctx.write_json("scenario.json", scenario_json(result));
}

void cmd_pair(RunContext& ctx, std::ostream& err) {
    const PairRun run = run_and_measure(ctx.doc().economy, ctx.doc().pair_setup());
    warn_negative_consumption(run.pair.base, "baseline", err);
    warn_negative_consumption(run.pair.cap, "cap", err);
    write_pair(ctx, run);
}

void cmd_decompose(RunContext& ctx, std::ostream&) {
    const Decomposition d = decompose_fatigue(ctx.doc().economy, ctx.doc().pair_setup());
    if (ctx.csv()) ctx.write_csv("decomposition.csv", [&](std::ostream& os) { write_decomposition_csv(os, d); });
    if (ctx.json()) ctx.write_json("decomposition.json", decomposition_json(d));
}

void cmd_sweep(RunContext& ctx, const CommonOptions& opts, std::ostream&) {
    const auto& doc = ctx.doc();
    SweepSpec spec;
    if (!opts.kind.empty()) {
        const SweepKind kind = *parse_sweep_kind(opts.kind);
        if (doc.sweep && doc.sweep->kind == kind) {
            spec = *doc.sweep;
        } else {
            spec = SweepSpec::defaults(kind);
            spec.horizon = doc.policy.horizon;
            spec.hbar_base = doc.policy.hbar_base;
            spec.hbar_cap = doc.policy.hbar_cap;
            validate(spec, doc.economy);
        }
    } else if (doc.sweep) {
        spec = *doc.sweep;
    } else {
        throw ValidationError("sweep", "the config has no sweep section; add one or pass --kind");
    }
    write_sweep(ctx, run_sweep(doc.economy, spec, ctx.threads()));
}

void cmd_calibrate(RunContext& ctx, std::ostream& out) {
    const auto& doc = ctx.doc();
    const CalibrationReport report = tune_reference(doc.economy, doc.targets, doc.calibration_settings(ctx.threads()));
    ConfigDocument calibrated = doc;
    calibrated.economy = report.params;
    ctx.write_json("calibrated_config.json", to_json(calibrated));
    if (ctx.csv()) ctx.write_csv("residuals.csv", [&](std::ostream& os) { write_residuals_csv(os, report); });
    if (ctx.json()) ctx.write_json("calibration.json", calibration_json(report));
    out << "objective " << format_number(report.objective) << " after " << report.iterations << " iterations"
        << (report.converged ? "" : " (step floor not reached)") << '\n';
}

void cmd_report(RunContext& ctx, std::ostream& out, std::ostream& err) {
    const auto& doc = ctx.doc();
    const PairRun run = run_and_measure(doc.economy, doc.pair_setup());
    warn_negative_consumption(run.pair.cap, "cap", err);
    SweepSpec spec = doc.sweep && doc.sweep->kind == SweepKind::hours_curve ? *doc.sweep
                                                                             : SweepSpec::defaults(SweepKind::hours_curve);
    spec.horizon = doc.policy.horizon;
    spec.hbar_base = doc.policy.hbar_base;
    validate(spec, doc.economy);
    const SweepResult curve = run_sweep(doc.economy, spec, ctx.threads());

    write_pair(ctx, run);
    write_sweep(ctx, curve);
    if (ctx.json()) {
        ctx.write_json("report.json", {{"metrics", metrics_json(run.setup, run.report)}, {"hours_curve", sweep_json(curve)}});
    }
    out << "cap " << format_number(run.setup.hbar_cap) << "h vs " << format_number(run.setup.hbar_base)
        << "h, terminal period " << run.setup.horizon - 1 << ":\n";
    summarize(run.report, out);
}

std::optional<unsigned> env_threads(std::string& problem) {
    const char* v = std::getenv("HOURSCAP_THREADS");
    if (v == nullptr || *v == '\0') return std::nullopt;
    char* end = nullptr;
    const unsigned long n = std::strtoul(v, &end, 10);
    if (*end != '\0' || n < 1 || n > 1024) {
        problem = std::string("HOURSCAP_THREADS: expected an integer in [1, 1024], got '") + v + "'";
        return std::nullopt;
    }
    return static_cast<unsigned>(n);
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hours-cap structural model: scenarios, sweeps and calibration.", "hourscap"};
    app.set_version_flag("--version", std::string(kEngineVersion));
    app.require_subcommand(1);

    CommonOptions opts;
    std::string env_problem;
    if (auto n = env_threads(env_problem)) opts.threads = *n;
    if (!env_problem.empty()) {
        err << "error: " << env_problem << '\n';
        return 1;
    }

    const std::map<std::string, std::string> commands{
        {"simulate", "Run one policy path from the baseline steady state"},
        {"pair", "Run the baseline and cap scenarios and report metrics"},
        {"sweep", "Evaluate an hours curve, heatmap or frontier grid"},
        {"calibrate", "Fit wedges and free parameters to the targets"},
        {"decompose", "Split the output change into fatigue and other channels"},
        {"report", "Headline metrics plus the hours curve"},
    };
    for (const auto& [name, description] : commands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--config", opts.config, "Configuration document (JSON)")->required();
        sub->add_option("--out", opts.out, "Output directory")->capture_default_str();
        sub->add_option("--format", opts.format, "Result format, overriding the config")
            ->check(CLI::IsMember({"csv", "json", "both"}));
        sub->add_flag("--plot", opts.plot, "Emit SVG plots for sweeps");
        sub->add_option("--threads", opts.threads, "Worker threads (default: HOURSCAP_THREADS or 1)")
            ->check(CLI::Range(1u, 1024u));
        sub->add_option("--seed", opts.seed, "Recorded in the manifest; the model itself is deterministic");
        if (name == "sweep") {
            sub->add_option("--kind", opts.kind, "Sweep kind when the config has no sweep section")
                ->check(CLI::IsMember({"hours_curve", "heatmap", "frontier"}));
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    std::string invocation = "hourscap";
    for (int i = 1; i < argc; ++i) invocation += std::string(" ") + argv[i];

    try {
        RunContext ctx(load_config(opts.config), opts);
        if (command == "simulate") {
            cmd_simulate(ctx, err);
        } else if (command == "pair") {
            cmd_pair(ctx, err);
        } else if (command == "sweep") {
            cmd_sweep(ctx, opts, err);
        } else if (command == "calibrate") {
            cmd_calibrate(ctx, out);
        } else if (command == "decompose") {
            cmd_decompose(ctx, err);
        } else {
            cmd_report(ctx, out, err);
        }
        ctx.finish(invocation, opts.seed);
        out << "wrote " << ctx.outputs().size() + 2 << " files to " << ctx.dir().string() << '\n';
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 1;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return 1;
    } catch (const DomainError& e) {
        err << "validation error: " << e.what() << '\n';
        return 1;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return 1;
    } catch (const InfeasibleTargetError& e) {
        err << "calibration error: " << e.what() << '\n';
        return 2;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << '\n';
        return 2;
    } catch (const MetricError& e) {
        err << "metric error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace hourscap::io
