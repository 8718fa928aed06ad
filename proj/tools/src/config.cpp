#include "hourscap/io/config.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "hourscap/error.hpp"

namespace hourscap::io {

using nlohmann::json;

namespace {

// Cursor over one JSON object: typed field access with path-qualified
// errors, and a final check that every key present was consumed.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(where() + ": expected an object");
    }

    bool has(const std::string& key) {
        seen_.insert(key);
        return j_.contains(key);
    }

    std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json& raw(const std::string& key) {
        if (!has(key)) throw ConfigError(child(key) + ": required field missing");
        return j_.at(key);
    }

    double number(const std::string& key) { return as_number(raw(key), child(key)); }

    double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

    int integer(const std::string& key, int fallback) {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_number_integer()) throw ConfigError(child(key) + ": expected an integer");
        return v.get<int>();
    }

    bool boolean(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_boolean()) throw ConfigError(child(key) + ": expected true or false");
        return v.get<bool>();
    }

    std::string string(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_string()) throw ConfigError(child(key) + ": expected a string");
        return v.get<std::string>();
    }

    std::vector<double> numbers(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_array()) throw ConfigError(child(key) + ": expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(as_number(v[i], child(key) + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) throw ConfigError(child(it.key()) + ": unknown key");
        }
    }

    static double as_number(const json& v, const std::string& path) {
        if (!v.is_number()) throw ConfigError(path + ": expected a number");
        return v.get<double>();
    }

private:
    std::string where() const { return path_.empty() ? "document" : path_; }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

template <class Fn>
auto per_group(ObjectReader& parent, const std::string& key, Fn&& read) {
    ObjectReader r(parent.raw(key), parent.child(key));
    std::array<decltype(read(std::declval<const json&>(), std::string())), 2> out{};
    for (Group g : kGroups) {
        const std::string name(group_name(g));
        out[index(g)] = read(r.raw(name), r.child(name));
    }
    r.finish();
    return out;
}

HoursMixture read_mixture(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path + ": expected an array of {hours, weight}");
    std::vector<HoursPoint> points;
    for (std::size_t i = 0; i < j.size(); ++i) {
        ObjectReader r(j[i], path + "[" + std::to_string(i) + "]");
        points.push_back({r.number("hours"), r.number("weight")});
        r.finish();
    }
    try {
        return HoursMixture::make(std::move(points));
    } catch (const ValidationError& e) {
        // Re-root "mixture..." paths under the group.
        const std::string& inner = e.path();
        const std::string suffix = inner.size() > 7 ? inner.substr(7) : std::string();
        std::string msg = e.what();
        msg = msg.substr(msg.find(": ") + 2);
        throw ValidationError(path + suffix, msg);
    }
}

GroupParams read_group(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    GroupParams g;
    g.capital = r.number("capital");
    g.workforce = r.number("workforce");
    g.wedge = r.number("wedge", 0.0);
    g.adjustment_gamma = r.number("adjustment_gamma", 0.0);
    g.informal_linear = r.number("informal_linear", 0.0);
    g.informal_convex = r.number("informal_convex", 0.0);
    g.mixture = read_mixture(r.raw("mixture"), r.child("mixture"));
    r.finish();
    return g;
}

EconomyParams read_economy(const json& j) {
    ObjectReader r(j, "economy");
    EconomyParams e;
    e.alpha = r.number("alpha");
    e.tfp = r.number("tfp", 1.0);
    e.omega = r.number("omega");
    e.sigma_sub = r.number("sigma_sub");
    e.eta_informal = r.number("eta_I");
    e.hours_informal = r.number("h_I");
    e.lambda_dw = r.number("lambda_dw", 0.0);
    {
        ObjectReader f(r.raw("fatigue"), r.child("fatigue"));
        e.fatigue.kappa = f.number("kappa");
        e.fatigue.h_star = f.number("h_star");
        f.finish();
    }
    e.groups = per_group(r, "groups", [](const json& g, const std::string& p) { return read_group(g, p); });
    r.finish();
    validate(e);
    return e;
}

PolicyConfig read_policy(const json& j) {
    ObjectReader r(j, "policy");
    PolicyConfig p;
    p.horizon = r.integer("horizon", p.horizon);
    p.hbar_base = r.number("hbar_base", p.hbar_base);
    p.hbar_cap = r.number("hbar_cap", p.hbar_cap);
    p.relief = r.number("relief", p.relief);
    if (r.has("hbar_path")) p.hbar_path = r.numbers("hbar_path");
    if (r.has("wedge_multiplier")) {
        p.wedge_multiplier = per_group(r, "wedge_multiplier", [](const json& v, const std::string& path) {
            if (!v.is_array()) throw ConfigError(path + ": expected an array of numbers");
            std::vector<double> out;
            for (std::size_t i = 0; i < v.size(); ++i) {
                out.push_back(ObjectReader::as_number(v[i], path + "[" + std::to_string(i) + "]"));
            }
            return out;
        });
    }
    r.finish();

    if (p.horizon < 1) throw ValidationError("policy.horizon", "must be a positive integer");
    if (!(p.hbar_base > 0.0)) throw ValidationError("policy.hbar_base", "must be positive");
    if (!(p.hbar_cap > 0.0)) throw ValidationError("policy.hbar_cap", "must be positive");
    if (!(p.relief >= 0.0 && p.relief < 1.0)) throw ValidationError("policy.relief", "must lie in [0, 1)");
    if (p.hbar_path && p.hbar_path->empty()) throw ValidationError("policy.hbar_path", "must be non-empty");
    return p;
}

SweepSpec read_sweep(const json& j, const PolicyConfig& policy, const EconomyParams& economy) {
    ObjectReader r(j, "sweep");
    const std::string kind_name = r.string("kind");
    const auto kind = parse_sweep_kind(kind_name);
    if (!kind) throw ValidationError("sweep.kind", "must be one of hours_curve, heatmap, frontier");
    SweepSpec s = SweepSpec::defaults(*kind);
    if (r.has("hours")) s.hours = r.numbers("hours");
    if (r.has("sigma_sub")) s.sigma_sub = r.numbers("sigma_sub");
    if (r.has("relief")) s.relief = r.numbers("relief");
    r.finish();
    s.horizon = policy.horizon;
    s.hbar_base = policy.hbar_base;
    s.hbar_cap = policy.hbar_cap;
    validate(s, economy);
    return s;
}

CalibrationTargets read_targets(const json& j) {
    ObjectReader r(j, "targets");
    CalibrationTargets t;
    if (r.has("informality_share")) {
        t.informality_share = per_group(r, "informality_share", [](const json& v, const std::string& path) {
            const double x = ObjectReader::as_number(v, path);
            if (!(x > 0.0 && x < 1.0)) throw ValidationError(path, "must lie in (0, 1)");
            return x;
        });
    }
    if (r.has("headline")) {
        const json& arr = r.raw("headline");
        if (!arr.is_array()) throw ConfigError("targets.headline: expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "targets.headline[" + std::to_string(i) + "]";
            ObjectReader h(arr[i], path);
            HeadlineTarget target;
            const std::string name = h.string("metric");
            const auto metric = parse_headline_metric(name);
            if (!metric) throw ValidationError(path + ".metric", "unknown metric '" + name + "'");
            target.metric = *metric;
            target.value = h.number("value");
            target.weight = h.number("weight", 1.0);
            if (h.has("hbar_cap")) target.hbar_cap = h.number("hbar_cap");
            h.finish();
            if (!(target.weight >= 0.0)) throw ValidationError(path + ".weight", "must be non-negative");
            if (target.hbar_cap && !(*target.hbar_cap > 0.0)) {
                throw ValidationError(path + ".hbar_cap", "must be positive");
            }
            t.headline.push_back(target);
        }
    }
    r.finish();
    return t;
}

CalibrationConfig read_calibration(const json& j) {
    ObjectReader r(j, "calibration");
    CalibrationConfig c;
    if (r.has("tau_max")) {
        c.tau_max = per_group(r, "tau_max", [](const json& v, const std::string& path) {
            const double x = ObjectReader::as_number(v, path);
            if (!(x > 0.0)) throw ValidationError(path, "must be positive");
            return x;
        });
    }
    if (r.has("tuned")) {
        const json& arr = r.raw("tuned");
        if (!arr.is_array()) throw ConfigError("calibration.tuned: expected an array of parameter names");
        c.tuned.clear();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "calibration.tuned[" + std::to_string(i) + "]";
            if (!arr[i].is_string()) throw ConfigError(path + ": expected a string");
            const auto p = parse_tuned_param(arr[i].get<std::string>());
            if (!p) throw ValidationError(path, "unknown parameter '" + arr[i].get<std::string>() + "'");
            c.tuned.push_back(*p);
        }
    }
    c.max_iterations = r.integer("max_iterations", c.max_iterations);
    c.initial_step = r.number("initial_step", c.initial_step);
    c.min_step = r.number("min_step", c.min_step);
    r.finish();
    if (c.max_iterations < 0) throw ValidationError("calibration.max_iterations", "must be non-negative");
    if (!(c.initial_step > 0.0)) throw ValidationError("calibration.initial_step", "must be positive");
    if (!(c.min_step > 0.0)) throw ValidationError("calibration.min_step", "must be positive");
    return c;
}

OutputOptions read_output(const json& j) {
    ObjectReader r(j, "output");
    OutputOptions o;
    if (r.has("format")) {
        const std::string name = r.string("format");
        const auto f = parse_format(name);
        if (!f) throw ValidationError("output.format", "must be one of csv, json, both");
        o.format = *f;
    }
    o.plot = r.boolean("plot", o.plot);
    r.finish();
    return o;
}

template <class T>
json group_map(const std::array<T, 2>& values) {
    json j = json::object();
    for (Group g : kGroups) j[std::string(group_name(g))] = values[index(g)];
    return j;
}

}  // namespace

std::string_view format_name(OutputFormat f) noexcept {
    switch (f) {
        case OutputFormat::csv: return "csv";
        case OutputFormat::json: return "json";
        case OutputFormat::both: return "both";
    }
    return "both";
}

std::optional<OutputFormat> parse_format(std::string_view name) noexcept {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    if (name == "both") return OutputFormat::both;
    return std::nullopt;
}

PolicyPath ConfigDocument::policy_path() const {
    PolicyPath p = policy.hbar_path ? PolicyPath::constant(static_cast<int>(policy.hbar_path->size()), 0.0)
                                    : PolicyPath::constant(policy.horizon, policy.hbar_cap);
    if (policy.hbar_path) p.hbar = *policy.hbar_path;
    if (policy.wedge_multiplier) {
        p.wedge_multiplier = *policy.wedge_multiplier;
    } else {
        p.with_relief(Group::S, policy.relief);
    }
    validate(p);
    return p;
}

PairSetup ConfigDocument::pair_setup() const {
    return {policy.horizon, policy.hbar_base, policy.hbar_cap, policy.relief};
}

CalibrationSettings ConfigDocument::calibration_settings(unsigned threads) const {
    CalibrationSettings s;
    s.pair = pair_setup();
    s.pair.relief = 0.0;
    s.tau_max = calibration.tau_max;
    s.tuned = calibration.tuned;
    s.max_iterations = calibration.max_iterations;
    s.initial_step = calibration.initial_step;
    s.min_step = calibration.min_step;
    s.threads = threads;
    return s;
}

ConfigDocument parse_config(const json& j) {
    ObjectReader r(j, "");
    ConfigDocument doc;
    doc.schema_version = r.integer("schema_version", -1);
    if (doc.schema_version == -1) throw ConfigError("schema_version: required field missing");
    if (doc.schema_version != kSchemaVersion) {
        throw ConfigError("schema_version: unsupported version " + std::to_string(doc.schema_version) +
                          " (this build reads version " + std::to_string(kSchemaVersion) + ")");
    }
    doc.economy = read_economy(r.raw("economy"));
    if (r.has("policy")) doc.policy = read_policy(r.raw("policy"));
    if (r.has("sweep")) doc.sweep = read_sweep(r.raw("sweep"), doc.policy, doc.economy);
    if (r.has("targets")) doc.targets = read_targets(r.raw("targets"));
    if (r.has("calibration")) doc.calibration = read_calibration(r.raw("calibration"));
    if (r.has("output")) doc.output = read_output(r.raw("output"));
    r.finish();
    return doc;
}

ConfigDocument parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // Convert the byte offset to a 1-based line/column.
        const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ConfigError("parse error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                          ": " + e.what());
    }
    return parse_config(j);
}

ConfigDocument load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

json to_json(const EconomyParams& e) {
    json groups = json::object();
    for (Group g : kGroups) {
        const auto& gp = e.group(g);
        json mixture = json::array();
        for (const auto& [h, w] : gp.mixture.points()) mixture.push_back({{"hours", h}, {"weight", w}});
        groups[std::string(group_name(g))] = {
            {"capital", gp.capital},
            {"workforce", gp.workforce},
            {"wedge", gp.wedge},
            {"adjustment_gamma", gp.adjustment_gamma},
            {"informal_linear", gp.informal_linear},
            {"informal_convex", gp.informal_convex},
            {"mixture", mixture},
        };
    }
    return {
        {"alpha", e.alpha},
        {"tfp", e.tfp},
        {"omega", e.omega},
        {"sigma_sub", e.sigma_sub},
        {"eta_I", e.eta_informal},
        {"h_I", e.hours_informal},
        {"lambda_dw", e.lambda_dw},
        {"fatigue", {{"kappa", e.fatigue.kappa}, {"h_star", e.fatigue.h_star}}},
        {"groups", groups},
    };
}

json to_json(const ConfigDocument& doc) {
    json policy = {
        {"horizon", doc.policy.horizon},
        {"hbar_base", doc.policy.hbar_base},
        {"hbar_cap", doc.policy.hbar_cap},
        {"relief", doc.policy.relief},
    };
    if (doc.policy.hbar_path) policy["hbar_path"] = *doc.policy.hbar_path;
    if (doc.policy.wedge_multiplier) policy["wedge_multiplier"] = group_map(*doc.policy.wedge_multiplier);

    json headline = json::array();
    for (const auto& t : doc.targets.headline) {
        json h = {{"metric", std::string(headline_metric_name(t.metric))}, {"value", t.value}, {"weight", t.weight}};
        if (t.hbar_cap) h["hbar_cap"] = *t.hbar_cap;
        headline.push_back(h);
    }
    json tuned = json::array();
    for (auto p : doc.calibration.tuned) tuned.push_back(std::string(tuned_param_name(p)));
    json calibration = {
        {"tuned", tuned},
        {"max_iterations", doc.calibration.max_iterations},
        {"initial_step", doc.calibration.initial_step},
        {"min_step", doc.calibration.min_step},
    };
    if (doc.calibration.tau_max) calibration["tau_max"] = group_map(*doc.calibration.tau_max);

    json out = {
        {"schema_version", doc.schema_version},
        {"economy", to_json(doc.economy)},
        {"policy", policy},
        {"targets", {{"informality_share", group_map(doc.targets.informality_share)}, {"headline", headline}}},
        {"calibration", calibration},
        {"output", {{"format", std::string(format_name(doc.output.format))}, {"plot", doc.output.plot}}},
    };
    if (doc.sweep) {
        json sweep = {{"kind", std::string(sweep_kind_name(doc.sweep->kind))}};
        if (doc.sweep->kind == SweepKind::hours_curve) {
            sweep["hours"] = doc.sweep->hours;
        } else {
            sweep["sigma_sub"] = doc.sweep->sigma_sub;
            sweep["relief"] = doc.sweep->relief;
        }
        out["sweep"] = sweep;
    }
    return out;
}

std::string config_hash(const ConfigDocument& doc) {
    const std::string canonical = to_json(doc).dump();
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(canonical.data(), canonical.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return os.str();
}

}  // namespace hourscap::io
