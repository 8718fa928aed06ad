#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "hourscap/error.hpp"
#include "hourscap/io/config.hpp"
#include "support/reference.hpp"

using namespace hourscap;
using namespace hourscap::io;
using nlohmann::json;

namespace {

json reference_json() {
    std::ifstream in(hourscap::testing::config_path("reference.json"));
    return json::parse(in);
}

template <class Fn>
std::string validation_path(Fn&& fn) {
    try {
        fn();
    } catch (const ValidationError& e) {
        return e.path();
    } catch (const ConfigError& e) {
        return std::string("config: ") + e.what();
    }
    return "<no error>";
}

template <class Fn>
std::string config_message(Fn&& fn) {
    try {
        fn();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "<no error>";
}

}  // namespace

TEST(LoadConfig, ShippedReferenceLoads) {
    const auto doc = load_config(hourscap::testing::config_path("reference.json"));
    EXPECT_EQ(doc.schema_version, kSchemaVersion);
    EXPECT_EQ(doc.policy.hbar_cap, 36);
    EXPECT_GT(doc.economy.group(Group::S).wedge, doc.economy.group(Group::L).wedge);
    for (const char* name : {"reference_template.json", "hours.json", "heatmap.json", "frontier.json"}) {
        EXPECT_NO_THROW(load_config(hourscap::testing::config_path(name))) << name;
    }
}

TEST(LoadConfig, EchoRoundTrips) {
    const auto doc = parse_config(reference_json());
    const json echo = to_json(doc);
    const auto again = parse_config(echo);
    EXPECT_EQ(to_json(again), echo);
    EXPECT_EQ(config_hash(again), config_hash(doc));
}

TEST(LoadConfig, DefaultsAreEchoed) {
    json j = reference_json();
    j.erase("output");
    j["economy"].erase("tfp");
    j["economy"]["groups"]["L"].erase("informal_linear");
    const json echo = to_json(parse_config(j));
    EXPECT_EQ(echo["economy"]["tfp"], 1.0);
    EXPECT_EQ(echo["economy"]["groups"]["L"]["informal_linear"], 0.0);
    EXPECT_EQ(echo["output"]["format"], "both");
    EXPECT_EQ(echo["policy"]["horizon"], 12);
}

TEST(LoadConfig, OmegaOutOfRange) {
    json j = reference_json();
    j["economy"]["omega"] = 1.2;
    try {
        parse_config(j);
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.path(), "economy.omega");
        EXPECT_NE(std::string(e.what()).find("(0, 1)"), std::string::npos);
    }
}

TEST(LoadConfig, MixtureWeightsMustSumToOne) {
    json j = reference_json();
    j["economy"]["groups"]["S"]["mixture"][0]["weight"] = j["economy"]["groups"]["S"]["mixture"][0]["weight"].get<double>() - 0.01;
    EXPECT_EQ(validation_path([&] { parse_config(j); }), "economy.groups.S.mixture");
    j = reference_json();
    j["economy"]["groups"]["L"]["mixture"][1]["hours"] = -4;
    EXPECT_EQ(validation_path([&] { parse_config(j); }), "economy.groups.L.mixture[0].hours");
}

TEST(LoadConfig, UnknownKeysRejected) {
    json j = reference_json();
    j["economy"]["omgea"] = 0.5;
    EXPECT_EQ(config_message([&] { parse_config(j); }), "economy.omgea: unknown key");
    j = reference_json();
    j["extras"] = json::object();
    EXPECT_EQ(config_message([&] { parse_config(j); }), "extras: unknown key");
    j = reference_json();
    j["economy"]["groups"]["M"] = j["economy"]["groups"]["S"];
    EXPECT_EQ(config_message([&] { parse_config(j); }), "economy.groups.M: unknown key");
}

TEST(LoadConfig, MissingAndMistypedFields) {
    json j = reference_json();
    j["economy"].erase("alpha");
    EXPECT_EQ(config_message([&] { parse_config(j); }), "economy.alpha: required field missing");
    j = reference_json();
    j["economy"]["sigma_sub"] = "high";
    EXPECT_EQ(config_message([&] { parse_config(j); }), "economy.sigma_sub: expected a number");
}

TEST(LoadConfig, VersionMismatch) {
    json j = reference_json();
    j["schema_version"] = 2;
    EXPECT_NE(config_message([&] { parse_config(j); }).find("unsupported version 2"), std::string::npos);
    j.erase("schema_version");
    EXPECT_EQ(config_message([&] { parse_config(j); }), "schema_version: required field missing");
}

TEST(LoadConfig, ParseErrorHasLineAndColumn) {
    const std::string text = "{\n  \"schema_version\": 1,\n  \"economy\": {,\n}\n";
    const std::string msg = config_message([&] { parse_config_text(text); });
    EXPECT_NE(msg.find("line 3, column 15"), std::string::npos) << msg;
}

TEST(LoadConfig, MissingFile) {
    EXPECT_NE(config_message([] { load_config("/nonexistent/config.json"); }).find("cannot open"), std::string::npos);
}

TEST(LoadConfig, SweepSectionTakesDefaultsAndPolicy) {
    json j = reference_json();
    j["sweep"] = {{"kind", "frontier"}};
    j["policy"]["hbar_cap"] = 38;
    const auto doc = parse_config(j);
    ASSERT_TRUE(doc.sweep);
    auto expected = SweepSpec::defaults(SweepKind::frontier);
    expected.hbar_cap = 38;
    EXPECT_EQ(*doc.sweep, expected);
    j["sweep"] = {{"kind", "spiral"}};
    EXPECT_EQ(validation_path([&] { parse_config(j); }), "sweep.kind");
}

TEST(ConfigHash, IgnoresKeyOrderAndFormatting) {
    const std::string a = R"({"schema_version": 1, "policy": {"hbar_cap": 36, "horizon": 12},
        "economy": {"alpha": 0.35, "omega": 0.8, "sigma_sub": 0.8, "eta_I": 0.9, "h_I": 44,
                    "fatigue": {"kappa": 0.0001, "h_star": 35},
                    "groups": {"S": {"capital": 100, "workforce": 10, "mixture": [{"hours": 44, "weight": 1}]},
                               "L": {"capital": 200, "workforce": 5, "mixture": [{"weight": 1, "hours": 40}]}}}})";
    const std::string b = R"({"economy": {"groups": {"L": {"mixture": [{"hours": 40, "weight": 1.0}], "workforce": 5,
                    "capital": 200}, "S": {"workforce": 10, "capital": 100, "mixture": [{"hours": 44, "weight": 1}]}},
                    "fatigue": {"h_star": 35, "kappa": 1e-4}, "h_I": 44, "eta_I": 0.9, "sigma_sub": 0.8,
                    "omega": 0.8, "alpha": 0.35},
        "policy": {"horizon": 12, "hbar_cap": 36.0}, "schema_version": 1})";
    const auto da = parse_config_text(a);
    const auto db = parse_config_text(b);
    EXPECT_EQ(config_hash(da), config_hash(db));
    EXPECT_EQ(config_hash(da).size(), 64u);

    auto changed = da;
    changed.economy.omega = 0.81;
    EXPECT_NE(config_hash(changed), config_hash(da));
    changed = da;
    changed.policy.relief = 0.1;
    EXPECT_NE(config_hash(changed), config_hash(da));
}

TEST(ConfigDocument, PolicyPathAppliesReliefToSmallFirms) {
    auto doc = parse_config(reference_json());
    doc.policy.relief = 0.3;
    const auto p = doc.policy_path();
    EXPECT_EQ(p.horizon(), 12);
    EXPECT_EQ(p.hbar[0], 36);
    EXPECT_EQ(p.multiplier(Group::S, 0), 0.7);
    EXPECT_EQ(p.multiplier(Group::L, 0), 1.0);
}

TEST(ConfigDocument, ExplicitPathOverridesCap) {
    json j = reference_json();
    j["policy"]["hbar_path"] = {44, 42, 40};
    const auto p = parse_config(j).policy_path();
    EXPECT_EQ(p.horizon(), 3);
    EXPECT_EQ(p.hbar[2], 40);
    j["policy"]["wedge_multiplier"] = {{"S", {1, 1}}, {"L", {1, 1, 1}}};
    EXPECT_EQ(validation_path([&] { parse_config(j).policy_path(); }), "policy.wedge_multiplier.S");
}
