#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hourscap::io {

struct RunManifest {
    std::string config_hash;
    std::string engine_version;
    std::string timestamp;  // UTC, ISO 8601
    std::string command;
    std::vector<std::string> outputs;  // relative to the output directory
    unsigned threads = 1;
    std::optional<unsigned long long> seed;
};

nlohmann::json to_json(const RunManifest& m);

// Current time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

}  // namespace hourscap::io
