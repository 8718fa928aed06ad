#include "hourscap/io/manifest.hpp"

#include <chrono>
#include <ctime>

namespace hourscap::io {

nlohmann::json to_json(const RunManifest& m) {
    nlohmann::json j = {
        {"config_hash", m.config_hash},
        {"engine_version", m.engine_version},
        {"timestamp", m.timestamp},
        {"command", m.command},
        {"outputs", m.outputs},
        {"threads", m.threads},
    };
    j["seed"] = m.seed ? nlohmann::json(*m.seed) : nlohmann::json();
    return j;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace hourscap::io
