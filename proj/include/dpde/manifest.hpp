#pragma once

#include <string>

#include <json.hpp>

#include "dpde/config.hpp"
#include "dpde/engine.hpp"
#include "dpde/stats.hpp"

namespace dpde {

inline constexpr int kSchemaVersion = 1;

/// Provenance header written next to every run's outputs.
struct RunManifest {
    DeConfig config;
    std::string objective;
    std::string records_csv;
    std::string summary_json;
    std::string version;   // e.g. "dpde-0.1.0"
    std::string timestamp; // ISO-8601 UTC

    bool operator==(const RunManifest&) const = default;
};

std::string tool_version();
std::string iso8601_utc_now();

nlohmann::json to_json(const DeConfig& config);
DeConfig config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Histogram& hist);
nlohmann::json to_json(const TimingReport& report);

} // namespace dpde
