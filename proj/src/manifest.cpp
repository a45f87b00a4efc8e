#include "dpde/manifest.hpp"

#include <ctime>

namespace dpde {

#ifndef DPDE_VERSION
#define DPDE_VERSION "0.0.0"
#endif

std::string tool_version() { return "dpde-" DPDE_VERSION; }

std::string iso8601_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json to_json(const DeConfig& config) {
    nlohmann::json j{
        {"f", config.f},
        {"cr", config.cr},
        {"np", config.np},
        {"d", config.d},
        {"max_gen", config.max_gen},
        {"crossover", std::string(to_string(config.crossover_kind))},
        {"selection", std::string(to_string(config.selection_kind))},
        {"seed", config.seed},
        {"lower", config.lower},
        {"upper", config.upper},
        {"shuffle_each_generation", config.shuffle_each_generation},
    };
    if (config.target_fitness.has_value()) {
        j["target_fitness"] = *config.target_fitness;
    } else {
        j["target_fitness"] = nullptr;
    }
    return j;
}

DeConfig config_from_json(const nlohmann::json& j) {
    DeConfig config;
    config.f = j.at("f").get<double>();
    config.cr = j.at("cr").get<double>();
    config.np = j.at("np").get<int>();
    config.d = j.at("d").get<int>();
    config.max_gen = j.at("max_gen").get<int>();
    config.crossover_kind = crossover_kind_from_string(j.at("crossover").get<std::string>());
    config.selection_kind = selection_kind_from_string(j.at("selection").get<std::string>());
    config.seed = j.at("seed").get<std::uint64_t>();
    config.lower = j.at("lower").get<std::vector<double>>();
    config.upper = j.at("upper").get<std::vector<double>>();
    config.shuffle_each_generation = j.at("shuffle_each_generation").get<bool>();
    if (!j.at("target_fitness").is_null()) {
        config.target_fitness = j.at("target_fitness").get<double>();
    }
    return config;
}

nlohmann::json to_json(const RunManifest& manifest) {
    return nlohmann::json{
        {"schema_version", kSchemaVersion},
        {"version", manifest.version},
        {"timestamp", manifest.timestamp},
        {"objective", manifest.objective},
        {"config", to_json(manifest.config)},
        {"outputs",
         {{"records_csv", manifest.records_csv}, {"summary_json", manifest.summary_json}}},
    };
}

RunManifest manifest_from_json(const nlohmann::json& j) {
    RunManifest manifest;
    manifest.version = j.at("version").get<std::string>();
    manifest.timestamp = j.at("timestamp").get<std::string>();
    manifest.objective = j.at("objective").get<std::string>();
    manifest.config = config_from_json(j.at("config"));
    manifest.records_csv = j.at("outputs").at("records_csv").get<std::string>();
    manifest.summary_json = j.at("outputs").at("summary_json").get<std::string>();
    return manifest;
}

nlohmann::json to_json(const Histogram& hist) {
    return nlohmann::json{
        {"schema_version", kSchemaVersion},
        {"d", hist.d},
        {"counts", hist.counts},
        {"total", hist.total},
    };
}

nlohmann::json to_json(const TimingReport& report) {
    return nlohmann::json{
        {"schema_version", kSchemaVersion},
        {"label", report.label},
        {"repeats", report.repeats},
        {"samples", report.seconds},
        {"summary",
         {{"median", report.median},
          {"mean", report.mean},
          {"stddev", report.stddev},
          {"min", report.min},
          {"max", report.max}}},
    };
}

} // namespace dpde
