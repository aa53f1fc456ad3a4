#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixhk/config.hpp"

namespace mixhk {

/// Invalid configuration document; carries every violation found.
struct ConfigError : std::runtime_error {
    std::vector<std::string> violations;

    explicit ConfigError(std::vector<std::string> v)
        : std::runtime_error(join(v)), violations(std::move(v)) {}

    static std::string join(const std::vector<std::string>& v) {
        std::string out = "invalid configuration:";
        for (const auto& s : v) out += "\n  - " + s;
        return out;
    }
};

struct LoadedConfig {
    ModelConfig cfg;
    RunSettings settings;
};

/// Parses a config document. Presets (sync_hk, async_hk, deffuant) expand
/// into the explicit schema; unknown keys are hard errors; vertex and agent
/// indices are 1-based in files. Throws ConfigError on any violation,
/// nlohmann's parse_error on malformed JSON.
LoadedConfig load_config_json(const nlohmann::json& doc);
LoadedConfig load_config_file(const std::string& path);

/// The fully explicit document (presets expanded, defaults materialized)
/// echoed into every output file.
nlohmann::json effective_config(const ModelConfig& cfg, const RunSettings& settings);

nlohmann::json graph_to_json(const SimpleGraph& g);

}  // namespace mixhk
