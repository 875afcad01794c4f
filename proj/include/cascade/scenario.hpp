#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace cascade {

/// Archived description of one run: mode, model, parameter map, output
/// destination. Scenario files sit next to their outputs so every artifact
/// can be regenerated byte-for-byte.
struct ScenarioConfig {
    std::string mode;  // exact | integrate | stationary | spectrum | asymptotics | inviscid
    std::string model = "A";
    nlohmann::json parameters = nlohmann::json::object();
    std::string output_path;
    std::string output_format = "csv";
};

/// Full-error-list validation (never first-error-only). Unknown keys are
/// rejected at every level; every numeric parameter is range-checked.
/// Returns the collected errors; on success *out is filled.
std::vector<std::string> validate_config_text(const std::string& text, ScenarioConfig* out);
std::vector<std::string> validate_config_json(const nlohmann::json& j, ScenarioConfig* out);

/// Parameter-map validation for one mode (used by the CLI after merging
/// flags over a config file).
std::vector<std::string> validate_parameters(const std::string& mode,
                                             const nlohmann::json& params);

}  // namespace cascade
