#include "cascade/scenario.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace cascade {

namespace {

using nlohmann::json;

struct ParamRule {
    std::function<bool(const json&)> valid;
    const char* expectation;
};

bool is_int(const json& v) { return v.is_number_integer(); }
bool is_num(const json& v) { return v.is_number(); }
double num(const json& v) { return v.get<double>(); }

const std::map<std::string, ParamRule>& parameter_rules() {
    static const std::map<std::string, ParamRule> rules = {
        {"example_id", {[](const json& v) { return is_int(v) && v.get<int>() >= 1 && v.get<int>() <= 6; },
                        "integer in 1..6"}},
        {"alpha", {[](const json& v) { return is_num(v) && std::isfinite(num(v)); }, "finite number"}},
        {"amplitude", {[](const json& v) { return is_num(v) && std::isfinite(num(v)); }, "finite number"}},
        {"t", {[](const json& v) { return is_num(v) && num(v) >= 0.0; }, "number >= 0"}},
        {"t_end", {[](const json& v) { return is_num(v) && num(v) >= 0.0; }, "number >= 0"}},
        {"n_max", {[](const json& v) { return is_int(v) && v.get<int>() >= 1; }, "integer >= 1"}},
        {"n", {[](const json& v) { return is_int(v) && v.get<int>() >= 1; }, "integer >= 1"}},
        {"dt", {[](const json& v) { return is_num(v) && num(v) > 0.0; }, "number > 0"}},
        {"seed", {[](const json& v) { return v.is_number_unsigned() || (is_int(v) && v.get<long long>() >= 0); },
                  "nonnegative integer"}},
        {"nu", {[](const json& v) { return is_num(v) && num(v) >= 0.0; }, "number >= 0"}},
        {"nu_list", {[](const json& v) {
                         if (!v.is_array() || v.empty()) return false;
                         for (const auto& x : v) {
                             if (!x.is_number() || x.get<double>() < 0.0) return false;
                         }
                         return true;
                     },
                     "array of numbers >= 0"}},
        {"p", {[](const json& v) { return is_int(v) && (v.get<int>() == 0 || v.get<int>() == 1); },
               "0 or 1"}},
        {"m", {[](const json& v) { return is_int(v) && v.get<int>() >= 1; }, "integer >= 1"}},
        {"n_basis", {[](const json& v) { return is_int(v) && v.get<int>() >= 8; }, "integer >= 8"}},
        {"modes", {[](const json& v) { return is_int(v) && v.get<int>() >= 1; }, "integer >= 1"}},
        {"eigvec", {[](const json& v) { return is_int(v) && v.get<int>() >= 1; }, "integer >= 1"}},
        {"lookback", {[](const json& v) { return is_num(v) && num(v) > 0.0; }, "number > 0"}},
        {"zeta", {[](const json& v) { return is_num(v) && std::abs(std::abs(num(v)) - 1.0) < 1e-12; },
                  "+1 or -1"}},
        {"snapshots", {[](const json& v) {
                           if (!v.is_array()) return false;
                           for (const auto& x : v) {
                               if (!x.is_number() || x.get<double>() < 0.0) return false;
                           }
                           return true;
                       },
                       "array of numbers >= 0"}},
        {"forcing", {[](const json& v) {
                         return v.is_string() &&
                                (v == "none" || v == "constant" || v == "white_noise");
                     },
                     "none|constant|white_noise"}},
        {"closure", {[](const json& v) {
                         return v.is_string() && (v == "zero_pad" || v == "absorbing_sponge");
                     },
                     "zero_pad|absorbing_sponge"}},
        {"method", {[](const json& v) {
                        return v.is_string() && (v == "rk4" || v == "euler_maruyama");
                    },
                    "rk4|euler_maruyama"}},
        {"variant", {[](const json& v) {
                         return v.is_string() && (v == "lambda_product" || v == "power");
                     },
                     "lambda_product|power"}},
        {"submode", {[](const json& v) {
                         return v.is_string() && (v == "covariance" || v == "fixed_point" ||
                                                  v == "sample" || v == "variance" ||
                                                  v == "spectrum" || v == "eigvec" ||
                                                  v == "steady");
                     },
                     "a known submode"}},
    };
    return rules;
}

const std::set<std::string>& known_modes() {
    static const std::set<std::string> modes = {"exact",    "integrate",   "stationary",
                                                "spectrum", "asymptotics", "inviscid"};
    return modes;
}

}  // namespace

std::vector<std::string> validate_parameters(const std::string& mode, const json& params) {
    std::vector<std::string> errors;
    if (!params.is_object()) {
        errors.push_back("parameters: must be an object");
        return errors;
    }
    const auto& rules = parameter_rules();
    for (const auto& [key, value] : params.items()) {
        auto it = rules.find(key);
        if (it == rules.end()) {
            errors.push_back("parameters." + key + ": unknown key");
            continue;
        }
        if (!it->second.valid(value)) {
            errors.push_back("parameters." + key + ": expected " + it->second.expectation);
        }
    }
    // cross-field requirements
    if (mode == "exact") {
        if (!params.contains("example_id")) {
            errors.push_back("parameters.example_id: required for mode exact");
        } else if (params["example_id"].is_number_integer() && params["example_id"] == 6) {
            if (!params.contains("alpha")) {
                errors.push_back("parameters.alpha: required for example_id 6 (need alpha > 1)");
            } else if (params["alpha"].is_number() && params["alpha"].get<double>() <= 1.0) {
                errors.push_back("parameters.alpha: example 6 requires alpha > 1");
            }
        }
    }
    if (mode == "asymptotics") {
        if (params.contains("alpha") && params["alpha"].is_number() &&
            params["alpha"].get<double>() <= 0.0) {
            errors.push_back("parameters.alpha: must be > 0");
        }
    }
    return errors;
}

std::vector<std::string> validate_config_json(const json& j, ScenarioConfig* out) {
    std::vector<std::string> errors;
    if (!j.is_object()) {
        errors.push_back("config: top level must be an object");
        return errors;
    }
    static const std::set<std::string> top_keys = {"mode", "model", "parameters", "output"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!top_keys.count(key)) errors.push_back(key + ": unknown key");
    }

    ScenarioConfig cfg;
    if (!j.contains("mode") || !j["mode"].is_string()) {
        errors.push_back("mode: required string");
    } else {
        cfg.mode = j["mode"].get<std::string>();
        if (!known_modes().count(cfg.mode)) {
            errors.push_back("mode: must be one of exact|integrate|stationary|spectrum|"
                             "asymptotics|inviscid");
        }
    }
    if (j.contains("model")) {
        if (!j["model"].is_string() || (j["model"] != "A" && j["model"] != "B")) {
            errors.push_back("model: must be \"A\" or \"B\"");
        } else {
            cfg.model = j["model"].get<std::string>();
        }
    }
    if (j.contains("parameters")) {
        cfg.parameters = j["parameters"];
        auto perrors = validate_parameters(cfg.mode, cfg.parameters);
        errors.insert(errors.end(), perrors.begin(), perrors.end());
    }
    if (j.contains("output")) {
        const json& o = j["output"];
        if (!o.is_object()) {
            errors.push_back("output: must be an object");
        } else {
            static const std::set<std::string> out_keys = {"path", "format"};
            for (const auto& [key, value] : o.items()) {
                (void)value;
                if (!out_keys.count(key)) errors.push_back("output." + key + ": unknown key");
            }
            if (o.contains("path")) {
                if (!o["path"].is_string()) {
                    errors.push_back("output.path: must be a string");
                } else {
                    cfg.output_path = o["path"].get<std::string>();
                }
            }
            if (o.contains("format")) {
                if (!o["format"].is_string() || (o["format"] != "csv" && o["format"] != "json")) {
                    errors.push_back("output.format: must be \"csv\" or \"json\"");
                } else {
                    cfg.output_format = o["format"].get<std::string>();
                }
            }
        }
    }
    if (errors.empty() && out) *out = cfg;
    return errors;
}

std::vector<std::string> validate_config_text(const std::string& text, ScenarioConfig* out) {
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) {
        return {"config: not valid JSON"};
    }
    return validate_config_json(parsed, out);
}

}  // namespace cascade
