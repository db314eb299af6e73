#include "fpe/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fpe/errors.hpp"

namespace fpe {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& path) {
    if (!j.is_number()) {
        throw ConfigError(path + ": expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError(path + ": must be finite");
    }
    return v;
}

double require_param(const json& params, const char* key, Family family) {
    if (!params.contains(key)) {
        throw ConfigError(std::string("parameters.") + key + ": required for family " +
                          family_name(family));
    }
    return require_number(params.at(key), std::string("parameters.") + key);
}

Family parse_family(const std::string& name) {
    if (name == "gaussian") return Family::gaussian;
    if (name == "exponential") return Family::exponential;
    if (name == "gamma") return Family::gamma;
    throw ConfigError("family: unknown value '" + name +
                      "' (expected gaussian, exponential, or gamma)");
}

} // namespace

const char* family_name(Family family) {
    switch (family) {
        case Family::gaussian: return "gaussian";
        case Family::exponential: return "exponential";
        case Family::gamma: return "gamma";
    }
    return "unknown";
}

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& ex) {
        throw ConfigError(std::string("config: invalid JSON: ") + ex.what());
    }
    if (!root.is_object()) {
        throw ConfigError("config: top level must be an object");
    }
    if (!root.contains("spec_version") || !root.at("spec_version").is_number_integer()) {
        throw ConfigError("spec_version: required integer field");
    }
    ExperimentConfig cfg;
    cfg.spec_version = root.at("spec_version").get<int>();
    if (cfg.spec_version != 1) {
        throw ConfigError("spec_version: unsupported version " +
                          std::to_string(cfg.spec_version));
    }

    if (!root.contains("family") || !root.at("family").is_string()) {
        throw ConfigError("family: required string field");
    }
    cfg.family = parse_family(root.at("family").get<std::string>());

    if (!root.contains("parameters") || !root.at("parameters").is_object()) {
        throw ConfigError("parameters: required object field");
    }
    const json& params = root.at("parameters");
    cfg.alpha = require_param(params, "alpha", cfg.family);
    switch (cfg.family) {
        case Family::gaussian:
            cfg.mu1 = require_param(params, "mu1", cfg.family);
            cfg.mu2 = require_param(params, "mu2", cfg.family);
            cfg.mu4 = require_param(params, "mu4", cfg.family);
            break;
        case Family::exponential:
            cfg.mu2 = require_param(params, "mu2", cfg.family);
            cfg.mu4 = require_param(params, "mu4", cfg.family);
            cfg.mu1 = cfg.alpha; // definitional for this family
            if (params.contains("mu1") &&
                require_number(params.at("mu1"), "parameters.mu1") != cfg.alpha) {
                throw ConfigError("parameters.mu1: exponential family requires mu1 == alpha");
            }
            break;
        case Family::gamma:
            cfg.mu1 = require_param(params, "mu1", cfg.family);
            cfg.mu2 = require_param(params, "mu2", cfg.family);
            cfg.mu3 = require_param(params, "mu3", cfg.family);
            break;
    }

    if (!root.contains("times") || !root.at("times").is_array() || root.at("times").empty()) {
        throw ConfigError("times: required non-empty array");
    }
    double prev = 0.0;
    int idx = 0;
    for (const auto& item : root.at("times")) {
        const std::string path = "times[" + std::to_string(idx) + "]";
        const double t = require_number(item, path);
        if (!(t > 0.0)) {
            throw ConfigError(path + ": must be > 0");
        }
        if (idx > 0 && !(t > prev)) {
            throw ConfigError(path + ": times must be strictly increasing");
        }
        cfg.times.push_back(t);
        prev = t;
        ++idx;
    }

    if (!root.contains("grid") || !root.at("grid").is_object()) {
        throw ConfigError("grid: required object field");
    }
    const json& grid = root.at("grid");
    cfg.grid.x_min = require_number(grid.value("x_min", json()), "grid.x_min");
    cfg.grid.x_max = require_number(grid.value("x_max", json()), "grid.x_max");
    if (!grid.contains("n") || !grid.at("n").is_number_integer()) {
        throw ConfigError("grid.n: required integer field");
    }
    cfg.grid.n = grid.at("n").get<int>();
    if (!(cfg.grid.x_min < cfg.grid.x_max)) {
        throw ConfigError("grid.x_min: must be below grid.x_max");
    }
    if (cfg.grid.n < 16) {
        throw ConfigError("grid.n: must be at least 16");
    }

    if (root.contains("oracle")) {
        const json& oracle = root.at("oracle");
        if (!oracle.is_object()) {
            throw ConfigError("oracle: must be an object");
        }
        cfg.oracle.enabled = oracle.value("enabled", false);
        cfg.oracle.n_steps = oracle.value("n_steps", 0);
        cfg.oracle.n_paths = oracle.value("n_paths", 0);
        cfg.oracle.dt = oracle.value("dt", 0.0);
        cfg.oracle.seed = oracle.value("seed", std::uint64_t{0});
        if (cfg.oracle.enabled && cfg.oracle.n_steps < 1) {
            throw ConfigError("oracle.n_steps: must be positive when the oracle is enabled");
        }
        if (cfg.oracle.n_paths < 0) {
            throw ConfigError("oracle.n_paths: must be non-negative");
        }
        if (cfg.oracle.n_paths > 0 && !(cfg.oracle.dt > 0.0)) {
            throw ConfigError("oracle.dt: must be positive when n_paths > 0");
        }
    }

    if (root.contains("output_path")) {
        if (!root.at("output_path").is_string()) {
            throw ConfigError("output_path: must be a string");
        }
        cfg.output_path = root.at("output_path").get<std::string>();
    }

    if (const char* env_seed = std::getenv("FPE_SEED")) {
        try {
            cfg.oracle.seed = std::stoull(env_seed);
        } catch (const std::exception&) {
            throw ConfigError("FPE_SEED: not a valid unsigned integer");
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) {
        throw ConfigError("config: cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& config) {
    json params{{"alpha", config.alpha}};
    switch (config.family) {
        case Family::gaussian:
            params["mu1"] = config.mu1;
            params["mu2"] = config.mu2;
            params["mu4"] = config.mu4;
            break;
        case Family::exponential:
            params["mu2"] = config.mu2;
            params["mu4"] = config.mu4;
            break;
        case Family::gamma:
            params["mu1"] = config.mu1;
            params["mu2"] = config.mu2;
            params["mu3"] = config.mu3;
            break;
    }
    json root{
        {"spec_version", config.spec_version},
        {"family", family_name(config.family)},
        {"parameters", params},
        {"times", config.times},
        {"grid", {{"x_min", config.grid.x_min}, {"x_max", config.grid.x_max},
                  {"n", config.grid.n}}},
        {"oracle", {{"enabled", config.oracle.enabled},
                    {"n_steps", config.oracle.n_steps},
                    {"n_paths", config.oracle.n_paths},
                    {"dt", config.oracle.dt},
                    {"seed", config.oracle.seed}}},
        {"output_path", config.output_path},
    };
    return root.dump(2) + "\n";
}

void save_config(const ExperimentConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out.is_open()) {
        throw IoError("config: cannot write " + path);
    }
    out << serialize_config(config);
    if (!out.good()) {
        throw IoError("config: write failed for " + path);
    }
}

SimilaritySolution solution_from_config(const ExperimentConfig& config) {
    try {
        switch (config.family) {
            case Family::gaussian:
                return gaussian_solution(config.alpha, config.mu1, config.mu2, config.mu4);
            case Family::exponential:
                return exponential_solution(config.alpha, config.mu2, config.mu4);
            case Family::gamma:
                return gamma_solution(config.alpha, config.mu1, config.mu2, config.mu3);
        }
    } catch (const Error& ex) {
        throw ConfigError(std::string("parameters: ") + ex.what());
    }
    throw ConfigError("family: unknown family");
}

} // namespace fpe
