#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpe/solutions.hpp"

namespace fpe {

struct GridSpec {
    double x_min = 0.0;
    double x_max = 1.0;
    int n = 16;
};

struct OracleConfig {
    bool enabled = false;
    int n_steps = 0;     // total Crank-Nicolson steps across [times.front(), times.back()]
    int n_paths = 0;     // 0 disables the Monte-Carlo leg
    double dt = 0.0;     // Euler-Maruyama step
    std::uint64_t seed = 0;
};

/// One experiment: a solution family, its parameters, the report times, the
/// spatial grid, and the oracle settings. Serialized as JSON with a mandatory
/// `spec_version: 1` field; see README for the schema.
struct ExperimentConfig {
    int spec_version = 1;
    Family family = Family::gaussian;
    double alpha = 1.0;
    double mu1 = 0.0;
    double mu2 = 0.0;
    double mu3 = 0.0; // gamma only
    double mu4 = 0.0; // gaussian/exponential only
    std::vector<double> times;
    GridSpec grid;
    OracleConfig oracle;
    std::string output_path;
};

/// Parse and validate a config file. Errors carry the offending field path.
/// The FPE_SEED environment variable, when set, overrides oracle.seed.
ExperimentConfig load_config(const std::string& path);

ExperimentConfig parse_config(const std::string& json_text);

std::string serialize_config(const ExperimentConfig& config);

void save_config(const ExperimentConfig& config, const std::string& path);

/// Instantiate the configured family (validated by the family constructor).
SimilaritySolution solution_from_config(const ExperimentConfig& config);

const char* family_name(Family family);

} // namespace fpe
