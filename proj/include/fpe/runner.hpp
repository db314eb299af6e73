#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fpe/config.hpp"
#include "fpe/polynomial.hpp"
#include "fpe/scaling.hpp"

namespace fpe {

/// Per-time summary of a figure run.
struct SummaryRecord {
    double time;
    double peak_location;
    double peak_value;
    std::optional<double> fwhm;
    double mean;
    double variance;
    double mass_quadrature; // adaptive quadrature of the density over its domain
};

struct FigureReport {
    std::vector<std::string> csv_paths;
    std::string summary_path;
    std::vector<SummaryRecord> records;
};

/// Write one CSV (columns x,W,J; 17 significant digits) per configured time,
/// plus a line-delimited JSON summary. Requires config.output_path.
FigureReport run_figure(const ExperimentConfig& config);

struct ValidateEntry {
    double time;
    double l1;
    double tolerance;
    bool pass;
};

struct KsEntry {
    double time;
    double ks;
    double tolerance;
    bool pass;
};

struct ValidateReport {
    std::vector<ValidateEntry> fd_entries;
    std::optional<KsEntry> mc_entry;
    bool all_pass = true;
    std::string report_path; // empty when no output_path configured
};

/// Evolve the analytic solution from times.front() to times.back() with the
/// finite-difference oracle (total oracle.n_steps, split across intervals)
/// and compare against the closed form at every configured time. When
/// oracle.n_paths > 0, also run the Euler-Maruyama ensemble and report the
/// KS statistic at the final time. Per-family tolerances: L1 1e-3 (gaussian,
/// exponential), 5e-3 (gamma); KS 0.01 (gaussian, exponential), 0.02 (gamma).
ValidateReport run_validate(const ExperimentConfig& config);

/// Coefficient pair of the configured family, for oracle runs.
CoefficientPair coefficients_from_config(const ExperimentConfig& config);

double fd_l1_tolerance(Family family);
double ks_tolerance(Family family);

struct QesVerdict {
    bool reducible;
    poly::Coeffs residual; // Q' - P'' - R
};

QesVerdict run_qes_check(const std::vector<double>& p, const std::vector<double>& q,
                         const std::vector<double>& r);

} // namespace fpe
