#include "fpe/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "fpe/errors.hpp"
#include "fpe/oracle.hpp"
#include "fpe/qes.hpp"
#include "fpe/quadrature.hpp"

namespace fpe {

namespace {

namespace fs = std::filesystem;

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

fs::path prepare_output_dir(const std::string& output_path) {
    if (output_path.empty()) {
        throw ConfigError("output_path: required for this command");
    }
    fs::path dir(output_path);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("output_path: cannot create directory " + output_path);
    }
    return dir;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out.is_open()) {
        throw IoError("cannot write " + path.string());
    }
    return out;
}

double domain_mass(const SimilaritySolution& sol, double t) {
    const SupportInterval sup = effective_support(sol, t);
    return integrate([&](double x) { return density(sol, x, t); }, sup.lower, sup.upper,
                     QuadratureOptions{1e-12, 1e-14, 50});
}

nlohmann::json record_json(const SummaryRecord& r) {
    nlohmann::json j{
        {"time", r.time},
        {"peak_location", r.peak_location},
        {"peak_value", r.peak_value},
        {"mean", r.mean},
        {"variance", r.variance},
        {"normalization_check", r.mass_quadrature},
    };
    if (r.fwhm) j["fwhm"] = *r.fwhm;
    return j;
}

} // namespace

double fd_l1_tolerance(Family family) {
    return family == Family::gamma ? 5e-3 : 1e-3;
}

double ks_tolerance(Family family) {
    return family == Family::gamma ? 0.02 : 0.01;
}

CoefficientPair coefficients_from_config(const ExperimentConfig& config) {
    const Profile rho1 = make_polynomial({config.mu2, config.mu1});
    const Profile rho2 = config.family == Family::gamma
                             ? make_polynomial({0.0, config.mu3})
                             : make_polynomial({config.mu4});
    return synthesize_coefficients(rho1, rho2, config.alpha);
}

FigureReport run_figure(const ExperimentConfig& config) {
    const SimilaritySolution sol = solution_from_config(config);
    const fs::path dir = prepare_output_dir(config.output_path);

    FigureReport report;
    const double dx = (config.grid.x_max - config.grid.x_min) / (config.grid.n - 1);

    for (std::size_t k = 0; k < config.times.size(); ++k) {
        const double t = config.times[k];
        const fs::path csv_path = dir / ("figure_t" + std::to_string(k) + ".csv");
        std::ofstream csv = open_out(csv_path);
        csv << "x,W,J\n";
        for (int i = 0; i < config.grid.n; ++i) {
            const double x = config.grid.x_min + i * dx;
            const double w = density(sol, x, t);
            const double j = current(sol, x, t);
            csv << format17(x) << ',' << format17(w) << ',' << format17(j) << '\n';
        }
        if (!csv.good()) {
            throw IoError("write failed for " + csv_path.string());
        }
        report.csv_paths.push_back(csv_path.string());

        const ProfileStats st = profile_stats(sol, t);
        report.records.push_back(SummaryRecord{t, st.peak_location, st.peak_value, st.fwhm,
                                               st.mean, st.variance, domain_mass(sol, t)});
    }

    const fs::path summary_path = dir / "summary.jsonl";
    std::ofstream summary = open_out(summary_path);
    for (const auto& r : report.records) {
        summary << record_json(r).dump() << '\n';
    }
    if (!summary.good()) {
        throw IoError("write failed for " + summary_path.string());
    }
    report.summary_path = summary_path.string();
    return report;
}

ValidateReport run_validate(const ExperimentConfig& config) {
    if (!config.oracle.enabled) {
        throw ConfigError("oracle.enabled: validation requires the oracle");
    }
    if (config.times.size() < 2) {
        throw ConfigError("times: validation requires at least two times");
    }
    const SimilaritySolution sol = solution_from_config(config);
    const CoefficientPair pair = coefficients_from_config(config);

    const double t0 = config.times.front();
    const double t_last = config.times.back();
    const double span = t_last - t0;
    const double l1_tol = fd_l1_tolerance(config.family);

    ValidateReport report;
    GridDensity state =
        sample_grid_density(sol, config.grid.x_min, config.grid.x_max, config.grid.n, t0);

    for (std::size_t k = 1; k < config.times.size(); ++k) {
        const double t = config.times[k];
        const double frac = (t - config.times[k - 1]) / span;
        const int steps =
            std::max(1, static_cast<int>(std::lround(config.oracle.n_steps * frac)));
        state = fd_evolve(pair, state, t, steps);
        const GridDensity exact =
            sample_grid_density(sol, config.grid.x_min, config.grid.x_max, config.grid.n, t);
        const double l1 = l1_distance(state, exact);
        const bool pass = l1 < l1_tol;
        report.fd_entries.push_back(ValidateEntry{t, l1, l1_tol, pass});
        report.all_pass = report.all_pass && pass;
    }

    if (config.oracle.n_paths > 0) {
        const PathEnsemble ensemble =
            mc_sample(pair, sol, t0, t_last, config.oracle.n_paths, config.oracle.dt,
                      config.oracle.seed);
        const double ks = ks_statistic(
            ensemble, [&](double x) { return analytic_cdf(sol, x, t_last); });
        const double tol = ks_tolerance(config.family);
        const bool pass = ks < tol;
        report.mc_entry = KsEntry{t_last, ks, tol, pass};
        report.all_pass = report.all_pass && pass;
    }

    if (!config.output_path.empty()) {
        const fs::path dir = prepare_output_dir(config.output_path);
        const fs::path path = dir / "validate.jsonl";
        std::ofstream out = open_out(path);
        for (const auto& e : report.fd_entries) {
            out << nlohmann::json{{"metric", "l1"},
                                  {"time", e.time},
                                  {"value", e.l1},
                                  {"tolerance", e.tolerance},
                                  {"pass", e.pass}}
                       .dump()
                << '\n';
        }
        if (report.mc_entry) {
            const auto& e = *report.mc_entry;
            out << nlohmann::json{{"metric", "ks"},
                                  {"time", e.time},
                                  {"value", e.ks},
                                  {"tolerance", e.tolerance},
                                  {"pass", e.pass}}
                       .dump()
                << '\n';
        }
        if (!out.good()) {
            throw IoError("write failed for " + path.string());
        }
        report.report_path = path.string();
    }
    return report;
}

QesVerdict run_qes_check(const std::vector<double>& p, const std::vector<double>& q,
                         const std::vector<double>& r) {
    const QesOde ode =
        make_qes_ode(make_polynomial(p), make_polynomial(q), make_polynomial(r));
    return QesVerdict{fpe_reducible(ode), reducibility_residual(ode)};
}

} // namespace fpe
