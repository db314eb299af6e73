#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fpe/errors.hpp"
#include "fpe/oracle.hpp"
#include "fpe/runner.hpp"
#include "fpe/scaling.hpp"

namespace {

// Exit codes: 0 success, 2 validation-tolerance failure, 3 config/usage
// error, 4 numerical-scheme error.
constexpr int kExitOk = 0;
constexpr int kExitTolerance = 2;
constexpr int kExitConfig = 3;
constexpr int kExitNumerical = 4;

std::vector<double> parse_coeff_list(const std::string& text, const std::string& name) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw fpe::ConfigError(name + ": cannot parse coefficient '" + item + "'");
        }
    }
    if (out.empty()) {
        throw fpe::ConfigError(name + ": empty coefficient list");
    }
    return out;
}

int cmd_figure(const std::string& config_path) {
    const fpe::ExperimentConfig config = fpe::load_config(config_path);
    const fpe::FigureReport report = fpe::run_figure(config);
    for (const auto& path : report.csv_paths) {
        std::cout << "wrote " << path << "\n";
    }
    std::cout << "wrote " << report.summary_path << "\n";
    return kExitOk;
}

int cmd_validate(const std::string& config_path) {
    const fpe::ExperimentConfig config = fpe::load_config(config_path);
    const fpe::ValidateReport report = fpe::run_validate(config);
    for (const auto& e : report.fd_entries) {
        std::printf("l1  t=%-8g value=%.6e tolerance=%.1e %s\n", e.time, e.l1, e.tolerance,
                    e.pass ? "pass" : "FAIL");
    }
    if (report.mc_entry) {
        const auto& e = *report.mc_entry;
        std::printf("ks  t=%-8g value=%.6e tolerance=%.1e %s\n", e.time, e.ks, e.tolerance,
                    e.pass ? "pass" : "FAIL");
    }
    if (!report.report_path.empty()) {
        std::cout << "wrote " << report.report_path << "\n";
    }
    return report.all_pass ? kExitOk : kExitTolerance;
}

int cmd_qes_check(const std::string& p, const std::string& q, const std::string& r) {
    const fpe::QesVerdict verdict = fpe::run_qes_check(
        parse_coeff_list(p, "--p"), parse_coeff_list(q, "--q"), parse_coeff_list(r, "--r"));
    std::cout << (verdict.reducible ? "reducible" : "non-reducible") << "\n";
    std::cout << "residual Q' - P'' - R = " << fpe::poly::format(verdict.residual) << "\n";
    return kExitOk;
}

int cmd_exponents(double a, double d, double e) {
    const fpe::ScalingExponents ex = fpe::solve_exponents(a, d, e);
    std::printf("a = %.17g\n", ex.a);
    std::printf("b = %.17g\n", ex.b);
    std::printf("c = %.17g\n", ex.c);
    std::printf("d = %.17g\n", ex.d);
    std::printf("e = %.17g\n", ex.e);
    std::printf("alpha = %.17g\n", ex.alpha);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Similarity solutions of Fokker-Planck equations with "
                 "time-dependent coefficients"};
    app.require_subcommand(1);

    std::string figure_config, validate_config;
    std::string qes_p, qes_q, qes_r;
    double exp_a = 0.0, exp_d = 0.0, exp_e = 0.0;

    auto* figure = app.add_subcommand("figure", "Emit CSV slices x,W,J per configured time");
    figure->add_option("config", figure_config, "experiment config (JSON, spec_version 1)")
        ->required();

    auto* validate = app.add_subcommand(
        "validate", "Cross-validate the closed form against the FD/MC oracles");
    validate->add_option("config", validate_config, "experiment config (JSON, spec_version 1)")
        ->required();

    auto* qes = app.add_subcommand(
        "qes-check", "Test whether P y'' + Q y' + R y = 0 can be a similarity-reduced FPE");
    qes->add_option("--p", qes_p, "P coefficients, ascending, comma-separated")->required();
    qes->add_option("--q", qes_q, "Q coefficients, ascending, comma-separated")->required();
    qes->add_option("--r", qes_r, "R coefficients, ascending, comma-separated")->required();

    auto* exponents =
        app.add_subcommand("exponents", "Solve the scaling relations b = a-d = 2a-e, c = -a");
    exponents->add_option("--a", exp_a, "spatial scaling exponent a")->required();
    exponents->add_option("--d", exp_d, "drift scaling exponent d")->required();
    exponents->add_option("--e", exp_e, "diffusion scaling exponent e")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (figure->parsed()) return cmd_figure(figure_config);
        if (validate->parsed()) return cmd_validate(validate_config);
        if (qes->parsed()) return cmd_qes_check(qes_p, qes_q, qes_r);
        if (exponents->parsed()) return cmd_exponents(exp_a, exp_d, exp_e);
    } catch (const fpe::ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitConfig;
    } catch (const fpe::IoError& ex) {
        std::cerr << "io error: " << ex.what() << "\n";
        return kExitConfig;
    } catch (const fpe::InvalidInputError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitConfig;
    } catch (const fpe::Error& ex) {
        std::cerr << "numerical error: " << ex.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitNumerical;
    }
    return kExitConfig;
}
