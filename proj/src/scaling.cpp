#include "fpe/scaling.hpp"

#include <cmath>

#include "fpe/errors.hpp"

namespace fpe {

ScalingExponents solve_exponents(double a, double d, double e) {
    if (!std::isfinite(a) || !std::isfinite(d) || !std::isfinite(e)) {
        throw InvalidInputError("solve_exponents: non-finite input");
    }
    if (a == 0.0) {
        throw InvalidInputError("solve_exponents: a must be nonzero");
    }
    const double b = a - d;
    if (std::abs(b - (2.0 * a - e)) > 1e-12) {
        throw InconsistentScalingError("solve_exponents: a - d != 2a - e");
    }
    if (b == 0.0) {
        throw DegenerateTimeScalingError("solve_exponents: b = a - d vanishes");
    }
    return ScalingExponents{a, b, -a, d, e, a / b};
}

double similarity_variable(double x, double t, double alpha) {
    if (!(t > 0.0)) {
        throw InvalidTimeError("similarity_variable: t must be positive");
    }
    if (!std::isfinite(alpha) || alpha == 0.0) {
        throw InvalidInputError("similarity_variable: alpha must be finite and nonzero");
    }
    return x * std::pow(t, -alpha);
}

CoefficientPair synthesize_coefficients(const Profile& rho1, const Profile& rho2, double alpha) {
    if (!std::isfinite(alpha) || alpha == 0.0) {
        throw InvalidInputError("synthesize_coefficients: alpha must be finite and nonzero");
    }
    CoefficientPair pair;
    pair.alpha = alpha;
    pair.rho1 = rho1;
    pair.rho2 = rho2;
    pair.drift = [rho1, alpha](double x, double t) {
        return std::pow(t, alpha - 1.0) * eval(rho1, x * std::pow(t, -alpha));
    };
    pair.diffusion = [rho2, alpha](double x, double t) {
        return std::pow(t, 2.0 * alpha - 1.0) * eval(rho2, x * std::pow(t, -alpha));
    };
    return pair;
}

bool verify_scale_invariance(const CoefficientPair& pair, double epsilon,
                             const std::vector<std::pair<double, double>>& samples) {
    if (!(epsilon > 0.0) || epsilon == 1.0) {
        throw InvalidInputError("verify_scale_invariance: epsilon must be positive and != 1");
    }
    // Gauge b = 1: a = alpha, d = alpha - 1, e = 2 alpha - 1.
    const double a = pair.alpha;
    const double ex = std::pow(epsilon, a);
    const double et = epsilon;
    const double ed = std::pow(epsilon, a - 1.0);
    const double ee = std::pow(epsilon, 2.0 * a - 1.0);

    constexpr double tol = 1e-10;
    auto close = [](double lhs, double rhs, double eps) {
        return std::abs(lhs - rhs) <= eps * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    };
    for (const auto& [x, t] : samples) {
        if (!(t > 0.0)) {
            throw InvalidTimeError("verify_scale_invariance: samples require t > 0");
        }
        if (!close(pair.drift(ex * x, et * t), ed * pair.drift(x, t), tol)) return false;
        if (!close(pair.diffusion(ex * x, et * t), ee * pair.diffusion(x, t), tol)) return false;
    }
    return true;
}

} // namespace fpe
