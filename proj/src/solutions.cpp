#include "fpe/solutions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fpe/errors.hpp"

namespace fpe {

namespace {

void require_alpha(double alpha) {
    if (!std::isfinite(alpha) || alpha == 0.0) {
        throw InvalidInputError("similarity solution: alpha must be finite and nonzero");
    }
}

void require_time(double t) {
    if (!(t > 0.0)) {
        throw InvalidTimeError("similarity solution: t must be positive");
    }
}

double gaussian_variance(const SimilaritySolution& s, double t) {
    return s.mu4 * std::pow(t, 2.0 * s.alpha) / (s.alpha - s.mu1);
}

double gaussian_mean(const SimilaritySolution& s, double t) {
    return s.mu2 * std::pow(t, s.alpha) / (s.alpha - s.mu1);
}

// Signed exponent rate mu2 / (mu4 t^alpha) of the exponential family.
double exponential_rate(const SimilaritySolution& s, double t) {
    return s.mu2 / (s.mu4 * std::pow(t, s.alpha));
}

double gamma_rate(const SimilaritySolution& s, double t) {
    return (s.alpha - s.mu1) / (s.mu3 * std::pow(t, s.alpha));
}

double gamma_shape(const SimilaritySolution& s) { return s.mu2 / s.mu3; }

} // namespace

double CurrentField::operator()(double x, double t) const {
    return current(solution, x, t);
}

SimilaritySolution gaussian_solution(double alpha, double mu1, double mu2, double mu4) {
    require_alpha(alpha);
    if (!std::isfinite(mu1) || !std::isfinite(mu2) || !std::isfinite(mu4)) {
        throw InvalidInputError("gaussian_solution: non-finite parameter");
    }
    const bool valid = (mu4 > 0.0 && mu1 < alpha) || (mu4 < 0.0 && mu1 > alpha);
    if (!valid) {
        throw UnnormalizableError(
            "gaussian_solution: requires (mu4 > 0 and mu1 < alpha) or (mu4 < 0 and "
            "mu1 > alpha); got mu4 = " + std::to_string(mu4) +
            ", mu1 = " + std::to_string(mu1) + ", alpha = " + std::to_string(alpha));
    }
    const double norm = std::sqrt((alpha - mu1) / (2.0 * std::numbers::pi * mu4)) *
                        std::exp(-mu2 * mu2 / (2.0 * mu4 * (alpha - mu1)));
    return SimilaritySolution{Family::gaussian, alpha,  mu1, mu2, 0.0, mu4,
                              DomainInterval::full_line(), norm};
}

SimilaritySolution exponential_solution(double alpha, double mu2, double mu4) {
    require_alpha(alpha);
    if (!std::isfinite(mu2) || !std::isfinite(mu4)) {
        throw InvalidInputError("exponential_solution: non-finite parameter");
    }
    if (mu2 == 0.0 || mu4 == 0.0) {
        throw DegenerateFamilyError("exponential_solution: mu2 and mu4 must be nonzero");
    }
    const double ratio = mu2 / mu4;
    const DomainInterval dom =
        ratio < 0.0 ? DomainInterval::nonnegative() : DomainInterval::nonpositive();
    return SimilaritySolution{Family::exponential, alpha, alpha, mu2, 0.0, mu4,
                              dom, std::abs(ratio)};
}

SimilaritySolution gamma_solution(double alpha, double mu1, double mu2, double mu3) {
    require_alpha(alpha);
    if (!std::isfinite(mu1) || !std::isfinite(mu2) || !std::isfinite(mu3) || mu3 == 0.0) {
        throw InvalidInputError("gamma_solution: parameters must be finite, mu3 nonzero");
    }
    if (!((alpha - mu1) / mu3 > 0.0)) {
        throw UnnormalizableError("gamma_solution: requires (alpha - mu1)/mu3 > 0; got " +
                                  std::to_string((alpha - mu1) / mu3));
    }
    const double k = mu2 / mu3;
    if (!(k >= 1.0)) {
        throw UnnormalizableError("gamma_solution: requires mu2/mu3 >= 1; got " +
                                  std::to_string(k));
    }
    const double norm =
        std::exp(k * std::log((alpha - mu1) / mu3) - std::lgamma(k));
    return SimilaritySolution{Family::gamma, alpha, mu1, mu2, mu3, 0.0,
                              DomainInterval::nonnegative(), norm};
}

double density(const SimilaritySolution& sol, double x, double t) {
    require_time(t);
    if (!sol.domain.contains(x)) return 0.0;
    switch (sol.family) {
        case Family::gaussian: {
            const double s2 = gaussian_variance(sol, t);
            const double m = gaussian_mean(sol, t);
            const double dx = x - m;
            return std::exp(-dx * dx / (2.0 * s2)) /
                   std::sqrt(2.0 * std::numbers::pi * s2);
        }
        case Family::exponential: {
            const double r = exponential_rate(sol, t);
            return std::abs(r) * std::exp(r * x);
        }
        case Family::gamma: {
            const double lam = gamma_rate(sol, t);
            const double k = gamma_shape(sol);
            if (x == 0.0) {
                return k == 1.0 ? lam : 0.0;
            }
            return std::exp(k * std::log(lam) - std::lgamma(k) +
                            (k - 1.0) * std::log(x) - lam * x);
        }
    }
    throw Error("density: unknown family");
}

double current(const SimilaritySolution& sol, double x, double t) {
    return sol.alpha * x * density(sol, x, t) / t;
}

ProfileStats profile_stats(const SimilaritySolution& sol, double t) {
    require_time(t);
    ProfileStats st{};
    switch (sol.family) {
        case Family::gaussian: {
            const double s2 = gaussian_variance(sol, t);
            st.mean = gaussian_mean(sol, t);
            st.variance = s2;
            st.peak_location = st.mean;
            st.peak_value = 1.0 / std::sqrt(2.0 * std::numbers::pi * s2);
            st.fwhm = 2.0 * std::sqrt(2.0 * std::numbers::ln2) * std::sqrt(s2);
            return st;
        }
        case Family::exponential: {
            const double r = std::abs(exponential_rate(sol, t));
            const double sign =
                sol.domain.kind == DomainKind::half_line_nonnegative ? 1.0 : -1.0;
            st.peak_location = 0.0; // origin endpoint of the half line
            st.peak_value = r;
            st.mean = sign / r;
            st.variance = 1.0 / (r * r);
            return st;
        }
        case Family::gamma: {
            const double lam = gamma_rate(sol, t);
            const double k = gamma_shape(sol);
            st.peak_location = k > 1.0 ? (k - 1.0) / lam : 0.0;
            st.peak_value = density(sol, st.peak_location, t);
            st.mean = k / lam;
            st.variance = k / (lam * lam);
            return st;
        }
    }
    throw Error("profile_stats: unknown family");
}

double fwhm(const SimilaritySolution& sol, double t) {
    if (sol.family != Family::gaussian) {
        throw UnsupportedStatisticError("fwhm: defined for the gaussian family only");
    }
    return *profile_stats(sol, t).fwhm;
}

double crossing_time(double mu1) {
    if (!std::isfinite(mu1) || mu1 == 0.5) {
        throw UndefinedCrossingError("crossing_time: undefined at mu1 = 1/2");
    }
    return 2.0 * (1.0 - mu1) / (1.0 - 2.0 * mu1);
}

SimilaritySolution apply_symmetry(const SimilaritySolution& sol, const SymmetryTransform& tf) {
    using Kind = SymmetryTransform::Kind;
    switch (tf.kind) {
        case Kind::mirror_mu2:
            if (sol.family == Family::gaussian) {
                return gaussian_solution(sol.alpha, sol.mu1, -sol.mu2, sol.mu4);
            }
            if (sol.family == Family::exponential) {
                return exponential_solution(sol.alpha, -sol.mu2, sol.mu4);
            }
            throw UnsupportedTransformError(
                "apply_symmetry: mirror_mu2 applies to gaussian/exponential only");

        case Kind::conjugate_params:
            if (sol.family != Family::gaussian) {
                throw UnsupportedTransformError(
                    "apply_symmetry: conjugate_params applies to the gaussian family only");
            }
            return gaussian_solution(sol.alpha, 2.0 * sol.alpha - sol.mu1, -sol.mu2,
                                     -sol.mu4);

        case Kind::ratio_rescale: {
            const double k = tf.factor;
            if (!std::isfinite(k) || k == 0.0) {
                throw InvalidInputError("apply_symmetry: rescale factor must be nonzero");
            }
            if (sol.family == Family::exponential) {
                return exponential_solution(sol.alpha, k * sol.mu2, k * sol.mu4);
            }
            if (sol.family == Family::gamma) {
                // Preserve (mu1 - alpha)/mu3 and mu2/mu3.
                return gamma_solution(sol.alpha, sol.alpha + k * (sol.mu1 - sol.alpha),
                                      k * sol.mu2, k * sol.mu3);
            }
            throw UnsupportedTransformError(
                "apply_symmetry: ratio_rescale applies to exponential/gamma only");
        }

        case Kind::time_inversion:
            if (sol.family != Family::gamma) {
                throw UnsupportedTransformError(
                    "apply_symmetry: time_inversion applies to the gamma family only");
            }
            return gamma_solution(-sol.alpha, sol.mu1 - 2.0 * sol.alpha, sol.mu2, sol.mu3);
    }
    throw Error("apply_symmetry: unknown transform");
}

} // namespace fpe
