#pragma once

#include <optional>

#include "fpe/profile.hpp"

namespace fpe {

enum class Family { gaussian, exponential, gamma };

/// A fully specified, normalized closed-form density W(x,t) = A t^(-alpha) y(z).
///
/// gaussian:    W = sqrt((alpha-mu1)/(2 pi mu4 t^(2 alpha)))
///                  exp(-((alpha-mu1)/(2 mu4 t^(2 alpha))) (x - mu2 t^alpha/(alpha-mu1))^2)
/// exponential: W = |mu2/(mu4 t^alpha)| exp((mu2/(mu4 t^alpha)) x), mu1 == alpha
/// gamma:       W = lam^k / Gamma(k) x^(k-1) exp(-lam x),
///              k = mu2/mu3, lam = (alpha-mu1)/(mu3 t^alpha), on [0, inf)
struct SimilaritySolution {
    Family family;
    double alpha;
    double mu1; // exponential: held implicitly at alpha
    double mu2;
    double mu3; // gamma only
    double mu4; // gaussian / exponential only
    DomainInterval domain;
    double normalization; // the time-independent A of W = A t^(-alpha) exp(int f)
};

/// Probability current J(x,t) = alpha x W(x,t) / t of a similarity solution.
struct CurrentField {
    SimilaritySolution solution;
    double operator()(double x, double t) const;
};

struct ProfileStats {
    double peak_location;
    double peak_value;
    double mean;
    double variance;
    std::optional<double> fwhm; // gaussian only
};

SimilaritySolution gaussian_solution(double alpha, double mu1, double mu2, double mu4);
SimilaritySolution exponential_solution(double alpha, double mu2, double mu4);
SimilaritySolution gamma_solution(double alpha, double mu1, double mu2, double mu3);

/// W(x,t); zero outside the domain. Requires t > 0.
double density(const SimilaritySolution& sol, double x, double t);

/// J(x,t) = alpha x W(x,t) / t.
double current(const SimilaritySolution& sol, double x, double t);

/// Closed-form statistics at time t.
ProfileStats profile_stats(const SimilaritySolution& sol, double t);

/// FWHM of the gaussian family; throws UnsupportedStatisticError otherwise.
double fwhm(const SimilaritySolution& sol, double t);

/// Time at which the alpha=1/2 (constant diffusion) and alpha=1 (diffusion
/// linear in t) mu2=0 solutions with equal mu4 coincide:
/// t_c = 2 (1 - mu1) / (1 - 2 mu1).
double crossing_time(double mu1);

struct SymmetryTransform {
    enum class Kind { mirror_mu2, conjugate_params, ratio_rescale, time_inversion };
    Kind kind;
    double factor = 1.0; // ratio_rescale only

    static SymmetryTransform mirror_mu2() { return {Kind::mirror_mu2, 1.0}; }
    static SymmetryTransform conjugate_params() { return {Kind::conjugate_params, 1.0}; }
    static SymmetryTransform ratio_rescale(double k) { return {Kind::ratio_rescale, k}; }
    static SymmetryTransform time_inversion() { return {Kind::time_inversion, 1.0}; }
};

/// Parameter-space symmetries:
///   mirror_mu2       (gaussian, exponential): mu2 -> -mu2, W'(x,t) = W(-x,t)
///   conjugate_params (gaussian): (mu1,mu2,mu4) -> (2 alpha - mu1, -mu2, -mu4), W unchanged
///   ratio_rescale(k) (exponential, gamma): scales the parameter ratios away, W unchanged
///   time_inversion   (gamma): (alpha,mu1) -> (-alpha, mu1 - 2 alpha); W at t maps to W at 1/t
SimilaritySolution apply_symmetry(const SimilaritySolution& sol, const SymmetryTransform& tf);

} // namespace fpe
