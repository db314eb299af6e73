#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "fpe/profile.hpp"

namespace fpe {

/// The similarity-reduced second-order ODE
///   p2(z) y'' + p1(z) y' + p0(z) y = 0
/// with p2 = rho2, p1 = 2 rho2' - rho1 + alpha z, p0 = rho2'' - rho1' + alpha.
/// The reducibility identity p1' = p2'' + p0 holds by construction.
struct ReducedOde {
    Profile p2;
    Profile p1;
    Profile p0;
    double alpha;
    Profile rho1;
    Profile rho2;
};

/// One integration of the reduced ODE: p2 y' + q y = C with
/// q = rho2' - rho1 + alpha z. The vanishing-current boundary condition
/// forces C = 0.
struct FirstIntegral {
    Profile p2;
    Profile q;
    double constant;
};

enum class ShapeForm {
    gaussian_quadratic_exponent, // constant rho2, linear rho1 with slope != alpha
    pure_exponential,            // constant rho2, rho1 slope == alpha
    power_times_exponential,     // rho2 = mu3 z, linear rho1
    generic_quadrature,          // anything else: adaptive quadrature of f
};

/// Unnormalized shape solution y(z) = exp(antiderivative(z)) of the first
/// integral; normalization lives with the solution families.
struct ShapeSolution {
    Profile f;
    std::function<double(double)> antiderivative;
    DomainInterval domain;
    ShapeForm form;

    double y(double z) const { return std::exp(antiderivative(z)); }
};

/// Reduce the scaled FPE to the ODE in y(z). Inputs must be polynomial.
ReducedOde reduce(const Profile& rho1, const Profile& rho2, double alpha);

/// Integrate once and apply J = 0 and x W -> 0 at the domain boundary,
/// fixing the integration constant to zero.
FirstIntegral first_integral(const ReducedOde& ode, const DomainInterval& domain);

/// Closed-form shape where one of the recognized families applies, adaptive
/// quadrature of f anchored inside the domain otherwise. Set force_quadrature
/// to bypass recognition (used to cross-check the closed forms).
ShapeSolution solve_shape(const FirstIntegral& fi, const Profile& rho1, const Profile& rho2,
                          double alpha, const DomainInterval& domain,
                          bool force_quadrature = false);

/// max over samples of |p2 y'' + p1 y' + p0 y| / (1 + |y|) with central
/// differences at relative step 1e-5.
double ode_residual(const ReducedOde& ode, const std::function<double(double)>& y,
                    const std::vector<double>& z_samples);

} // namespace fpe
