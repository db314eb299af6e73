#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "fpe/profile.hpp"

namespace fpe {

/// The scaling indices of x -> eps^a x, t -> eps^b t with W, D1, D2 picking up
/// eps^c, eps^d, eps^e. Consistency requires b = a - d = 2a - e, c = -a, and
/// alpha = a/b.
struct ScalingExponents {
    double a;
    double b;
    double c;
    double d;
    double e;
    double alpha;
};

/// Time-dependent drift/diffusion pair in similarity form,
///   D1(x,t) = t^(alpha-1) rho1(x/t^alpha),  D2(x,t) = t^(2 alpha-1) rho2(x/t^alpha),
/// together with the profiles that generated it. The callables must be pure.
struct CoefficientPair {
    std::function<double(double, double)> drift;     // (x, t>0)
    std::function<double(double, double)> diffusion; // (x, t>0)
    double alpha = 0.0;
    Profile rho1 = make_polynomial({0.0});
    Profile rho2 = make_polynomial({1.0});
};

/// Solve b = a - d, check b = 2a - e (1e-12 absolute), set c = -a, alpha = a/b.
ScalingExponents solve_exponents(double a, double d, double e);

/// z = x / t^alpha. Requires t > 0.
double similarity_variable(double x, double t, double alpha);

CoefficientPair synthesize_coefficients(const Profile& rho1, const Profile& rho2, double alpha);

/// Check D1(eps^a x, eps^b t) = eps^d D1(x,t) and the D2 analogue at every
/// sample, to 1e-10 relative. The exponent gauge is fixed as b=1, a=alpha,
/// d=alpha-1, e=2 alpha-1.
bool verify_scale_invariance(const CoefficientPair& pair, double epsilon,
                             const std::vector<std::pair<double, double>>& samples);

} // namespace fpe
