#pragma once

#include <functional>

namespace fpe {

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_depth = 50;
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over the finite interval
/// [a, b] by interval bisection.
double integrate(const std::function<double(double)>& f, double a, double b,
                 QuadratureOptions opts = {});

} // namespace fpe
