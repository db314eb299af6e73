#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fpe/scaling.hpp"
#include "fpe/solutions.hpp"

namespace fpe {

/// Density sampled on a uniform spatial grid at a fixed time.
struct GridDensity {
    double x_min;
    double x_max;
    int n; // >= 16 nodes
    std::vector<double> values;
    double time;

    double dx() const { return (x_max - x_min) / (n - 1); }
    double node(int i) const { return x_min + i * dx(); }
    /// Trapezoidal integral over [x_min, x_max].
    double mass() const;
};

GridDensity make_grid_density(double x_min, double x_max, int n, double time,
                              std::vector<double> values);

/// Sample a closed-form solution onto a grid.
GridDensity sample_grid_density(const SimilaritySolution& sol, double x_min, double x_max,
                                int n, double t);

struct FdStats {
    long negative_clips = 0;
    double max_cell_peclet = 0.0;
};

/// Evolve w0 to time t1 with a flux-form, mass-conserving Crank-Nicolson
/// scheme: dW/dt = -dJ/dx, J = D1 W - d(D2 W)/dx, zero-flux boundary faces,
/// coefficients frozen at the half-step time.
GridDensity fd_evolve(const CoefficientPair& pair, const GridDensity& w0, double t1,
                      int n_steps, FdStats* stats = nullptr);

/// Terminal positions of an Euler-Maruyama ensemble, reproducible per seed.
struct PathEnsemble {
    int n_paths;
    std::vector<double> terminal_positions;
    double t0;
    double t1;
    double dt;
    std::uint64_t seed;
};

/// Euler-Maruyama integration of dx = D1 dt + sqrt(2 D2) dB from initial
/// positions drawn from `initial` at t0 by inverse CDF. Half-line domains
/// reflect at the origin. Per-path substreams derive from (seed, path index),
/// so results are independent of worker count.
PathEnsemble mc_sample(const CoefficientPair& pair, const SimilaritySolution& initial,
                       double t0, double t1, int n_paths, double dt, std::uint64_t seed,
                       int n_workers = 0);

/// Trapezoidal integral of |g1 - g2| on their (identical) grid.
double l1_distance(const GridDensity& g1, const GridDensity& g2);

/// sup over the sorted sample of |empirical CDF - cdf|.
double ks_statistic(const PathEnsemble& ensemble, const std::function<double(double)>& cdf);

/// Closed-form CDF and quantile of a similarity solution at time t.
double analytic_cdf(const SimilaritySolution& sol, double x, double t);
double analytic_quantile(const SimilaritySolution& sol, double u, double t);

/// Interval holding all but ~eps of the solution's mass at time t; used to
/// build quadrature and grid bounds.
struct SupportInterval {
    double lower;
    double upper;
};
SupportInterval effective_support(const SimilaritySolution& sol, double t, double eps = 1e-16);

/// Standard normal quantile (Acklam's rational approximation, |rel err| < 2e-9).
double normal_quantile(double u);

/// SplitMix64: the per-path generator. Fully specified, so ensembles are
/// bit-reproducible for a given (seed, path index).
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on the open interval (0, 1).
    double uniform01() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() { return normal_quantile(uniform01()); }
};

} // namespace fpe
