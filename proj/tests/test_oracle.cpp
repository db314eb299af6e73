#include <cmath>
#include <vector>

#include "doctest.h"

#include "fpe/errors.hpp"
#include "fpe/oracle.hpp"
#include "fpe/quadrature.hpp"
#include "fpe/runner.hpp"
#include "test_util.hpp"

using namespace fpe;
using test::close_rel;
using test::Rand;

namespace {

double grid_mean(const GridDensity& g) {
    std::vector<double> xw(g.n);
    for (int i = 0; i < g.n; ++i) xw[i] = g.node(i) * g.values[i];
    double sum = 0.5 * (xw.front() + xw.back());
    for (int i = 1; i + 1 < g.n; ++i) sum += xw[i];
    return sum * g.dx();
}

double grid_variance(const GridDensity& g) {
    const double m = grid_mean(g);
    std::vector<double> v(g.n);
    for (int i = 0; i < g.n; ++i) {
        const double d = g.node(i) - m;
        v[i] = d * d * g.values[i];
    }
    double sum = 0.5 * (v.front() + v.back());
    for (int i = 1; i + 1 < g.n; ++i) sum += v[i];
    return sum * g.dx();
}

} // namespace

TEST_CASE("grid density validation") {
    CHECK_THROWS_AS(make_grid_density(0.0, 1.0, 8, 1.0, std::vector<double>(8, 0.1)),
                    InvalidInputError);
    CHECK_THROWS_AS(make_grid_density(1.0, 0.0, 16, 1.0, std::vector<double>(16, 0.1)),
                    InvalidInputError);
    CHECK_THROWS_AS(make_grid_density(0.0, 1.0, 16, 0.0, std::vector<double>(16, 0.1)),
                    InvalidTimeError);
    CHECK_THROWS_AS(make_grid_density(0.0, 1.0, 16, 1.0, std::vector<double>(16, -0.1)),
                    InvalidInputError);

    const SimilaritySolution heat = gaussian_solution(0.5, 0.0, 0.0, 1.0);
    const GridDensity g = sample_grid_density(heat, -14.0, 14.0, 800, 1.0);
    CHECK(std::abs(g.mass() - 1.0) < 1e-3);
}

TEST_CASE("fd_evolve: pure diffusion doubles the variance from t=1 to t=2") {
    const SimilaritySolution heat = gaussian_solution(0.5, 0.0, 0.0, 1.0);
    const CoefficientPair pair =
        synthesize_coefficients(make_polynomial({0.0}), make_polynomial({1.0}), 0.5);

    const GridDensity w0 = sample_grid_density(heat, -16.0, 16.0, 1200, 1.0);
    FdStats stats{};
    const GridDensity w1 = fd_evolve(pair, w0, 2.0, 800, &stats);

    CHECK(close_rel(grid_variance(w1), 4.0, 0.01));
    const GridDensity exact = sample_grid_density(heat, -16.0, 16.0, 1200, 2.0);
    CHECK(l1_distance(w1, exact) < 1e-3);
    CHECK(std::abs(w1.mass() - w0.mass()) < 1e-10);
    CHECK(stats.max_cell_peclet < 1.0);
    CHECK(stats.negative_clips >= 0);
    for (double v : w1.values) CHECK(v >= 0.0); // undershoot is clipped
}

TEST_CASE("fd_evolve: drifted gaussian follows the analytic solution") {
    const SimilaritySolution sol = gaussian_solution(1.0, 0.5, 1.0, 1.0);
    const CoefficientPair pair =
        synthesize_coefficients(make_polynomial({1.0, 0.5}), make_polynomial({1.0}), 1.0);
    // Grid sized so the excluded tails stay below ~1e-8 through t = 2.
    const GridDensity w0 = sample_grid_density(sol, -14.0, 22.0, 2000, 1.0);
    const GridDensity w1 = fd_evolve(pair, w0, 2.0, 1000);
    const GridDensity exact = sample_grid_density(sol, -14.0, 22.0, 2000, 2.0);
    CHECK(l1_distance(w1, exact) < 1e-3);
    CHECK(std::abs(w1.mass() - w0.mass()) < 1e-10);
}

TEST_CASE("fd_evolve: exponential family self-similarity") {
    const SimilaritySolution sol = exponential_solution(3.0, -6.0, 2.0);
    const CoefficientPair pair =
        synthesize_coefficients(make_polynomial({-6.0, 3.0}), make_polynomial({2.0}), 3.0);
    const GridDensity w0 = sample_grid_density(sol, 0.0, 45.0, 3000, 1.0);
    const GridDensity w1 = fd_evolve(pair, w0, 1.9, 2000);
    const GridDensity exact = sample_grid_density(sol, 0.0, 45.0, 3000, 1.9);
    CHECK(l1_distance(w1, exact) < 1e-3);
    CHECK(std::abs(w1.mass() - w0.mass()) < 1e-10);
}

TEST_CASE("fd_evolve: gamma family with degenerate boundary diffusion") {
    const SimilaritySolution sol = gamma_solution(-2.0, -3.0, 0.5, 0.5);
    const CoefficientPair pair = synthesize_coefficients(
        make_polynomial({0.5, -3.0}), make_polynomial({0.0, 0.5}), -2.0);
    const GridDensity w0 = sample_grid_density(sol, 0.0, 40.0, 4000, 0.5);
    const GridDensity w1 = fd_evolve(pair, w0, 1.4, 4000);
    const GridDensity exact = sample_grid_density(sol, 0.0, 40.0, 4000, 1.4);
    CHECK(l1_distance(w1, exact) < 5e-3);
    CHECK(std::abs(w1.mass() - w0.mass()) < 1e-10);
}

TEST_CASE("fd_evolve: scaling covariance of the Fig. 1 system") {
    // Run once on [x, t in 1..2] and once on the eps-scaled problem
    // (eps = 2, a = b = 1): W(eps x, eps t) = eps^-1 W(x, t).
    const double eps = 2.0;
    const SimilaritySolution sol = gaussian_solution(1.0, 0.5, 1.0, 1.0);
    const CoefficientPair pair =
        synthesize_coefficients(make_polynomial({1.0, 0.5}), make_polynomial({1.0}), 1.0);

    const int n = 1500;
    const GridDensity w0 = sample_grid_density(sol, -14.0, 22.0, n, 1.0);
    const GridDensity w1 = fd_evolve(pair, w0, 2.0, 800);

    std::vector<double> scaled0(n);
    for (int i = 0; i < n; ++i) {
        scaled0[i] = w0.values[i] / eps; // W'(eps x, eps t0) = eps^c W(x, t0), c = -1
    }
    const GridDensity v0 =
        make_grid_density(eps * -14.0, eps * 22.0, n, eps * 1.0, std::move(scaled0));
    const GridDensity v1 = fd_evolve(pair, v0, eps * 2.0, 800);

    std::vector<double> diff(n);
    for (int i = 0; i < n; ++i) {
        diff[i] = std::abs(v1.values[i] - w1.values[i] / eps);
    }
    double l1 = 0.5 * (diff.front() + diff.back());
    for (int i = 1; i + 1 < n; ++i) l1 += diff[i];
    l1 *= v1.dx();
    CHECK(l1 < 1e-3);
}

TEST_CASE("fd_evolve error paths") {
    const SimilaritySolution heat = gaussian_solution(0.5, 0.0, 0.0, 1.0);
    const GridDensity w0 = sample_grid_density(heat, -10.0, 10.0, 200, 1.0);

    SUBCASE("negative diffusion is ill-posed") {
        CoefficientPair bad =
            synthesize_coefficients(make_polynomial({0.0}), make_polynomial({-1.0}), 0.5);
        CHECK_THROWS_AS(fd_evolve(bad, w0, 2.0, 10), IllPosedDiffusionError);
    }
    SUBCASE("huge cell Peclet asks for a finer grid") {
        CoefficientPair stiff = synthesize_coefficients(
            make_polynomial({1e4}), make_polynomial({1e-4}), 0.5);
        CHECK_THROWS_AS(fd_evolve(stiff, w0, 2.0, 10), ResolutionError);
    }
    SUBCASE("time ordering is enforced") {
        const CoefficientPair pair =
            synthesize_coefficients(make_polynomial({0.0}), make_polynomial({1.0}), 0.5);
        CHECK_THROWS_AS(fd_evolve(pair, w0, 0.5, 10), InvalidTimeError);
        CHECK_THROWS_AS(fd_evolve(pair, w0, 2.0, 0), InvalidInputError);
    }
}

TEST_CASE("mc_sample: heat kernel variance and determinism") {
    const SimilaritySolution heat = gaussian_solution(0.5, 0.0, 0.0, 1.0);
    const CoefficientPair pair =
        synthesize_coefficients(make_polynomial({0.0}), make_polynomial({1.0}), 0.5);

    const int n_paths = 20000;
    const PathEnsemble ens = mc_sample(pair, heat, 1.0, 2.0, n_paths, 0.005, 42);
    double mean = 0.0;
    for (double x : ens.terminal_positions) mean += x;
    mean /= n_paths;
    double var = 0.0;
    for (double x : ens.terminal_positions) var += (x - mean) * (x - mean);
    var /= (n_paths - 1);
    // Var(s^2) ~ 2 sigma^4 / (n-1); 3-sigma band around 4.
    const double band = 3.0 * std::sqrt(2.0 * 16.0 / (n_paths - 1));
    CHECK(std::abs(var - 4.0) < band);

    SUBCASE("same seed reproduces terminal positions bit-for-bit") {
        const PathEnsemble again = mc_sample(pair, heat, 1.0, 2.0, n_paths, 0.005, 42);
        CHECK(again.terminal_positions == ens.terminal_positions);
    }
    SUBCASE("worker count does not change the result") {
        const PathEnsemble one = mc_sample(pair, heat, 1.0, 2.0, n_paths, 0.005, 42, 1);
        const PathEnsemble four = mc_sample(pair, heat, 1.0, 2.0, n_paths, 0.005, 42, 4);
        CHECK(one.terminal_positions == four.terminal_positions);
    }
    SUBCASE("different seed decorrelates") {
        const PathEnsemble other = mc_sample(pair, heat, 1.0, 2.0, n_paths, 0.005, 43);
        CHECK(other.terminal_positions != ens.terminal_positions);
    }
}

TEST_CASE("mc_sample preconditions") {
    const SimilaritySolution heat = gaussian_solution(0.5, 0.0, 0.0, 1.0);
    const CoefficientPair pair =
        synthesize_coefficients(make_polynomial({0.0}), make_polynomial({1.0}), 0.5);
    CHECK_THROWS_AS(mc_sample(pair, heat, 1.0, 2.0, 100, 0.005, 1), InvalidInputError);
    CHECK_THROWS_AS(mc_sample(pair, heat, 1.0, 2.0, 20000, 0.5, 1), InvalidInputError);
    CHECK_THROWS_AS(mc_sample(pair, heat, 2.0, 1.0, 20000, 0.001, 1), InvalidTimeError);

    CoefficientPair bad =
        synthesize_coefficients(make_polynomial({0.0}), make_polynomial({-1.0}), 0.5);
    CHECK_THROWS_AS(mc_sample(bad, heat, 1.0, 2.0, 20000, 0.005, 1),
                    IllPosedDiffusionError);
}

TEST_CASE("l1_distance") {
    const SimilaritySolution heat = gaussian_solution(0.5, 0.0, 0.0, 1.0);
    const GridDensity g = sample_grid_density(heat, -12.0, 12.0, 400, 1.0);

    SUBCASE("identity") { CHECK(l1_distance(g, g) == 0.0); }

    SUBCASE("bounded by 2 for normalized densities") {
        const SimilaritySolution shifted = gaussian_solution(0.5, 0.0, 3.0, 1.0);
        const GridDensity h = sample_grid_density(shifted, -12.0, 12.0, 400, 1.0);
        const double d = l1_distance(g, h);
        CHECK(d >= 0.0);
        CHECK(d <= 2.0);
    }

    SUBCASE("grid refinement converges to the analytic |dW| integral") {
        // Independent oracle: adaptive quadrature of |W(x,1) - W(x,1.01)|.
        auto diff = [&](double x) {
            return std::abs(density(heat, x, 1.0) - density(heat, x, 1.01));
        };
        const double exact = integrate(diff, -12.0, 12.0, QuadratureOptions{1e-12, 1e-14, 50});
        double err_prev = -1.0;
        for (int n : {200, 800, 3200}) {
            const GridDensity a = sample_grid_density(heat, -12.0, 12.0, n, 1.0);
            GridDensity b = sample_grid_density(heat, -12.0, 12.0, n, 1.01);
            b.time = 1.0; // same grid, same nominal time slot for the metric
            const double err = std::abs(l1_distance(a, b) - exact);
            if (err_prev >= 0.0) CHECK(err < err_prev + 1e-12);
            err_prev = err;
        }
        CHECK(err_prev < 1e-6);
    }

    SUBCASE("grid mismatch is rejected") {
        const GridDensity other = sample_grid_density(heat, -12.0, 12.0, 401, 1.0);
        CHECK_THROWS_AS(l1_distance(g, other), IncompatibleGridsError);
        const GridDensity late = sample_grid_density(heat, -12.0, 12.0, 400, 2.0);
        CHECK_THROWS_AS(l1_distance(g, late), IncompatibleGridsError);
    }
}

TEST_CASE("ks_statistic") {
    SUBCASE("inverse-transform samples stay inside the 99% KS band") {
        auto cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
        const int n = 100000;
        PathEnsemble ens{n, {}, 1.0, 2.0, 0.001, 7};
        SplitMix64 rng(7);
        ens.terminal_positions.resize(n);
        for (int i = 0; i < n; ++i) {
            ens.terminal_positions[i] = normal_quantile(rng.uniform01());
        }
        CHECK(ks_statistic(ens, cdf) < 1.63 / std::sqrt(static_cast<double>(n)));
    }
    SUBCASE("point mass in the tail of a continuous cdf") {
        PathEnsemble ens{1000, std::vector<double>(1000, -10.0), 1.0, 2.0, 0.001, 1};
        auto cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
        CHECK(ks_statistic(ens, cdf) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("sample against its own empirical cdf") {
        const int n = 1000;
        PathEnsemble ens{n, {}, 1.0, 2.0, 0.001, 9};
        SplitMix64 rng(9);
        ens.terminal_positions.resize(n);
        for (int i = 0; i < n; ++i) ens.terminal_positions[i] = rng.uniform01();
        std::vector<double> sorted = ens.terminal_positions;
        std::sort(sorted.begin(), sorted.end());
        auto emp = [&sorted](double x) {
            const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
            return static_cast<double>(it - sorted.begin()) / sorted.size();
        };
        CHECK(ks_statistic(ens, emp) <= 1.0 / n + 1e-12);
    }
}

TEST_CASE("analytic cdf and quantile invert each other") {
    Rand rng(44);
    for (int trial = 0; trial < 9; ++trial) {
        SimilaritySolution sol =
            trial % 3 == 0   ? test::random_gaussian(rng)
            : trial % 3 == 1 ? test::random_exponential(rng)
                             : test::random_gamma(rng);
        const double t = rng.uniform(0.4, 2.5);
        for (double u : {1e-4, 0.1, 0.5, 0.9, 1.0 - 1e-4}) {
            const double x = analytic_quantile(sol, u, t);
            CHECK(close_rel(analytic_cdf(sol, x, t), u, 1e-7));
        }
    }
}

TEST_CASE("normal_quantile matches erfc-based cdf") {
    for (double u : {1e-9, 1e-4, 0.02, 0.3, 0.5, 0.77, 0.999, 1.0 - 1e-9}) {
        const double x = normal_quantile(u);
        const double back = 0.5 * std::erfc(-x / std::sqrt(2.0));
        CHECK(std::abs(back - u) < 3e-9);
    }
    CHECK(normal_quantile(0.5) == 0.0);
    CHECK_THROWS_AS(normal_quantile(0.0), InvalidInputError);
    CHECK_THROWS_AS(normal_quantile(1.0), InvalidInputError);
}
