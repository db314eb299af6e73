#include "fpe/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

#include "fpe/errors.hpp"

namespace fpe {

namespace {

constexpr double kPecletLimit = 100.0;

double trapezoid(const std::vector<double>& v, double dx) {
    if (v.size() < 2) return 0.0;
    double sum = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) sum += v[i];
    return sum * dx;
}

// Thomas algorithm; diag/rhs are overwritten.
void solve_tridiagonal(std::vector<double>& sub, std::vector<double>& diag,
                       std::vector<double>& sup, std::vector<double>& rhs,
                       std::vector<double>& out) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    out[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        out[i] = (rhs[i] - sup[i] * out[i + 1]) / diag[i];
    }
}

std::uint64_t mix_stream(std::uint64_t seed, std::uint64_t path) {
    SplitMix64 g(seed ^ (0x9E3779B97F4A7C15ULL * (path + 1)));
    return g.next();
}

} // namespace

double GridDensity::mass() const { return trapezoid(values, dx()); }

GridDensity make_grid_density(double x_min, double x_max, int n, double time,
                              std::vector<double> values) {
    if (!(x_min < x_max)) {
        throw InvalidInputError("grid density: x_min must be below x_max");
    }
    if (n < 16) {
        throw InvalidInputError("grid density: n must be at least 16");
    }
    if (static_cast<int>(values.size()) != n) {
        throw InvalidInputError("grid density: values size does not match n");
    }
    if (!(time > 0.0)) {
        throw InvalidTimeError("grid density: time must be positive");
    }
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0) {
            throw InvalidInputError("grid density: values must be finite and non-negative");
        }
    }
    return GridDensity{x_min, x_max, n, std::move(values), time};
}

GridDensity sample_grid_density(const SimilaritySolution& sol, double x_min, double x_max,
                                int n, double t) {
    std::vector<double> v(n);
    const double dx = (x_max - x_min) / (n - 1);
    for (int i = 0; i < n; ++i) {
        v[i] = density(sol, x_min + i * dx, t);
    }
    return make_grid_density(x_min, x_max, n, t, std::move(v));
}

GridDensity fd_evolve(const CoefficientPair& pair, const GridDensity& w0, double t1,
                      int n_steps, FdStats* stats) {
    if (!(w0.time > 0.0) || !(t1 > w0.time)) {
        throw InvalidTimeError("fd_evolve: requires t1 > w0.time > 0");
    }
    if (n_steps < 1) {
        throw InvalidInputError("fd_evolve: n_steps must be positive");
    }
    const int n = w0.n;
    const double h = w0.dx();
    const double dt = (t1 - w0.time) / n_steps;

    std::vector<double> w = w0.values;
    std::vector<double> d1f(n - 1), d2n(n);
    std::vector<double> sub(n), diag(n), sup(n), rhs(n), wn(n);
    FdStats local{};

    for (int step = 0; step < n_steps; ++step) {
        const double th = w0.time + (step + 0.5) * dt;

        for (int i = 0; i < n; ++i) {
            const double x = w0.node(i);
            d2n[i] = pair.diffusion(x, th);
            const bool boundary = (i == 0 || i == n - 1);
            if (d2n[i] < 0.0 || (!boundary && d2n[i] == 0.0)) {
                throw IllPosedDiffusionError(
                    "fd_evolve: diffusion not positive at x = " + std::to_string(x) +
                    ", t = " + std::to_string(th));
            }
        }
        for (int i = 0; i < n - 1; ++i) {
            const double xf = w0.node(i) + 0.5 * h;
            d1f[i] = pair.drift(xf, th);
            const double d2f = 0.5 * (d2n[i] + d2n[i + 1]);
            const double pe = std::abs(d1f[i]) * h / d2f;
            local.max_cell_peclet = std::max(local.max_cell_peclet, pe);
            if (pe > kPecletLimit) {
                throw ResolutionError(
                    "fd_evolve: cell Peclet " + std::to_string(pe) + " exceeds " +
                    std::to_string(kPecletLimit) + " at x = " + std::to_string(xf) +
                    "; use a finer grid");
            }
        }

        // Face flux J_{i+1/2} = af[i] W_i + bf[i] W_{i+1}; boundary faces carry
        // zero flux, so the weighted column sums of the operator telescope to
        // zero and trapezoidal mass is conserved.
        // A-row i: (J_{i-1/2} - J_{i+1/2}) / V_i, V = h (h/2 at the endpoints).
        auto af = [&](int i) { return 0.5 * d1f[i] + d2n[i] / h; };
        auto bf = [&](int i) { return 0.5 * d1f[i] - d2n[i + 1] / h; };

        for (int i = 0; i < n; ++i) {
            const double vol = (i == 0 || i == n - 1) ? 0.5 * h : h;
            double a_sub = 0.0, a_diag = 0.0, a_sup = 0.0;
            if (i > 0) { // + J_{i-1/2}
                a_sub += af(i - 1);
                a_diag += bf(i - 1);
            }
            if (i < n - 1) { // - J_{i+1/2}
                a_diag -= af(i);
                a_sup -= bf(i);
            }
            const double scale = dt / (2.0 * vol);
            sub[i] = -scale * a_sub;
            diag[i] = 1.0 - scale * a_diag;
            sup[i] = -scale * a_sup;
            // rhs = (I + dt/2 A) w
            double r = w[i] + scale * a_diag * w[i];
            if (i > 0) r += scale * a_sub * w[i - 1];
            if (i < n - 1) r += scale * a_sup * w[i + 1];
            rhs[i] = r;
        }

        solve_tridiagonal(sub, diag, sup, rhs, wn);

        // Clip tiny negative undershoot, renormalize to the pre-clip mass.
        double pre_mass = 0.0, post_mass = 0.0;
        bool clipped = false;
        pre_mass = trapezoid(wn, h);
        for (int i = 0; i < n; ++i) {
            if (wn[i] < 0.0) {
                wn[i] = 0.0;
                ++local.negative_clips;
                clipped = true;
            }
        }
        if (clipped) {
            post_mass = trapezoid(wn, h);
            if (post_mass > 0.0) {
                const double s = pre_mass / post_mass;
                for (double& v : wn) v *= s;
            }
        }
        w.swap(wn);
    }

    if (stats) *stats = local;
    return GridDensity{w0.x_min, w0.x_max, n, std::move(w), t1};
}

PathEnsemble mc_sample(const CoefficientPair& pair, const SimilaritySolution& initial,
                       double t0, double t1, int n_paths, double dt, std::uint64_t seed,
                       int n_workers) {
    if (!(t0 > 0.0) || !(t1 > t0)) {
        throw InvalidTimeError("mc_sample: requires t1 > t0 > 0");
    }
    if (n_paths < 10000) {
        throw InvalidInputError("mc_sample: n_paths must be at least 1e4");
    }
    if (!(dt > 0.0) || dt > (t1 - t0) / 100.0) {
        throw InvalidInputError("mc_sample: dt must be positive and at most (t1-t0)/100");
    }
    const int n_sub = static_cast<int>(std::ceil((t1 - t0) / dt - 1e-9));
    const double dta = (t1 - t0) / n_sub;
    const double sqrt_dt = std::sqrt(dta);
    const DomainKind dom = initial.domain.kind;

    std::vector<double> terminal(n_paths);
    std::atomic<bool> failed{false};
    std::mutex err_mutex;
    std::string err_msg;

    auto run_range = [&](int begin, int end) {
        try {
            for (int p = begin; p < end; ++p) {
                SplitMix64 rng(mix_stream(seed, static_cast<std::uint64_t>(p)));
                double x = analytic_quantile(initial, rng.uniform01(), t0);
                double t = t0;
                for (int k = 0; k < n_sub; ++k) {
                    const double a = pair.drift(x, t);
                    const double d = pair.diffusion(x, t);
                    if (d < 0.0) {
                        throw IllPosedDiffusionError(
                            "mc_sample: negative diffusion at x = " + std::to_string(x) +
                            ", t = " + std::to_string(t));
                    }
                    x += a * dta + std::sqrt(2.0 * d) * sqrt_dt * rng.normal();
                    if (dom == DomainKind::half_line_nonnegative) {
                        x = std::abs(x);
                    } else if (dom == DomainKind::half_line_nonpositive) {
                        x = -std::abs(x);
                    }
                    t = t0 + (k + 1) * dta;
                }
                terminal[p] = x;
            }
        } catch (const std::exception& ex) {
            std::scoped_lock lock(err_mutex);
            if (!failed.exchange(true)) err_msg = ex.what();
        }
    };

    int workers = n_workers > 0
                      ? n_workers
                      : static_cast<int>(std::max(1u, std::min(
                            std::thread::hardware_concurrency(), 8u)));
    workers = std::min(workers, n_paths);
    if (workers <= 1) {
        run_range(0, n_paths);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const int chunk = (n_paths + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const int begin = w * chunk;
            const int end = std::min(n_paths, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    if (failed.load()) {
        throw IllPosedDiffusionError(err_msg);
    }
    return PathEnsemble{n_paths, std::move(terminal), t0, t1, dta, seed};
}

double l1_distance(const GridDensity& g1, const GridDensity& g2) {
    const bool same_grid = g1.x_min == g2.x_min && g1.x_max == g2.x_max && g1.n == g2.n;
    const bool same_time =
        std::abs(g1.time - g2.time) <= 1e-12 * std::max(1.0, std::abs(g1.time));
    if (!same_grid || !same_time) {
        throw IncompatibleGridsError("l1_distance: grids or times differ");
    }
    std::vector<double> diff(g1.n);
    for (int i = 0; i < g1.n; ++i) {
        diff[i] = std::abs(g1.values[i] - g2.values[i]);
    }
    return trapezoid(diff, g1.dx());
}

double ks_statistic(const PathEnsemble& ensemble, const std::function<double(double)>& cdf) {
    std::vector<double> xs = ensemble.terminal_positions;
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - f));
    }
    return d;
}

double analytic_cdf(const SimilaritySolution& sol, double x, double t) {
    if (!(t > 0.0)) {
        throw InvalidTimeError("analytic_cdf: t must be positive");
    }
    switch (sol.family) {
        case Family::gaussian: {
            const auto st = profile_stats(sol, t);
            const double zscore = (x - st.mean) / std::sqrt(st.variance);
            return 0.5 * std::erfc(-zscore / std::numbers::sqrt2);
        }
        case Family::exponential: {
            const double r = std::abs(sol.mu2 / (sol.mu4 * std::pow(t, sol.alpha)));
            if (sol.domain.kind == DomainKind::half_line_nonnegative) {
                return x <= 0.0 ? 0.0 : -std::expm1(-r * x);
            }
            return x >= 0.0 ? 1.0 : std::exp(r * x);
        }
        case Family::gamma: {
            if (x <= 0.0) return 0.0;
            const double k = sol.mu2 / sol.mu3;
            const double lam = (sol.alpha - sol.mu1) / (sol.mu3 * std::pow(t, sol.alpha));
            return boost::math::gamma_p(k, lam * x);
        }
    }
    throw Error("analytic_cdf: unknown family");
}

double analytic_quantile(const SimilaritySolution& sol, double u, double t) {
    if (!(u > 0.0 && u < 1.0)) {
        throw InvalidInputError("analytic_quantile: u must lie in (0,1)");
    }
    if (!(t > 0.0)) {
        throw InvalidTimeError("analytic_quantile: t must be positive");
    }
    switch (sol.family) {
        case Family::gaussian: {
            const auto st = profile_stats(sol, t);
            return st.mean + std::sqrt(st.variance) * normal_quantile(u);
        }
        case Family::exponential: {
            const double r = std::abs(sol.mu2 / (sol.mu4 * std::pow(t, sol.alpha)));
            if (sol.domain.kind == DomainKind::half_line_nonnegative) {
                return -std::log1p(-u) / r;
            }
            return std::log(u) / r;
        }
        case Family::gamma: {
            const double k = sol.mu2 / sol.mu3;
            const double lam = (sol.alpha - sol.mu1) / (sol.mu3 * std::pow(t, sol.alpha));
            return boost::math::gamma_p_inv(k, u) / lam;
        }
    }
    throw Error("analytic_quantile: unknown family");
}

SupportInterval effective_support(const SimilaritySolution& sol, double t, double eps) {
    const double log_eps = std::abs(std::log(eps));
    switch (sol.family) {
        case Family::gaussian: {
            const auto st = profile_stats(sol, t);
            const double span = (std::sqrt(2.0 * log_eps) + 1.0) * std::sqrt(st.variance);
            return {st.mean - span, st.mean + span};
        }
        case Family::exponential: {
            const double r = std::abs(sol.mu2 / (sol.mu4 * std::pow(t, sol.alpha)));
            const double span = (log_eps + 2.0) / r;
            if (sol.domain.kind == DomainKind::half_line_nonnegative) return {0.0, span};
            return {-span, 0.0};
        }
        case Family::gamma: {
            const double k = sol.mu2 / sol.mu3;
            const double lam = (sol.alpha - sol.mu1) / (sol.mu3 * std::pow(t, sol.alpha));
            return {0.0, (2.0 * k + 4.0 * log_eps + 20.0) / lam};
        }
    }
    throw Error("effective_support: unknown family");
}

double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw InvalidInputError("normal_quantile: u must lie in (0,1)");
    }
    // Acklam's rational approximation.
    static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (u < p_low) {
        const double q = std::sqrt(-2.0 * std::log(u));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (u > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - u));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = u - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

} // namespace fpe
