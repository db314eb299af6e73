#include <cmath>
#include <vector>

#include "doctest.h"

#include "fpe/errors.hpp"
#include "fpe/reduction.hpp"
#include "test_util.hpp"

using namespace fpe;
using test::Rand;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / (n - 1);
    return xs;
}

} // namespace

TEST_CASE("reduce produces the ODE coefficients") {
    const double alpha = 1.0, mu1 = 0.5, mu2 = 1.0, mu4 = 1.0, mu3 = 0.5;

    SUBCASE("constant rho2") {
        const ReducedOde ode =
            reduce(make_polynomial({mu2, mu1}), make_polynomial({mu4}), alpha);
        CHECK(poly::equal(ode.p2.coefficients(), {mu4}));
        CHECK(poly::equal(ode.p1.coefficients(), {-mu2, alpha - mu1}));
        CHECK(poly::equal(ode.p0.coefficients(), {alpha - mu1}));
    }
    SUBCASE("linear rho2") {
        const ReducedOde ode =
            reduce(make_polynomial({mu2, mu1}), make_polynomial({0.0, mu3}), alpha);
        CHECK(poly::equal(ode.p2.coefficients(), {0.0, mu3}));
        CHECK(poly::equal(ode.p1.coefficients(), {2.0 * mu3 - mu2, alpha - mu1}));
        CHECK(poly::equal(ode.p0.coefficients(), {alpha - mu1}));
    }
    SUBCASE("exact cancellation: rho1 = alpha z, rho2 = 1 gives y'' = 0") {
        const ReducedOde ode =
            reduce(make_polynomial({0.0, alpha}), make_polynomial({1.0}), alpha);
        CHECK(poly::is_zero(ode.p1.coefficients()));
        CHECK(poly::is_zero(ode.p0.coefficients()));
    }
    SUBCASE("generic profiles are rejected") {
        const Profile generic = Profile::generic([](double z) { return z; },
                                                 DomainInterval::full_line());
        CHECK_THROWS_AS(reduce(generic, make_polynomial({1.0}), alpha),
                        UnsupportedOperationError);
    }
}

TEST_CASE("reducibility identity p1' = p2'' + p0 holds for random inputs") {
    Rand rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const double alpha = rng.nonzero(-2.0, 2.0, 0.2);
        std::vector<double> c1, c2;
        const int d1 = rng.pick(3), d2 = rng.pick(3);
        for (int i = 0; i <= d1; ++i) c1.push_back(rng.uniform(-2.0, 2.0));
        for (int i = 0; i <= d2; ++i) c2.push_back(rng.uniform(-2.0, 2.0));
        if (poly::is_zero(c2)) c2.back() = 1.0;
        const ReducedOde ode = reduce(make_polynomial(c1), make_polynomial(c2), alpha);
        const poly::Coeffs lhs = poly::derive(ode.p1.coefficients());
        const poly::Coeffs rhs = poly::add(
            poly::derive(poly::derive(ode.p2.coefficients())), ode.p0.coefficients());
        CHECK(poly::equal(lhs, rhs));
    }
}

TEST_CASE("first_integral applies the vanishing-current boundary condition") {
    const double alpha = 1.0, mu1 = 0.5, mu2 = 1.0, mu4 = 1.0, mu3 = 0.5;

    SUBCASE("gaussian family: q = [-mu2, alpha - mu1]") {
        const ReducedOde ode =
            reduce(make_polynomial({mu2, mu1}), make_polynomial({mu4}), alpha);
        const FirstIntegral fi = first_integral(ode, DomainInterval::full_line());
        CHECK(poly::equal(fi.q.coefficients(), {-mu2, alpha - mu1}));
        CHECK(fi.constant == 0.0);
    }
    SUBCASE("gamma family: q = [mu3 - mu2, alpha - mu1]") {
        const ReducedOde ode =
            reduce(make_polynomial({mu2, mu1}), make_polynomial({0.0, mu3}), alpha);
        const FirstIntegral fi = first_integral(ode, DomainInterval::nonnegative());
        CHECK(poly::equal(fi.q.coefficients(), {mu3 - mu2, alpha - mu1}));
        CHECK(fi.constant == 0.0);
    }
}

TEST_CASE("solve_shape recognizes the closed forms") {
    const double alpha = 1.0, mu1 = 0.5, mu2 = 1.0, mu4 = 1.0;
    const Profile rho1 = make_polynomial({mu2, mu1});
    const Profile rho2 = make_polynomial({mu4});
    const DomainInterval full = DomainInterval::full_line();

    SUBCASE("gaussian-quadratic exponent") {
        const ReducedOde ode = reduce(rho1, rho2, alpha);
        const ShapeSolution shape =
            solve_shape(first_integral(ode, full), rho1, rho2, alpha, full);
        CHECK(shape.form == ShapeForm::gaussian_quadratic_exponent);
        for (double z : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
            const double expected = ((mu1 - alpha) * z * z / 2.0 + mu2 * z) / mu4;
            CHECK(test::close_rel(shape.antiderivative(z), expected, 1e-14));
        }
    }

    SUBCASE("mu1 = alpha: pure exponential exponent") {
        const Profile r1 = make_polynomial({-6.0, 3.0});
        const Profile r2 = make_polynomial({2.0});
        const ReducedOde ode = reduce(r1, r2, 3.0);
        const DomainInterval dom = DomainInterval::nonnegative();
        const ShapeSolution shape =
            solve_shape(first_integral(ode, dom), r1, r2, 3.0, dom);
        CHECK(shape.form == ShapeForm::pure_exponential);
        for (double z : {0.0, 0.3, 2.0}) {
            CHECK(test::close_rel(shape.antiderivative(z), -3.0 * z, 1e-14));
        }
    }

    SUBCASE("gamma family: power times exponential") {
        const double mu3 = 0.5, g_alpha = -2.0, g_mu1 = -3.0, g_mu2 = 0.5;
        const Profile r1 = make_polynomial({g_mu2, g_mu1});
        const Profile r2 = make_polynomial({0.0, mu3});
        const ReducedOde ode = reduce(r1, r2, g_alpha);
        const DomainInterval dom = DomainInterval::nonnegative();
        const ShapeSolution shape =
            solve_shape(first_integral(ode, dom), r1, r2, g_alpha, dom);
        CHECK(shape.form == ShapeForm::power_times_exponential);
        // y(z) = z^(mu2/mu3 - 1) exp(((mu1 - alpha)/mu3) z); here k = 1.
        for (double z : {0.5, 1.0, 4.0}) {
            const double expected = ((g_mu1 - g_alpha) / mu3) * z;
            CHECK(test::close_rel(shape.antiderivative(z), expected, 1e-13));
        }
    }

    SUBCASE("rho2 with an interior zero is rejected") {
        const Profile r2 = make_polynomial({0.0, 0.5}); // zero at z = 0
        const ReducedOde ode = reduce(rho1, r2, alpha);
        CHECK_THROWS_AS(solve_shape(first_integral(ode, full), rho1, r2, alpha, full),
                        InteriorDegeneracyError);
    }
}

TEST_CASE("shape solution satisfies the first integral with C = 0") {
    Rand rng(22);
    for (int trial = 0; trial < 5; ++trial) {
        const double alpha = rng.nonzero(-1.2, 1.2, 0.3);
        const double mu1 = rng.uniform(-1.0, 1.0);
        const double mu2 = rng.uniform(-1.0, 1.0);
        const double mu4 = rng.nonzero(-1.5, 1.5, 0.6);
        const Profile rho1 = make_polynomial({mu2, mu1});
        const Profile rho2 = make_polynomial({mu4});
        const DomainInterval full = DomainInterval::full_line();
        const ReducedOde ode = reduce(rho1, rho2, alpha);
        const FirstIntegral fi = first_integral(ode, full);
        const ShapeSolution shape = solve_shape(fi, rho1, rho2, alpha, full);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double z = rng.uniform(-2.0, 2.0);
            const double h = 1e-6;
            const double yp = (shape.y(z + h) - shape.y(z - h)) / (2.0 * h);
            const double res = eval(fi.p2, z) * yp + eval(fi.q, z) * shape.y(z);
            worst = std::max(worst, std::abs(res) / (1.0 + std::abs(shape.y(z))));
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("ode_residual") {
    const double alpha = 1.0, mu1 = 0.5, mu2 = 1.0, mu4 = 1.0;
    const Profile rho1 = make_polynomial({mu2, mu1});
    const Profile rho2 = make_polynomial({mu4});
    const ReducedOde ode = reduce(rho1, rho2, alpha);
    const std::vector<double> zs = linspace(-5.0, 5.0, 101);

    SUBCASE("closed-form gaussian shape solves the ODE") {
        auto y = [&](double z) {
            return std::exp(((mu1 - alpha) * z * z / 2.0 + mu2 * z) / mu4);
        };
        CHECK(ode_residual(ode, y, zs) < 1e-6);
    }
    SUBCASE("a constant is not a solution") {
        auto one = [](double) { return 1.0; };
        const double res = ode_residual(ode, one, zs);
        // |p0 * 1| / (1 + |1|) = |alpha - mu1| / 2
        CHECK(res == doctest::Approx(std::abs(alpha - mu1) / 2.0).epsilon(1e-3));
        CHECK(res > 0.0);
    }
    SUBCASE("mu1 = alpha family solves its ODE") {
        const Profile r1 = make_polynomial({-6.0, 3.0});
        const Profile r2 = make_polynomial({2.0});
        const ReducedOde expode = reduce(r1, r2, 3.0);
        auto y = [](double z) { return std::exp(-3.0 * z); };
        CHECK(ode_residual(expode, y, linspace(0.0, 4.0, 101)) < 1e-6);
    }
}

TEST_CASE("solved shapes have small ODE residuals") {
    // O(1) parameters: the numeric second derivative certifies 1e-6 only
    // while exp(F) stays tame (|F'| of a few on the sample range).
    Rand rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const double alpha = rng.nonzero(-1.2, 1.2, 0.3);
        const double mu4 = rng.nonzero(-1.2, 1.2, 0.8);
        const double slope = rng.nonzero(-0.8, 0.8, 0.2); // (mu1 - alpha)/mu4
        const double mu1 = alpha + slope * mu4;
        const double mu2 = rng.uniform(-0.8, 0.8) * mu4;
        const Profile rho1 = make_polynomial({mu2, mu1});
        const Profile rho2 = make_polynomial({mu4});
        const DomainInterval full = DomainInterval::full_line();
        const ReducedOde ode = reduce(rho1, rho2, alpha);
        const ShapeSolution shape =
            solve_shape(first_integral(ode, full), rho1, rho2, alpha, full);
        std::vector<double> zs;
        for (int i = 0; i < 100; ++i) zs.push_back(rng.uniform(-2.0, 2.0));
        CHECK(ode_residual(ode, [&](double z) { return shape.y(z); }, zs) < 1e-6);
    }
}

TEST_CASE("generic quadrature agrees with the closed form up to a constant") {
    const double alpha = 1.0, mu1 = 0.5, mu2 = 1.0, mu4 = 1.0;
    const Profile rho1 = make_polynomial({mu2, mu1});
    const Profile rho2 = make_polynomial({mu4});
    const DomainInterval full = DomainInterval::full_line();
    const ReducedOde ode = reduce(rho1, rho2, alpha);
    const FirstIntegral fi = first_integral(ode, full);

    const ShapeSolution closed = solve_shape(fi, rho1, rho2, alpha, full);
    const ShapeSolution quad = solve_shape(fi, rho1, rho2, alpha, full, true);
    CHECK(closed.form == ShapeForm::gaussian_quadratic_exponent);
    CHECK(quad.form == ShapeForm::generic_quadrature);

    // Match the proportionality constant at z = 0.
    const double ratio0 = closed.y(0.0) / quad.y(0.0);
    for (double z : {-4.0, -2.0, -0.5, 0.25, 1.0, 3.0, 5.0}) {
        CHECK(test::close_rel(ratio0 * quad.y(z), closed.y(z), 1e-8));
    }
}
