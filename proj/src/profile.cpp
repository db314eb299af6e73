#include "fpe/profile.hpp"

#include <cmath>
#include <utility>

#include "fpe/errors.hpp"

namespace fpe {

namespace {

// Denominator magnitudes at or below this count as an exact pole. The pole
// set in practice is {0}; no symbolic GCD cancellation is attempted.
constexpr double kPoleThreshold = 1e-300;

// Central difference with relative step, for generic rho2 inside
// shape_function. Symbolic derivative() rejects generic profiles.
double numeric_derivative(const std::function<double(double)>& f, double z) {
    const double h = 1e-5 * (std::abs(z) + 1.0);
    return (f(z + h) - f(z - h)) / (2.0 * h);
}

} // namespace

bool operator==(const DomainInterval& a, const DomainInterval& b) {
    return a.kind == b.kind && a.lower == b.lower && a.upper == b.upper;
}

Profile Profile::polynomial(std::vector<double> coeffs) {
    Profile p;
    p.kind_ = ProfileKind::polynomial;
    p.coeffs_ = poly::canonicalize(std::move(coeffs));
    return p;
}

Profile Profile::rational(std::vector<double> numerator, std::vector<double> denominator) {
    Profile p;
    p.kind_ = ProfileKind::rational;
    p.num_ = poly::canonicalize(std::move(numerator));
    p.den_ = poly::canonicalize(std::move(denominator));
    if (poly::is_zero(p.den_)) {
        throw InvalidInputError("rational profile: denominator is the zero polynomial");
    }
    return p;
}

Profile Profile::generic(std::function<double(double)> evaluator, DomainInterval domain) {
    if (!evaluator) {
        throw InvalidInputError("generic profile: null evaluator");
    }
    Profile p;
    p.kind_ = ProfileKind::generic;
    p.fn_ = std::move(evaluator);
    p.domain_ = domain;
    return p;
}

const poly::Coeffs& Profile::coefficients() const {
    if (kind_ != ProfileKind::polynomial) {
        throw UnsupportedOperationError("profile: coefficients() requires a polynomial profile");
    }
    return coeffs_;
}

int Profile::degree() const { return poly::degree(coefficients()); }

bool Profile::is_zero_polynomial() const {
    return kind_ == ProfileKind::polynomial && poly::is_zero(coeffs_);
}

const poly::Coeffs& Profile::numerator() const {
    if (kind_ != ProfileKind::rational) {
        throw UnsupportedOperationError("profile: numerator() requires a rational profile");
    }
    return num_;
}

const poly::Coeffs& Profile::denominator() const {
    if (kind_ != ProfileKind::rational) {
        throw UnsupportedOperationError("profile: denominator() requires a rational profile");
    }
    return den_;
}

double Profile::operator()(double z) const {
    switch (kind_) {
        case ProfileKind::polynomial:
            return poly::eval(coeffs_, z);
        case ProfileKind::rational: {
            const double den = poly::eval(den_, z);
            if (std::abs(den) <= kPoleThreshold) {
                throw PoleError(z, "rational profile: pole at z = " + std::to_string(z));
            }
            return poly::eval(num_, z) / den;
        }
        case ProfileKind::generic:
            if (!domain_.contains(z)) {
                throw InvalidInputError("generic profile: z outside declared domain");
            }
            return fn_(z);
    }
    throw UnsupportedOperationError("profile: unknown kind");
}

bool operator==(const Profile& a, const Profile& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case ProfileKind::polynomial:
            return a.coefficients() == b.coefficients();
        case ProfileKind::rational:
            return a.numerator() == b.numerator() && a.denominator() == b.denominator();
        case ProfileKind::generic:
            return false; // opaque; never compared equal
    }
    return false;
}

Profile make_polynomial(const std::vector<double>& coeffs) {
    return Profile::polynomial(coeffs);
}

double eval(const Profile& p, double z) { return p(z); }

Profile derivative(const Profile& p) {
    switch (p.kind()) {
        case ProfileKind::polynomial:
            return Profile::polynomial(poly::derive(p.coefficients()));
        case ProfileKind::rational: {
            // (n/d)' = (n'd - nd') / d^2, kept unreduced.
            const auto& n = p.numerator();
            const auto& d = p.denominator();
            return Profile::rational(
                poly::sub(poly::mul(poly::derive(n), d), poly::mul(n, poly::derive(d))),
                poly::mul(d, d));
        }
        case ProfileKind::generic:
            throw UnsupportedOperationError(
                "profile: symbolic derivative of a generic profile (use numeric "
                "differentiation in the oracle module)");
    }
    throw UnsupportedOperationError("profile: unknown kind");
}

Profile shape_function(const Profile& rho1, const Profile& rho2, double alpha) {
    if (!std::isfinite(alpha) || alpha == 0.0) {
        throw InvalidInputError("shape_function: alpha must be finite and nonzero");
    }
    if (rho2.kind() == ProfileKind::polynomial && rho2.is_zero_polynomial()) {
        throw DegenerateDiffusionError("shape_function: rho2 is identically zero");
    }

    if (rho1.kind() == ProfileKind::polynomial && rho2.kind() == ProfileKind::polynomial) {
        // numerator = rho1 - rho2' - alpha z
        poly::Coeffs num = poly::sub(rho1.coefficients(), poly::derive(rho2.coefficients()));
        num = poly::sub(num, poly::Coeffs{0.0, alpha});
        return Profile::rational(std::move(num), rho2.coefficients());
    }

    // Mixed or generic inputs: opaque evaluator on the intersection of the
    // declared domains (symbolic kinds live on the full line).
    DomainInterval dom = DomainInterval::full_line();
    if (rho1.kind() == ProfileKind::generic) dom = rho1.domain();
    if (rho2.kind() == ProfileKind::generic) dom = rho2.domain();

    const bool rho2_symbolic = rho2.kind() != ProfileKind::generic;
    Profile rho2_prime = rho2_symbolic ? derivative(rho2) : Profile::polynomial({0.0});
    auto fn = [rho1, rho2, rho2_prime, rho2_symbolic, alpha](double z) {
        const double denom = eval(rho2, z);
        if (std::abs(denom) <= kPoleThreshold) {
            throw PoleError(z, "shape_function: rho2 vanishes at z = " + std::to_string(z));
        }
        const double d2 = rho2_symbolic
                              ? eval(rho2_prime, z)
                              : numeric_derivative([&rho2](double u) { return eval(rho2, u); }, z);
        return (eval(rho1, z) - d2 - alpha * z) / denom;
    };
    return Profile::generic(std::move(fn), dom);
}

} // namespace fpe
