#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "fpe/polynomial.hpp"

namespace fpe {

enum class DomainKind {
    full_line,              // (-inf, inf)
    half_line_nonnegative,  // [0, inf)
    half_line_nonpositive,  // (-inf, 0]
};

/// One of the three spatial domains the solution families live on.
struct DomainInterval {
    double lower;
    double upper;
    DomainKind kind;

    static DomainInterval full_line() {
        return {-std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity(), DomainKind::full_line};
    }
    static DomainInterval nonnegative() {
        return {0.0, std::numeric_limits<double>::infinity(),
                DomainKind::half_line_nonnegative};
    }
    static DomainInterval nonpositive() {
        return {-std::numeric_limits<double>::infinity(), 0.0,
                DomainKind::half_line_nonpositive};
    }

    bool contains(double x) const { return x >= lower && x <= upper; }
    bool is_interior(double x) const { return x > lower && x < upper; }

    /// A point strictly inside the domain, away from the z=0 pole that the
    /// half-line families carry (0 for the full line, +/-1 for half lines).
    double interior_anchor() const {
        switch (kind) {
            case DomainKind::half_line_nonnegative: return 1.0;
            case DomainKind::half_line_nonpositive: return -1.0;
            default: return 0.0;
        }
    }
};

bool operator==(const DomainInterval& a, const DomainInterval& b);

enum class ProfileKind { polynomial, rational, generic };

/// A scale-invariant function of the similarity variable z. Polynomial and
/// rational profiles support exact symbolic work; generic profiles are opaque
/// evaluables with a declared domain and are rejected by symbolic operations.
class Profile {
public:
    static Profile polynomial(std::vector<double> coeffs);
    static Profile rational(std::vector<double> numerator, std::vector<double> denominator);
    static Profile generic(std::function<double(double)> evaluator, DomainInterval domain);

    ProfileKind kind() const { return kind_; }
    const DomainInterval& domain() const { return domain_; }

    /// Polynomial accessors; throw UnsupportedOperationError on other kinds.
    const poly::Coeffs& coefficients() const;
    int degree() const;
    bool is_zero_polynomial() const;

    /// Rational accessors.
    const poly::Coeffs& numerator() const;
    const poly::Coeffs& denominator() const;

    double operator()(double z) const;

private:
    Profile() = default;

    ProfileKind kind_ = ProfileKind::polynomial;
    poly::Coeffs coeffs_;           // polynomial
    poly::Coeffs num_, den_;        // rational (kept unreduced)
    std::function<double(double)> fn_;
    DomainInterval domain_ = DomainInterval::full_line();
};

bool operator==(const Profile& a, const Profile& b);

/// Canonical polynomial profile from ascending-power coefficients.
Profile make_polynomial(const std::vector<double>& coeffs);

/// Evaluate at z. Rational profiles throw PoleError at denominator zeros;
/// generic profiles require z inside their declared domain.
double eval(const Profile& p, double z);

/// Exact symbolic derivative of a polynomial or rational profile.
Profile derivative(const Profile& p);

/// Shape function f(z) = (rho1(z) - rho2'(z) - alpha z) / rho2(z), the
/// integrand whose antiderivative exponentiates to the similarity profile.
/// Rational when both inputs are polynomial, generic otherwise.
Profile shape_function(const Profile& rho1, const Profile& rho2, double alpha);

} // namespace fpe
