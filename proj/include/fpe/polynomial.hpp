#pragma once

#include <string>
#include <vector>

namespace fpe::poly {

/// Dense real polynomial coefficients, ascending powers. The canonical form
/// has no trailing zeros and is never empty (the zero polynomial is {0}).
using Coeffs = std::vector<double>;

/// Degree cap for all stored polynomials. The solution families never exceed
/// degree 2; the cap bounds the unreduced rational algebra.
inline constexpr int kMaxDegree = 8;

/// Strip trailing zeros and validate entries. Throws InvalidInputError on an
/// empty list, a non-finite entry, or a degree beyond kMaxDegree.
Coeffs canonicalize(Coeffs c);

double eval(const Coeffs& c, double z); // Horner
Coeffs derive(const Coeffs& c);
Coeffs add(const Coeffs& a, const Coeffs& b);
Coeffs sub(const Coeffs& a, const Coeffs& b);
Coeffs scale(const Coeffs& a, double k);
Coeffs mul(const Coeffs& a, const Coeffs& b);

int degree(const Coeffs& c);
bool is_zero(const Coeffs& c);

/// Coefficient-wise comparison of canonical forms, absolute tolerance per
/// coefficient.
bool equal(const Coeffs& a, const Coeffs& b, double tol = 1e-12);

/// Human-readable rendering, e.g. {0,-6} -> "-6 z".
std::string format(const Coeffs& c, const std::string& var = "z");

} // namespace fpe::poly
