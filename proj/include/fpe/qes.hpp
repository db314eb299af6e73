#pragma once

#include "fpe/polynomial.hpp"
#include "fpe/profile.hpp"

namespace fpe {

/// A second-order ODE P(z) y'' + Q(z) y' + R(z) y = 0 to be tested against
/// the similarity-reduction criterion Q' = P'' + R.
struct QesOde {
    Profile P;
    Profile Q;
    Profile R;
};

QesOde make_qes_ode(Profile P, Profile Q, Profile R);

/// True iff Q' equals P'' + R as canonical polynomials (1e-12 per
/// coefficient), i.e. iff the ODE can arise as a similarity-reduced FPE.
bool fpe_reducible(const QesOde& ode);

/// The defect polynomial Q' - P'' - R (zero iff reducible).
poly::Coeffs reducibility_residual(const QesOde& ode);

/// Parameters of the Class I quasi-exactly-solvable model
///   mu z^2 y'' - [2 a z^2 - (2b + mu) z - 2c] y' + [2 a N z + E/mu] y = 0.
/// a, b, c are stored as a_q, b_q, c_q to keep them apart from the scaling
/// exponents of the same names.
struct QesClass1Params {
    double mu;
    double a_q;
    double b_q;
    double c_q;
    int n;         // the N of the model, >= 0
    double energy; // the E of the model
};

QesOde qes_class1(const QesClass1Params& params);

} // namespace fpe
