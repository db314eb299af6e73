#include "fpe/qes.hpp"

#include <cmath>

#include "fpe/errors.hpp"

namespace fpe {

namespace {

const poly::Coeffs& coeffs_of(const Profile& p, const char* who) {
    if (p.kind() != ProfileKind::polynomial) {
        throw UnsupportedOperationError(std::string(who) + ": requires polynomial profiles");
    }
    return p.coefficients();
}

} // namespace

QesOde make_qes_ode(Profile P, Profile Q, Profile R) {
    if (P.kind() == ProfileKind::polynomial && P.is_zero_polynomial()) {
        throw InvalidInputError("qes ode: P must not be identically zero");
    }
    return QesOde{std::move(P), std::move(Q), std::move(R)};
}

poly::Coeffs reducibility_residual(const QesOde& ode) {
    const auto& p = coeffs_of(ode.P, "fpe_reducible");
    const auto& q = coeffs_of(ode.Q, "fpe_reducible");
    const auto& r = coeffs_of(ode.R, "fpe_reducible");
    return poly::sub(poly::derive(q), poly::add(poly::derive(poly::derive(p)), r));
}

bool fpe_reducible(const QesOde& ode) {
    return poly::equal(reducibility_residual(ode), poly::Coeffs{0.0});
}

QesOde qes_class1(const QesClass1Params& params) {
    if (!std::isfinite(params.mu) || params.mu == 0.0) {
        throw InvalidParameterError("qes_class1: mu must be nonzero");
    }
    if (params.n < 0) {
        throw InvalidParameterError("qes_class1: N must be non-negative");
    }
    return make_qes_ode(
        Profile::polynomial({0.0, 0.0, params.mu}),
        Profile::polynomial({2.0 * params.c_q, 2.0 * params.b_q + params.mu, -2.0 * params.a_q}),
        Profile::polynomial({params.energy / params.mu, 2.0 * params.a_q * params.n}));
}

} // namespace fpe
