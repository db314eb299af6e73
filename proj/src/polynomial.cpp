#include "fpe/polynomial.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "fpe/errors.hpp"

namespace fpe::poly {

Coeffs canonicalize(Coeffs c) {
    if (c.empty()) {
        throw InvalidInputError("polynomial: coefficient list is empty");
    }
    for (double v : c) {
        if (!std::isfinite(v)) {
            throw InvalidInputError("polynomial: non-finite coefficient");
        }
    }
    while (c.size() > 1 && c.back() == 0.0) {
        c.pop_back();
    }
    if (static_cast<int>(c.size()) - 1 > kMaxDegree) {
        throw InvalidInputError("polynomial: degree exceeds cap " + std::to_string(kMaxDegree));
    }
    return c;
}

double eval(const Coeffs& c, double z) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

Coeffs derive(const Coeffs& c) {
    if (c.size() <= 1) {
        return {0.0};
    }
    Coeffs d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) {
        d[k - 1] = static_cast<double>(k) * c[k];
    }
    return canonicalize(std::move(d));
}

Coeffs add(const Coeffs& a, const Coeffs& b) {
    Coeffs r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return canonicalize(std::move(r));
}

Coeffs sub(const Coeffs& a, const Coeffs& b) {
    Coeffs r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return canonicalize(std::move(r));
}

Coeffs scale(const Coeffs& a, double k) {
    Coeffs r(a);
    for (double& v : r) v *= k;
    return canonicalize(std::move(r));
}

Coeffs mul(const Coeffs& a, const Coeffs& b) {
    Coeffs r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    return canonicalize(std::move(r));
}

int degree(const Coeffs& c) {
    std::size_t last = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 0.0) last = i;
    }
    return static_cast<int>(last);
}

bool is_zero(const Coeffs& c) {
    for (double v : c) {
        if (v != 0.0) return false;
    }
    return true;
}

bool equal(const Coeffs& a, const Coeffs& b, double tol) {
    const Coeffs ca = canonicalize(a);
    const Coeffs cb = canonicalize(b);
    const std::size_t n = std::max(ca.size(), cb.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double va = i < ca.size() ? ca[i] : 0.0;
        const double vb = i < cb.size() ? cb[i] : 0.0;
        if (std::abs(va - vb) > tol) return false;
    }
    return true;
}

std::string format(const Coeffs& c, const std::string& var) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double v = c[k];
        if (v == 0.0 && c.size() > 1) continue;
        if (first) {
            if (v < 0) out << "-";
        } else {
            out << (v < 0 ? " - " : " + ");
        }
        const double av = std::abs(v);
        if (av != 1.0 || k == 0) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.12g", av);
            out << buf;
            if (k > 0) out << " ";
        }
        if (k == 1) {
            out << var;
        } else if (k > 1) {
            out << var << "^" << k;
        }
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

} // namespace fpe::poly
