#pragma once

// Reference CDFs used to cross-check the closed-form tail bounds.  These
// are deliberately independent of bounds.hpp: the bounds are one-line
// exponential expressions, the functions here evaluate the actual
// distribution functions (erfc for the normal, series / continued fraction
// for the regularized incomplete gamma).

#include <cmath>

#include "errors.hpp"

namespace srlab {

inline double normal_cdf(double z) {
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return 0.5 * std::erfc(-z * inv_sqrt2);
}

namespace detail {

// Lower regularized incomplete gamma by power series; use for x < a + 1.
inline double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int k = 0; k < 500; ++k) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) {
            break;
        }
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma by Lentz continued fraction; use for
// x >= a + 1.
inline double gamma_q_cf(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) {
            break;
        }
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace detail

// P(a, x) = P(Gamma(shape a, scale 1) <= x).
inline double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) {
        throw DomainError("regularized_gamma_p: need a > 0 and x >= 0");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (x < a + 1.0) {
        return detail::gamma_p_series(a, x);
    }
    return 1.0 - detail::gamma_q_cf(a, x);
}

inline double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) {
        throw DomainError("regularized_gamma_q: need a > 0 and x >= 0");
    }
    if (x == 0.0) {
        return 1.0;
    }
    if (x < a + 1.0) {
        return 1.0 - detail::gamma_p_series(a, x);
    }
    return detail::gamma_q_cf(a, x);
}

// CDF of Gamma(shape, rate) at x.
inline double gamma_cdf(double shape, double rate, double x) {
    if (!(rate > 0.0)) {
        throw DomainError("gamma_cdf: rate must be positive");
    }
    return regularized_gamma_p(shape, rate * x);
}

} // namespace srlab
