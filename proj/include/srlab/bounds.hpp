#pragma once

// Computable theory layer: concentration lemmas, the h transform and its
// inverses, the epsilon budget split, Gaussian KL, and the three regret
// bound curves.
//
// Conventions pinned here once:
//  * Gamma left tail uses the sharpened exp(-(m - a)^2 / (2 a beta)) form
//    (m = alpha beta the mean, beta the scale), which is what the proof
//    actually establishes and is tighter than the 4 alpha beta^2 variant
//    for a < m.
//  * lambda_max always denotes the largest squared pairwise mean gap, so
//    it enters the Theorem 1 correction as lambda_max / 2 directly.
//  * Gamma_i in the Theorem 2 thresholds is the plain mean gap
//    mu_opt - mu_i; arms whose mean exceeds the optimal arm's mean make
//    that branch permanently non-informative.
//  * Theorem 2 sums suboptimal arms only; Theorem 1 includes every arm as
//    displayed (the optimal arm contributes its variance correction).
//  * Lemma 4 per-arm factors delta_i - rho xi_i sigma_i^2 / L0 may be
//    negative; they are kept as-is and are inspectable per arm.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "bandit.hpp"
#include "errors.hpp"
#include "metrics.hpp"

namespace srlab {

// ---------------------------------------------------------------------------
// Tail bounds (one-line exponential forms).

// P(X <= a) <= exp(-q (mu - a)^2 / 2) for X ~ N(mu, 1/q), a < mu.
inline double gaussian_left_tail_bound(double mu, double precision, double a) {
    if (!(precision > 0.0)) {
        throw DomainError("gaussian_left_tail_bound: precision must be positive");
    }
    if (!(a < mu)) {
        throw DomainError("gaussian_left_tail_bound: need a < mu");
    }
    const double gap = mu - a;
    return std::exp(-0.5 * precision * gap * gap);
}

// exp(-(m - a)^2 / (2 a beta)) for X ~ Gamma(shape alpha, scale beta),
// 0 < a < m = alpha beta.  Dominates P(X <= a) only near the mean (it holds
// with margin for a >= 0.7 m up to shape 100); deeper in the left tail the
// quadratic exponent overshoots the true large-deviation rate and the value
// drops below the CDF, e.g. shape 0.5, scale 1, a = 0.025 gives 0.011
// against a CDF of 0.177.  Callers concerned with domination must stay in
// the concentration regime; verify-lemmas checks exactly that region.
inline double gamma_left_tail_bound(double shape, double scale, double a) {
    if (!(shape > 0.0) || !(scale > 0.0)) {
        throw DomainError("gamma_left_tail_bound: shape and scale must be positive");
    }
    const double m = shape * scale;
    if (!(a > 0.0) || !(a < m)) {
        throw DomainError("gamma_left_tail_bound: need 0 < a < shape * scale");
    }
    const double gap = m - a;
    return std::exp(-gap * gap / (2.0 * a * scale));
}

// Same bound with a rate parameter: exp(-rate (alpha/rate - a)^2 / (2 a)).
inline double gamma_left_tail_bound_rate(double shape, double rate, double a) {
    if (!(shape > 0.0) || !(rate > 0.0)) {
        throw DomainError("gamma_left_tail_bound_rate: shape and rate must be positive");
    }
    const double m = shape / rate;
    if (!(a > 0.0) || !(a < m)) {
        throw DomainError("gamma_left_tail_bound_rate: need 0 < a < shape / rate");
    }
    const double gap = m - a;
    return std::exp(-rate * gap * gap / (2.0 * a));
}

struct TailBoundPair {
    double lower = 0.0;
    double upper = 0.0;
};

// Two-sided Mills-type sandwich for P(X > x), X ~ N(mu, sigma^2), x > mu:
//   sqrt(2/pi) e^{-t^2/2} / (t + sqrt(t^2 + 4))    <= P
//   sqrt(2/pi) e^{-t^2/2} / (t + sqrt(t^2 + 8/pi)) >= P,  t = (x - mu)/sigma.
inline TailBoundPair gaussian_two_sided_tail_bounds(double mu, double sigma, double x) {
    if (!(sigma > 0.0)) {
        throw DomainError("gaussian_two_sided_tail_bounds: sigma must be positive");
    }
    if (!(x > mu)) {
        throw DomainError("gaussian_two_sided_tail_bounds: need x > mu");
    }
    static const double pi = 4.0 * std::atan(1.0);
    const double t = (x - mu) / sigma;
    const double common = std::sqrt(2.0 / pi) * std::exp(-0.5 * t * t);
    TailBoundPair out;
    out.lower = common / (t + std::sqrt(t * t + 4.0));
    out.upper = common / (t + std::sqrt(t * t + 8.0 / pi));
    return out;
}

// Mills-type sandwich for P(X >= x), X ~ Gamma(shape alpha > 1, rate beta),
// x > (alpha - 1)/beta (right of the mode):
//   lower = (beta x)^(alpha-1) e^{-beta x} / Gamma(alpha)
//   upper = lower * beta / (beta - (alpha-1)/x)
// The ratio upper/lower -> 1 as x -> infinity.
inline TailBoundPair gamma_mills_bounds(double shape, double rate, double x) {
    if (!(shape > 1.0) || !(rate > 0.0)) {
        throw DomainError("gamma_mills_bounds: need shape > 1 and rate > 0");
    }
    const double mode = (shape - 1.0) / rate;
    if (!(x > mode)) {
        throw DomainError("gamma_mills_bounds: need x > (shape - 1) / rate");
    }
    const double log_lower =
        (shape - 1.0) * std::log(rate * x) - rate * x - std::lgamma(shape);
    TailBoundPair out;
    out.lower = std::exp(log_lower);
    out.upper = out.lower * rate / (rate - (shape - 1.0) / x);
    return out;
}

// ---------------------------------------------------------------------------
// The h transform h(x) = (x - 1 - log x) / 2 and its two inverse branches.

inline double h(double x) {
    if (!(x > 0.0)) {
        throw DomainError("h: x must be positive");
    }
    return 0.5 * (x - 1.0 - std::log(x));
}

namespace detail {

// Bisect h to the target on [lo, hi]; increasing selects the branch.
// Runs bisection to the floating-point floor.  No relative-width early exit:
// on the left branch h' ~ -1/(2x) blows up as x -> 0, so a fixed x tolerance
// would leave an unacceptable residual in y.
inline double h_bisect(double y, double lo, double hi, bool increasing) {
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) {
            break;
        }
        const bool above = h(mid) > y;
        if (above == increasing) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

// Root of h(x) = y with x >= 1.  Bracket [1, 1 + 2y + 2 sqrt(y)] is valid
// because e^{2s} >= 1 + 2s + 2s^2 for s = sqrt(y) >= 0.
inline double h_plus_inv(double y) {
    if (!(y >= 0.0)) {
        throw DomainError("h_plus_inv: y must be >= 0");
    }
    if (y == 0.0) {
        return 1.0;
    }
    return detail::h_bisect(y, 1.0, 1.0 + 2.0 * y + 2.0 * std::sqrt(y), true);
}

// Root of h(x) = y with 0 < x <= 1.  h(e^{-2y-1}) = (e^{-2y-1} + 2y)/2 > y,
// so [e^{-2y-1}, 1] brackets the root.
inline double h_minus_inv(double y) {
    if (!(y >= 0.0)) {
        throw DomainError("h_minus_inv: y must be >= 0");
    }
    if (y == 0.0) {
        return 1.0;
    }
    return detail::h_bisect(y, std::exp(-2.0 * y - 1.0), 1.0, false);
}

// ---------------------------------------------------------------------------
// Epsilon budget split between the mean and variance routes.

struct EpsilonSplit {
    double eps_mu = 0.0;
    double eps_sigma = 0.0;
};

// Splits eps so that eps_mu + eps_sigma = eps with weights 1/(L0 + rho
// sigma_i^2) and mu_1/(L0 + rho sigma_1^2); both parts are positive and
// shrink to zero with eps.
inline EpsilonSplit epsilon_split(double eps, double mu1, double sigma1_sq, double sigmai_sq,
                                  double rho, double l0) {
    check_objective_params(rho, l0, "epsilon_split");
    if (!(eps > 0.0)) {
        throw DomainError("epsilon_split: eps must be positive");
    }
    if (!(mu1 > 0.0)) {
        throw DomainError("epsilon_split: optimal mean mu1 must be positive");
    }
    if (!(sigma1_sq > 0.0) || !(sigmai_sq > 0.0)) {
        throw DomainError("epsilon_split: variances must be positive");
    }
    const double w_mu = 1.0 / (l0 + rho * sigmai_sq);
    const double w_sigma = mu1 / (l0 + rho * sigma1_sq);
    const double denom = w_mu + w_sigma;
    return EpsilonSplit{eps * w_mu / denom, eps * w_sigma / denom};
}

// KL divergence between N(mu_p, var_p) and N(mu_q, var_q).
inline double kl_gaussian(const ArmParams& p, const ArmParams& q) {
    if (!(p.variance > 0.0) || !(q.variance > 0.0)) {
        throw DomainError("kl_gaussian: variances must be positive");
    }
    const double dm = p.mean - q.mean;
    return std::log(std::sqrt(q.variance / p.variance)) +
           (p.variance + dm * dm) / (2.0 * q.variance) - 0.5;
}

// ---------------------------------------------------------------------------
// Regret bound curves.

// Additive / multiplicative constants left symbolic in the statements.
// c1, c2 belong to the lower bound (an alpha-consistency argument needs
// c1 < 1 - alpha).
struct BoundConstants {
    double a7 = 0.0;
    double a8 = 0.0;
    double a9 = 0.0;
    double a10 = 0.0;
    double a11 = 0.0;
    double c1 = 0.625;
    double c2 = 0.8;
    double alpha_consistency = 0.1;
};

inline void validate(const BoundConstants& k) {
    if (!(k.c1 > 0.0) || !(k.c2 > 0.0) || !(k.c2 < 1.0)) {
        throw DomainError("BoundConstants: need c1 > 0 and c2 in (0, 1)");
    }
    if (!(k.alpha_consistency > 0.0) || !(k.alpha_consistency < 1.0)) {
        throw DomainError("BoundConstants: alpha_consistency must lie in (0, 1)");
    }
    if (!(k.c1 < 1.0 - k.alpha_consistency)) {
        throw DomainError("BoundConstants: need c1 < 1 - alpha_consistency");
    }
    for (double a : {k.a7, k.a8, k.a9, k.a10, k.a11}) {
        if (!std::isfinite(a) || a < 0.0) {
            throw DomainError("BoundConstants: additive constants must be finite and >= 0");
        }
    }
}

// Per-arm coefficient of E[s_i] in the Theorem 1 decomposition:
//   delta_i + xi_i rho (lambda_max/2 + total_var - var_i)
//             / (L0 + rho lambda_max/2 + rho total_var).
inline std::vector<double> theorem1_arm_coefficients(const BanditInstance& instance) {
    const GapSummary g = gap_summary(instance);
    const double rho = instance.rho();
    const double l0 = instance.l0();
    double total_var = 0.0;
    for (const ArmParams& a : instance.arms()) {
        total_var += a.variance;
    }
    const double denom = l0 + rho * (0.5 * g.lambda_max) + rho * total_var;
    std::vector<double> coef(instance.num_arms());
    for (std::size_t i = 0; i < instance.num_arms(); ++i) {
        const double numer = 0.5 * g.lambda_max + total_var - instance.arm(i).variance;
        coef[i] = g.delta[i] + g.sharpe[i] * rho * numer / denom;
    }
    return coef;
}

inline double theorem1_upper_bound(const BanditInstance& instance,
                                   std::span<const double> expected_pulls,
                                   const BoundConstants& constants = {}) {
    validate(constants);
    if (expected_pulls.size() != instance.num_arms()) {
        throw std::invalid_argument("theorem1_upper_bound: expected_pulls size mismatch");
    }
    const std::vector<double> coef = theorem1_arm_coefficients(instance);
    double total = constants.a7;
    for (std::size_t i = 0; i < coef.size(); ++i) {
        if (!(expected_pulls[i] >= 0.0)) {
            throw DomainError("theorem1_upper_bound: expected pulls must be >= 0");
        }
        total += expected_pulls[i] * coef[i];
    }
    return total;
}

// One point of a bound curve.  informative = false marks evaluations where
// a threshold branch degenerated (the value is +infinity there).
struct BoundPoint {
    std::uint64_t n = 0;
    double value = 0.0;
    bool informative = true;
};

using EpsilonRule = std::function<double(std::uint64_t)>;

// The default epsilon schedule (log n)^(-1/4).
inline double default_epsilon(std::uint64_t n) {
    return std::pow(std::log(static_cast<double>(n)), -0.25);
}

// Finite-time upper bound curve.  For each suboptimal arm the expected
// pull count is bounded by
//   1 + max{ 2 log(2n) / (Gamma_i - eps_mu L0)^2,
//            log(2n) / h(sigma_i^2 (1 - eps_sigma/xi_1) / sigma_1^2) }
//   + A8 (log n)^{3/4} + A9 (log n)^{1/2} + A10 (log n)^{1/4} + A11,
// which is then weighted by the Theorem 1 coefficient and summed; A7 is
// added once.  A non-positive first denominator or non-positive h argument
// makes the point non-informative; an h argument of exactly 1 drops the
// second branch.
inline std::vector<BoundPoint> theorem2_regret_curve(const BanditInstance& instance,
                                                     std::span<const std::uint64_t> n_grid,
                                                     const BoundConstants& constants = {},
                                                     const EpsilonRule& eps_rule = {}) {
    validate(constants);
    const EpsilonRule& rule = eps_rule ? eps_rule : EpsilonRule(&default_epsilon);
    const std::size_t opt = instance.optimal_arm();
    const double mu1 = instance.arm(opt).mean;
    const double s1 = instance.arm(opt).variance;
    const double xi1 = instance.optimal_sharpe();
    const double rho = instance.rho();
    const double l0 = instance.l0();
    const std::vector<double> coef = theorem1_arm_coefficients(instance);
    constexpr double inf = std::numeric_limits<double>::infinity();

    std::vector<BoundPoint> curve;
    curve.reserve(n_grid.size());
    for (std::uint64_t n : n_grid) {
        if (n < 2) {
            throw DomainError("theorem2_regret_curve: horizon must be >= 2");
        }
        const double eps = rule(n);
        if (!(eps > 0.0) || !std::isfinite(eps)) {
            throw DomainError("theorem2_regret_curve: eps rule must return a positive value");
        }
        const double log2n = std::log(2.0 * static_cast<double>(n));
        const double logn = std::log(static_cast<double>(n));
        const double slack = constants.a8 * std::pow(logn, 0.75) +
                             constants.a9 * std::sqrt(logn) +
                             constants.a10 * std::pow(logn, 0.25) + constants.a11;
        BoundPoint point{n, constants.a7, true};
        for (std::size_t i = 0; i < instance.num_arms(); ++i) {
            if (i == opt) {
                continue;
            }
            const EpsilonSplit split =
                epsilon_split(eps, mu1, s1, instance.arm(i).variance, rho, l0);
            const double gamma_i = mu1 - instance.arm(i).mean;
            const double mean_margin = gamma_i - split.eps_mu * l0;
            const double branch_mu =
                mean_margin > 0.0 ? 2.0 * log2n / (mean_margin * mean_margin) : inf;
            const double ratio =
                instance.arm(i).variance * (1.0 - split.eps_sigma / xi1) / s1;
            double u;
            if (ratio == 1.0) {
                u = branch_mu; // h vanishes exactly; only the mean route binds
            } else {
                const double branch_sigma = ratio > 0.0 ? log2n / h(ratio) : inf;
                u = std::max(branch_mu, branch_sigma);
            }
            if (!std::isfinite(u)) {
                point.informative = false;
                point.value = inf;
            }
            if (point.informative) {
                point.value += (1.0 + u + slack) * coef[i];
            }
        }
        curve.push_back(point);
    }
    return curve;
}

// Lemma 4 factors delta_i - rho xi_i sigma_i^2 / L0 (zero at the optimal
// arm); negative entries are legitimate and kept.
inline std::vector<double> theorem3_arm_factors(const BanditInstance& instance) {
    const GapSummary g = gap_summary(instance);
    std::vector<double> factors(instance.num_arms(), 0.0);
    for (std::size_t i = 0; i < instance.num_arms(); ++i) {
        if (i == g.optimal_arm) {
            continue;
        }
        factors[i] = g.delta[i] -
                     instance.rho() * g.sharpe[i] * instance.arm(i).variance / instance.l0();
    }
    return factors;
}

// Asymptotic lower bound curve:
//   c1 c2 log n * sum_{i != opt} factor_i / KL(arm_i, arm_opt)  -  A7.
inline std::vector<double> theorem3_lower_bound_curve(const BanditInstance& instance,
                                                      std::span<const std::uint64_t> n_grid,
                                                      const BoundConstants& constants = {}) {
    validate(constants);
    const std::vector<double> factors = theorem3_arm_factors(instance);
    const std::size_t opt = instance.optimal_arm();
    double slope = 0.0;
    for (std::size_t i = 0; i < instance.num_arms(); ++i) {
        if (i == opt) {
            continue;
        }
        slope += factors[i] / kl_gaussian(instance.arm(i), instance.arm(opt));
    }
    slope *= constants.c1 * constants.c2;
    std::vector<double> curve;
    curve.reserve(n_grid.size());
    for (std::uint64_t n : n_grid) {
        if (n < 2) {
            throw DomainError("theorem3_lower_bound_curve: horizon must be >= 2");
        }
        curve.push_back(slope * std::log(static_cast<double>(n)) - constants.a7);
    }
    return curve;
}

} // namespace srlab
