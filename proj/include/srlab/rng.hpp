#pragma once

// Deterministic random number generation for the experiment harness.
//
// RngStream is a counter-based generator: every output is a strong 64-bit
// hash of (counter, key), where the key is derived from a (seed, stream id)
// pair.  Distinct stream ids therefore give statistically independent
// streams without jump-ahead bookkeeping, and a stream can be split into
// independent substreams by re-keying with a tag.  Within one build the
// sequence for a given (seed, stream id) is fully reproducible.
//
// Normal variates use the inverse-CDF method (Acklam's rational
// approximation polished with one Halley step of erfc), so each normal
// consumes exactly one uniform.  Gamma variates use Marsaglia-Tsang
// squeeze sampling with the usual boost for shape < 1.

#include <cmath>
#include <cstdint>
#include <limits>

#include "errors.hpp"

namespace srlab {

// splitmix64 finalizer; full avalanche on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Inverse of the standard normal CDF, accurate to machine precision.
// Acklam's rational approximation (~1.1e-9 relative) refined by one Halley
// iteration against 0.5*erfc(-x/sqrt(2)).
inline double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("inverse_normal_cdf: p must lie strictly in (0, 1)");
    }
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

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley step; exp(x*x/2) stays finite for all p representable away
    // from {0,1} in double precision.
    static const double sqrt2 = std::sqrt(2.0);
    static const double sqrt_2pi = std::sqrt(8.0 * std::atan(1.0));
    const double e = 0.5 * std::erfc(-x / sqrt2) - p;
    const double u = e * sqrt_2pi * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

class RngStream {
  public:
    RngStream() noexcept : RngStream(0, 0) {}

    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
        : key_(mix64(mix64(seed + 0x9e3779b97f4a7c15ULL) ^
                     mix64(stream_id + 0x2545f4914f6cdd1dULL))),
          counter_(0) {}

    // Independent stream derived from this stream's key; its counter starts
    // at zero, so substreams taken at any point are position-independent.
    RngStream substream(std::uint64_t tag) const noexcept {
        RngStream s;
        s.key_ = mix64(key_ ^ mix64(tag + 0xd1b54a32d192ed03ULL));
        s.counter_ = 0;
        return s;
    }

    std::uint64_t next_u64() noexcept {
        counter_ += 0x9e3779b97f4a7c15ULL;
        return mix64(counter_ ^ key_);
    }

    // Uniform on the open interval (0, 1): 2^52 equispaced midpoints.
    double next_uniform() noexcept {
        return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    }

    double next_normal(double mean, double stddev) {
        return mean + stddev * inverse_normal_cdf(next_uniform());
    }

    // Gamma(shape, rate) via Marsaglia-Tsang; shape < 1 handled by the
    // Gamma(shape+1) boost G * U^(1/shape).
    double next_gamma(double shape, double rate) {
        if (!(shape > 0.0) || !(rate > 0.0)) {
            throw DomainError("next_gamma: shape and rate must be positive");
        }
        if (shape < 1.0) {
            const double u = next_uniform();
            return next_gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            const double x = next_normal(0.0, 1.0);
            const double t = 1.0 + c * x;
            if (t <= 0.0) {
                continue;
            }
            const double v = t * t * t;
            const double u = next_uniform();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) {
                return d * v / rate;
            }
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
                return d * v / rate;
            }
        }
    }

  private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace srlab
