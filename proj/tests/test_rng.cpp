#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "srlab/rng.hpp"

using namespace srlab;

TEST_CASE("identical (seed, stream) pairs reproduce the same sequence") {
    RngStream a(123, 7);
    RngStream b(123, 7);
    for (int i = 0; i < 1000; ++i) {
        REQUIRE(a.next_u64() == b.next_u64());
    }
    RngStream c(123, 8);
    RngStream d(124, 7);
    bool all_equal_c = true;
    bool all_equal_d = true;
    RngStream e(123, 7);
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t r = e.next_u64();
        all_equal_c = all_equal_c && (c.next_u64() == r);
        all_equal_d = all_equal_d && (d.next_u64() == r);
    }
    REQUIRE_FALSE(all_equal_c);
    REQUIRE_FALSE(all_equal_d);
}

TEST_CASE("substreams are deterministic and distinct") {
    RngStream root(42, 0);
    RngStream s1 = root.substream(1);
    RngStream s1b = root.substream(1);
    RngStream s2 = root.substream(2);
    bool same = true;
    for (int i = 0; i < 256; ++i) {
        const std::uint64_t r = s1.next_u64();
        REQUIRE(s1b.next_u64() == r);
        same = same && (s2.next_u64() == r);
    }
    REQUIRE_FALSE(same);
}

TEST_CASE("uniforms live strictly inside (0, 1) with the right moments") {
    RngStream rng(2024, 3);
    const int m = 200000;
    double sum = 0.0;
    double sumsq = 0.0;
    for (int i = 0; i < m; ++i) {
        const double u = rng.next_uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sumsq += u * u;
    }
    const double mean = sum / m;
    const double var = sumsq / m - mean * mean;
    REQUIRE(std::fabs(mean - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / m));
    REQUIRE(std::fabs(var - 1.0 / 12.0) < 5.0 * (1.0 / 12.0) * std::sqrt(2.0 / m));
}

TEST_CASE("cross-stream correlation is negligible") {
    const int m = 100000;
    RngStream a(99, 0);
    RngStream b(99, 1);
    double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
    for (int i = 0; i < m; ++i) {
        const double x = a.next_uniform();
        const double y = b.next_uniform();
        sa += x;
        sb += y;
        saa += x * x;
        sbb += y * y;
        sab += x * y;
    }
    const double cov = sab / m - (sa / m) * (sb / m);
    const double vx = saa / m - (sa / m) * (sa / m);
    const double vy = sbb / m - (sb / m) * (sb / m);
    const double r = cov / std::sqrt(vx * vy);
    REQUIRE(std::fabs(r) <= 5.0 / std::sqrt(static_cast<double>(m)));
}

TEST_CASE("inverse normal CDF round-trips against erfc") {
    // Classic two-sided 97.5% quantile.
    REQUIRE(inverse_normal_cdf(0.975) == Catch::Approx(1.9599639845400542).epsilon(1e-12));
    const double ps[] = {1e-9, 1e-6, 0.02425, 0.1, 0.5, 0.77, 0.97575, 1 - 1e-6, 1 - 1e-9};
    for (double p : ps) {
        const double x = inverse_normal_cdf(p);
        const double back = 0.5 * std::erfc(-x / std::sqrt(2.0));
        REQUIRE(std::fabs(back - p) <= 1e-12 * std::max(p, 1.0 - p) + 1e-16);
    }
    REQUIRE_THROWS_AS(inverse_normal_cdf(0.0), DomainError);
    REQUIRE_THROWS_AS(inverse_normal_cdf(1.0), DomainError);
}

TEST_CASE("normal variates match their first two moments") {
    RngStream rng(7, 11);
    const int m = 200000;
    double sum = 0, sumsq = 0;
    for (int i = 0; i < m; ++i) {
        const double z = rng.next_normal(1.5, 2.0);
        sum += z;
        sumsq += z * z;
    }
    const double mean = sum / m;
    const double var = sumsq / m - mean * mean;
    REQUIRE(std::fabs(mean - 1.5) < 5.0 * 2.0 / std::sqrt(static_cast<double>(m)));
    REQUIRE(std::fabs(var - 4.0) < 5.0 * 4.0 * std::sqrt(2.0 / m));
}

TEST_CASE("gamma variates match their first two moments") {
    RngStream rng(7, 12);
    const int m = 200000;

    const double shape = 2.5, rate = 3.0;
    double sum = 0, sumsq = 0;
    for (int i = 0; i < m; ++i) {
        const double g = rng.next_gamma(shape, rate);
        REQUIRE(g > 0.0);
        sum += g;
        sumsq += g * g;
    }
    double mean = sum / m;
    double var = sumsq / m - mean * mean;
    const double true_mean = shape / rate;
    const double true_var = shape / (rate * rate);
    REQUIRE(std::fabs(mean - true_mean) < 5.0 * std::sqrt(true_var / m));
    // kurtosis of Gamma: Var(X^2 based estimator) ~ true_var^2 (2 + 6/shape)
    REQUIRE(std::fabs(var - true_var) < 5.0 * true_var * std::sqrt((2.0 + 6.0 / shape) / m));

    // boost path, shape < 1
    sum = 0;
    for (int i = 0; i < m; ++i) {
        sum += rng.next_gamma(0.5, 1.0);
    }
    REQUIRE(std::fabs(sum / m - 0.5) < 5.0 * std::sqrt(0.5 / m));

    REQUIRE_THROWS_AS(rng.next_gamma(0.0, 1.0), DomainError);
    REQUIRE_THROWS_AS(rng.next_gamma(1.0, -2.0), DomainError);
}
