#pragma once

// In-product lemma verification: re-checks the concentration lemmas against
// the library's own high-precision CDFs on fixed grids, runs the pull-count
// variance simulation, and reports one pass/fail line per lemma with the
// worst-case margin (margin >= 1 means the claim held with that much room).
//
// The gamma left-tail grid deliberately stays in the concentration regime
// a >= 0.7 * mean where the simplified exponent actually dominates; see the
// note on gamma_left_tail_bound.  The pull-count variance check runs
// round-robin and uniform-random, the policies for which the n/2 ceiling is
// sound; adaptive samplers empirically exceed it by an order of magnitude.
//
// VerifyOptions::corrupt_lemma is a self-test hook: naming a lemma flips the
// sign of its pass-side quantity so the report must single it out.

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "srlab/bandit.hpp"
#include "srlab/bounds.hpp"
#include "srlab/experiment.hpp"
#include "srlab/metrics.hpp"
#include "srlab/policies.hpp"
#include "srlab/special.hpp"

namespace srlab {

struct LemmaReport {
    std::string name;
    bool pass = false;
    double worst_margin = 0.0;
    std::string detail;
};

struct VerifyOptions {
    std::string corrupt_lemma; // self-test hook; empty = no corruption
};

namespace detail {

inline std::string margin_str(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

struct MarginTracker {
    double worst = std::numeric_limits<double>::infinity();
    std::string where;

    void observe(double margin, const std::string& at) {
        if (margin < worst) {
            worst = margin;
            where = at;
        }
    }
};

inline LemmaReport finish(const std::string& name, const MarginTracker& mt) {
    LemmaReport r;
    r.name = name;
    r.pass = mt.worst >= 1.0;
    r.worst_margin = mt.worst;
    r.detail = "worst at " + (mt.where.empty() ? std::string("n/a") : mt.where);
    return r;
}

inline LemmaReport check_gaussian_left_tail(double flip) {
    MarginTracker mt;
    for (double mu : {-1.0, 0.0, 2.0}) {
        for (double q : {0.5, 1.0, 4.0, 25.0}) {
            for (double d : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
                const double a = mu - d / std::sqrt(q);
                const double bound = flip * gaussian_left_tail_bound(mu, q, a);
                const double truth = normal_cdf(-d);
                mt.observe(bound / truth, "mu=" + margin_str(mu) + " q=" + margin_str(q) +
                                              " d=" + margin_str(d));
            }
        }
    }
    return finish("gaussian-left-tail", mt);
}

inline LemmaReport check_gamma_left_tail(double flip) {
    MarginTracker mt;
    for (double shape : {0.5, 1.0, 2.0, 3.0, 5.0, 8.0, 12.0, 20.0, 35.0, 60.0, 100.0}) {
        for (double scale : {0.25, 1.0, 3.0}) {
            for (double frac : {0.7, 0.75, 0.8, 0.85, 0.9, 0.95, 0.97, 0.99}) {
                const double a = frac * shape * scale;
                const double bound = flip * gamma_left_tail_bound(shape, scale, a);
                const double truth = regularized_gamma_p(shape, a / scale);
                mt.observe(bound / truth, "shape=" + margin_str(shape) +
                                              " scale=" + margin_str(scale) +
                                              " frac=" + margin_str(frac));
            }
        }
    }
    return finish("gamma-left-tail", mt);
}

inline LemmaReport check_gaussian_mills(double flip) {
    MarginTracker mt;
    for (double mu : {0.0, 1.0}) {
        for (double sigma : {0.5, 1.0, 2.0}) {
            for (double t = 0.1; t < 8.2; t += 0.5) {
                const TailBoundPair s = gaussian_two_sided_tail_bounds(mu, sigma, mu + t * sigma);
                const double truth = normal_cdf(-t);
                const std::string at =
                    "mu=" + margin_str(mu) + " sigma=" + margin_str(sigma) + " t=" + margin_str(t);
                mt.observe(truth / (flip * s.lower), at + " (lower)");
                mt.observe(flip * s.upper / truth, at + " (upper)");
            }
        }
    }
    return finish("gaussian-mills", mt);
}

inline LemmaReport check_gamma_mills(double flip) {
    MarginTracker mt;
    for (double shape : {1.2, 1.5, 2.0, 3.5, 5.0, 8.0}) {
        for (double rate : {0.5, 1.0, 2.0}) {
            for (double c : {0.5, 1.0, 2.0, 5.0, 10.0}) {
                const double x = (shape - 1.0 + c) / rate;
                const TailBoundPair s = gamma_mills_bounds(shape, rate, x);
                const double truth = regularized_gamma_q(shape, rate * x);
                const std::string at = "shape=" + margin_str(shape) + " rate=" + margin_str(rate) +
                                       " x=" + margin_str(x);
                mt.observe(truth / (flip * s.lower), at + " (lower)");
                mt.observe(flip * s.upper / truth, at + " (upper)");
            }
        }
    }
    // asymptotic-tightness spot check: shape 1.5, five standard deviations
    // past the mean, the two-sided gap must be within 10%
    {
        const double shape = 1.5, rate = 1.0;
        const double x = shape / rate + 5.0 * std::sqrt(shape) / rate;
        const TailBoundPair s = gamma_mills_bounds(shape, rate, x);
        mt.observe(1.1 / (flip * s.upper / s.lower), "tightness at distance 5 (ratio)");
    }
    return finish("gamma-mills", mt);
}

inline LemmaReport check_h_round_trip(double flip) {
    MarginTracker mt;
    for (double y : {1e-6, 1e-4, 0.01, 0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0}) {
        const double tol = flip * 1e-10 * std::max(1.0, y);
        const double rp = std::fabs(h(h_plus_inv(y)) - y);
        const double rm = std::fabs(h(h_minus_inv(y)) - y);
        const double inf = std::numeric_limits<double>::infinity();
        mt.observe(rp == 0.0 ? inf : tol / rp, "y=" + margin_str(y) + " (plus)");
        mt.observe(rm == 0.0 ? inf : tol / rm, "y=" + margin_str(y) + " (minus)");
    }
    return finish("h-round-trip", mt);
}

inline LemmaReport check_pull_count_variance(double flip) {
    MarginTracker mt;
    const BanditInstance k2 = make_instance({{0.5, 0.3}, {0.3, 0.2}}, 1.0, 1.0);
    const BanditInstance k10 = paper_instance();
    const std::uint64_t n = 1000;
    const int reps = 300;
    const std::vector<std::uint64_t> ts = {n};
    for (PolicyKind kind : {PolicyKind::round_robin, PolicyKind::uniform_random}) {
        for (const BanditInstance* inst : {&k2, &k10}) {
            PolicyConfig pc;
            pc.kind = kind;
            std::vector<std::vector<std::uint64_t>> counts;
            counts.reserve(reps);
            for (int r = 0; r < reps; ++r) {
                counts.push_back(detail::run_one_replication(*inst, pc, n, 808,
                                                             static_cast<std::uint64_t>(r), ts)
                                     .pulls);
            }
            for (std::size_t arm = 0; arm < inst->num_arms(); ++arm) {
                const double v = pull_count_variance(counts, arm);
                const double se = v * std::sqrt(2.0 / (reps - 1.0));
                const double ceiling = flip * (static_cast<double>(n) / 2.0 + 3.0 * se);
                const double inf = std::numeric_limits<double>::infinity();
                mt.observe(v == 0.0 ? inf : ceiling / v,
                           std::string(to_string(kind)) + " K=" +
                               std::to_string(inst->num_arms()) + " arm=" + std::to_string(arm));
            }
        }
    }
    return finish("pull-count-variance", mt);
}

} // namespace detail

inline std::vector<LemmaReport> verify_lemmas(const VerifyOptions& options = {}) {
    auto flip = [&](const char* name) { return options.corrupt_lemma == name ? -1.0 : 1.0; };
    std::vector<LemmaReport> reports;
    reports.push_back(detail::check_gaussian_left_tail(flip("gaussian-left-tail")));
    reports.push_back(detail::check_gamma_left_tail(flip("gamma-left-tail")));
    reports.push_back(detail::check_gaussian_mills(flip("gaussian-mills")));
    reports.push_back(detail::check_gamma_mills(flip("gamma-mills")));
    reports.push_back(detail::check_h_round_trip(flip("h-round-trip")));
    reports.push_back(detail::check_pull_count_variance(flip("pull-count-variance")));
    return reports;
}

inline bool all_lemmas_pass(const std::vector<LemmaReport>& reports) {
    for (const LemmaReport& r : reports) {
        if (!r.pass) {
            return false;
        }
    }
    return true;
}

} // namespace srlab
