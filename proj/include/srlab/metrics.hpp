#pragma once

// Sample statistics for reward streams and finished runs.
//
// All variances here are the plug-in (divide-by-t) kind, matching what the
// algorithms themselves track.  The pooled variance of a finished trace
// splits exactly into a within-arm part and a switching part:
//
//   pooled = sum_i (s_i/n) sigma_i^2  +  sum_i (s_i/n) (mu_i - mu)^2
//
// with s_i the pull counts, sigma_i^2 / mu_i the per-arm plug-in moments and
// mu the pooled mean.  realized_regret uses the pooled objective per prefix.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bandit.hpp"
#include "errors.hpp"

namespace srlab {

// Objective value of a finite sample, plug-in variance.
inline double empirical_sharpe(std::span<const double> samples, double rho, double l0) {
    check_objective_params(rho, l0, "empirical_sharpe");
    if (samples.empty()) {
        throw EmptySample("empirical_sharpe: need at least one sample");
    }
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t t = 0;
    for (double x : samples) {
        ++t;
        const double d = x - mean;
        mean += d / static_cast<double>(t);
        m2 += d * (x - mean);
    }
    return mean / (l0 + rho * (m2 / static_cast<double>(t)));
}

struct RunTrace {
    std::vector<int> choices;
    std::vector<double> rewards;

    std::size_t horizon() const noexcept { return rewards.size(); }
};

inline void check_trace(const RunTrace& trace, const char* where) {
    if (trace.rewards.empty()) {
        throw EmptySample(std::string(where) + ": empty trace");
    }
    if (trace.choices.size() != trace.rewards.size()) {
        throw std::invalid_argument(std::string(where) +
                                    ": choices and rewards must have equal length");
    }
}

struct PooledStats {
    double mean = 0.0;
    double variance = 0.0; // plug-in
};

inline PooledStats algorithmic_stats(const RunTrace& trace) {
    check_trace(trace, "algorithmic_stats");
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t t = 0;
    for (double x : trace.rewards) {
        ++t;
        const double d = x - mean;
        mean += d / static_cast<double>(t);
        m2 += d * (x - mean);
    }
    return {mean, m2 / static_cast<double>(t)};
}

struct VarianceSplit {
    double within = 0.0;    // pull-weighted per-arm plug-in variances
    double switching = 0.0; // pull-weighted squared deviation of arm means
};

inline VarianceSplit algorithmic_variance_split(const RunTrace& trace, std::size_t num_arms) {
    check_trace(trace, "algorithmic_variance_split");
    std::vector<std::uint64_t> count(num_arms, 0);
    std::vector<double> mean(num_arms, 0.0);
    std::vector<double> m2(num_arms, 0.0);
    const std::size_t n = trace.horizon();
    for (std::size_t t = 0; t < n; ++t) {
        const int i = trace.choices[t];
        if (i < 0 || static_cast<std::size_t>(i) >= num_arms) {
            throw std::out_of_range("algorithmic_variance_split: choice " + std::to_string(i) +
                                    " out of range");
        }
        const double x = trace.rewards[t];
        ++count[i];
        const double d = x - mean[i];
        mean[i] += d / static_cast<double>(count[i]);
        m2[i] += d * (x - mean[i]);
    }
    double pooled_mean = 0.0;
    for (std::size_t i = 0; i < num_arms; ++i) {
        if (count[i] > 0) {
            pooled_mean += mean[i] * static_cast<double>(count[i]);
        }
    }
    pooled_mean /= static_cast<double>(n);
    VarianceSplit out;
    for (std::size_t i = 0; i < num_arms; ++i) {
        if (count[i] == 0) {
            continue;
        }
        const double w = static_cast<double>(count[i]) / static_cast<double>(n);
        out.within += w * (m2[i] / static_cast<double>(count[i]));
        const double dm = mean[i] - pooled_mean;
        out.switching += w * dm * dm;
    }
    return out;
}

struct GapSummary {
    std::size_t optimal_arm = 0;
    std::vector<double> sharpe;               // xi_i
    std::vector<double> delta;                // xi_opt - xi_i
    std::vector<std::vector<double>> mean_gap; // mean_gap[i][j] = mu_i - mu_j
    double lambda_max = 0.0;                  // max over (i, j) of (mu_i - mu_j)^2
};

inline GapSummary gap_summary(const BanditInstance& instance) {
    GapSummary g;
    const std::size_t k = instance.num_arms();
    g.optimal_arm = instance.optimal_arm();
    g.sharpe = instance.sharpes();
    g.delta.resize(k);
    g.mean_gap.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        g.delta[i] = instance.optimal_sharpe() - g.sharpe[i];
        for (std::size_t j = 0; j < k; ++j) {
            const double gap = instance.arm(i).mean - instance.arm(j).mean;
            g.mean_gap[i][j] = gap;
            if (gap * gap > g.lambda_max) {
                g.lambda_max = gap * gap;
            }
        }
    }
    return g;
}

// Regret after every prefix: m * (xi_opt - pooled Sharpe of the first m
// rewards).  One Welford update per round.
inline std::vector<double> realized_regret(const RunTrace& trace, const BanditInstance& instance) {
    check_trace(trace, "realized_regret");
    const double xi_star = instance.optimal_sharpe();
    const double rho = instance.rho();
    const double l0 = instance.l0();
    std::vector<double> regret;
    regret.reserve(trace.horizon());
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t t = 0;
    for (double x : trace.rewards) {
        ++t;
        const double d = x - mean;
        mean += d / static_cast<double>(t);
        m2 += d * (x - mean);
        const double sr = mean / (l0 + rho * (m2 / static_cast<double>(t)));
        regret.push_back(static_cast<double>(t) * (xi_star - sr));
    }
    return regret;
}

inline std::vector<std::uint64_t> pull_counts(const RunTrace& trace, std::size_t num_arms) {
    check_trace(trace, "pull_counts");
    std::vector<std::uint64_t> counts(num_arms, 0);
    for (int i : trace.choices) {
        if (i < 0 || static_cast<std::size_t>(i) >= num_arms) {
            throw std::out_of_range("pull_counts: choice " + std::to_string(i) + " out of range");
        }
        ++counts[i];
    }
    return counts;
}

// Unbiased cross-replication variance of one arm's final pull count.  All
// replications must share the horizon.
inline double pull_count_variance(const std::vector<std::vector<std::uint64_t>>& counts_per_rep,
                                  std::size_t arm) {
    if (counts_per_rep.size() < 2) {
        throw InsufficientData("pull_count_variance: need at least two replications");
    }
    std::uint64_t horizon = 0;
    for (std::size_t r = 0; r < counts_per_rep.size(); ++r) {
        if (arm >= counts_per_rep[r].size()) {
            throw std::out_of_range("pull_count_variance: arm index out of range");
        }
        std::uint64_t total = 0;
        for (std::uint64_t c : counts_per_rep[r]) {
            total += c;
        }
        if (r == 0) {
            horizon = total;
        } else if (total != horizon) {
            throw std::invalid_argument(
                "pull_count_variance: replications disagree on the horizon");
        }
    }
    const double r_count = static_cast<double>(counts_per_rep.size());
    double mean = 0.0;
    for (const auto& counts : counts_per_rep) {
        mean += static_cast<double>(counts[arm]);
    }
    mean /= r_count;
    double ss = 0.0;
    for (const auto& counts : counts_per_rep) {
        const double d = static_cast<double>(counts[arm]) - mean;
        ss += d * d;
    }
    return ss / (r_count - 1.0);
}

} // namespace srlab
