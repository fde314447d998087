#pragma once

// Replicated experiment driver.  Replication r of a run draws everything it
// needs from RngStream(seed, stream_offset + r); every policy in the run
// consumes identical substream copies of that root (common random numbers),
// which keeps cross-policy comparisons paired and makes the rho = 0
// SRTS / mean-TS equivalence observable directly in emitted traces.
//
// Parallelism: replications are executed in blocks of `jobs` via std::async
// and folded into the aggregates strictly in replication-index order, so the
// output bytes are identical for every --jobs value.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "srlab/bandit.hpp"
#include "srlab/bounds.hpp"
#include "srlab/config.hpp"
#include "srlab/metrics.hpp"
#include "srlab/policies.hpp"
#include "srlab/rng.hpp"

namespace srlab {

struct PolicyCurve {
    std::string label;
    PolicyConfig config;
    std::vector<double> regret_mean;    // aligned with ExperimentResult::ts
    std::vector<double> regret_stderr;  // 0 when replications == 1
    std::vector<double> pulls_mean;     // per arm, final round
    std::vector<double> pulls_var;      // unbiased across replications
};

struct ExperimentResult {
    double rho = 1.0;
    std::uint64_t horizon = 0;
    std::uint64_t replications = 0;
    std::uint64_t seed = 0;
    std::string config_hash;
    std::vector<std::uint64_t> ts;        // decimated round grid, ends at horizon
    std::vector<PolicyCurve> policies;
    std::vector<std::uint64_t> bound_ns;  // ts filtered to n >= 2
    std::vector<BoundPoint> theorem2_upper;
    std::vector<double> theorem3_lower;
};

// Every ceil(n/2000)-th round plus the final round; stride 1 under --full.
inline std::vector<std::uint64_t> decimation_grid(std::uint64_t n, bool full) {
    const std::uint64_t stride = full ? 1 : (n + 1999) / 2000;
    std::vector<std::uint64_t> ts;
    for (std::uint64_t t = stride; t <= n; t += stride) {
        ts.push_back(t);
    }
    if (ts.empty() || ts.back() != n) {
        ts.push_back(n);
    }
    return ts;
}

namespace detail {

struct RepOutcome {
    std::vector<double> regret_at_ts;
    std::vector<std::uint64_t> pulls;
};

inline RepOutcome run_one_replication(const BanditInstance& inst, const PolicyConfig& pc,
                                      std::uint64_t horizon, std::uint64_t seed,
                                      std::uint64_t stream, const std::vector<std::uint64_t>& ts) {
    RngStream root(seed, stream);
    RngStream reward_rng = root.substream(0);
    PolicyRng prng = make_policy_rng(root);
    Policy pol(pc, inst.num_arms());
    RunTrace trace;
    trace.choices.reserve(horizon);
    trace.rewards.reserve(horizon);
    for (std::uint64_t t = 0; t < horizon; ++t) {
        const int arm = pol.select(prng);
        const double x = sample_reward(inst, static_cast<std::size_t>(arm), reward_rng);
        pol.update(arm, x);
        trace.choices.push_back(arm);
        trace.rewards.push_back(x);
    }
    const std::vector<double> regret = realized_regret(trace, inst);
    RepOutcome out;
    out.regret_at_ts.reserve(ts.size());
    for (std::uint64_t t : ts) {
        out.regret_at_ts.push_back(regret[t - 1]);
    }
    out.pulls = pull_counts(trace, inst.num_arms());
    return out;
}

// Streaming per-coordinate mean and unbiased variance, folded in a fixed
// order so aggregation is independent of completion order.
struct WelfordVec {
    std::uint64_t count = 0;
    std::vector<double> mean;
    std::vector<double> m2;

    explicit WelfordVec(std::size_t dim) : mean(dim, 0.0), m2(dim, 0.0) {}

    void add(const std::vector<double>& x) {
        ++count;
        for (std::size_t i = 0; i < mean.size(); ++i) {
            const double d = x[i] - mean[i];
            mean[i] += d / static_cast<double>(count);
            m2[i] += d * (x[i] - mean[i]);
        }
    }

    double variance(std::size_t i) const {
        return count > 1 ? m2[i] / static_cast<double>(count - 1) : 0.0;
    }

    double stderr_of_mean(std::size_t i) const {
        return count > 1 ? std::sqrt(variance(i) / static_cast<double>(count)) : 0.0;
    }
};

} // namespace detail

// Runs cfg.policies on the configured instance.  `rho_override` and
// `stream_offset` serve rho sweeps: sweeps rebuild the instance per grid
// point and shift every replication's stream id by rho_index*replications.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned jobs = 1,
                                       bool full = false,
                                       std::optional<double> rho_override = std::nullopt,
                                       std::uint64_t stream_offset = 0) {
    if (jobs == 0) {
        throw ConfigError("jobs must be >= 1");
    }
    const BanditInstance inst = instance_from_config(cfg, rho_override);
    ExperimentResult res;
    res.rho = rho_override.value_or(cfg.rho);
    res.horizon = cfg.horizon;
    res.replications = cfg.replications;
    res.seed = cfg.seed;
    res.config_hash = config_hash(cfg);
    res.ts = decimation_grid(cfg.horizon, full);

    const std::size_t k = inst.num_arms();
    for (std::size_t p = 0; p < cfg.policies.size(); ++p) {
        PolicyConfig pc = cfg.policies[p];
        pc.rho = res.rho;
        pc.l0 = cfg.l0;
        detail::WelfordVec regret_acc(res.ts.size());
        detail::WelfordVec pulls_acc(k);

        const std::uint64_t reps = cfg.replications;
        std::vector<double> pull_buf(k);
        for (std::uint64_t block = 0; block < reps; block += jobs) {
            const std::uint64_t hi = std::min<std::uint64_t>(block + jobs, reps);
            std::vector<std::future<detail::RepOutcome>> futures;
            futures.reserve(hi - block);
            for (std::uint64_t r = block; r < hi; ++r) {
                futures.push_back(std::async(
                    jobs == 1 ? std::launch::deferred : std::launch::async,
                    [&, r] {
                        return detail::run_one_replication(inst, pc, cfg.horizon, cfg.seed,
                                                           stream_offset + r, res.ts);
                    }));
            }
            // fold in replication-index order regardless of completion order
            for (auto& f : futures) {
                const detail::RepOutcome out = f.get();
                regret_acc.add(out.regret_at_ts);
                for (std::size_t i = 0; i < k; ++i) {
                    pull_buf[i] = static_cast<double>(out.pulls[i]);
                }
                pulls_acc.add(pull_buf);
            }
        }

        PolicyCurve curve;
        curve.label = cfg.policy_labels.size() > p ? cfg.policy_labels[p]
                                                   : std::string(to_string(pc.kind));
        curve.config = pc;
        curve.regret_mean = regret_acc.mean;
        curve.regret_stderr.resize(res.ts.size());
        for (std::size_t i = 0; i < res.ts.size(); ++i) {
            curve.regret_stderr[i] = regret_acc.stderr_of_mean(i);
        }
        curve.pulls_mean = pulls_acc.mean;
        curve.pulls_var.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            curve.pulls_var[i] = pulls_acc.variance(i);
        }
        res.policies.push_back(std::move(curve));
    }

    // theory curves on the same grid (rounds 0 and 1 carry no bound)
    for (std::uint64_t t : res.ts) {
        if (t >= 2) {
            res.bound_ns.push_back(t);
        }
    }
    EpsilonRule rule;
    if (cfg.bounds_eps) {
        const double eps = *cfg.bounds_eps;
        rule = [eps](std::uint64_t) { return eps; };
    }
    res.theorem2_upper = theorem2_regret_curve(inst, res.bound_ns, cfg.bounds, rule);
    res.theorem3_lower = theorem3_lower_bound_curve(inst, res.bound_ns, cfg.bounds);
    return res;
}

// One run per grid value, sorted by rho, stream ids offset per grid index so
// sweep points use disjoint randomness under a shared base seed.
inline std::vector<ExperimentResult> sweep_rho(const ExperimentConfig& cfg, unsigned jobs = 1,
                                               bool full = false) {
    if (cfg.rho_grid.empty()) {
        throw ConfigError("sweep-rho requires a nonempty rho_grid");
    }
    std::vector<double> grid = cfg.rho_grid;
    std::sort(grid.begin(), grid.end());
    std::vector<ExperimentResult> results;
    results.reserve(grid.size());
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        results.push_back(
            run_experiment(cfg, jobs, full, grid[gi], gi * cfg.replications));
    }
    return results;
}

} // namespace srlab
