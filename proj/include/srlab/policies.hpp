#pragma once

// Sequential allocation policies behind one interface.
//
// Every policy plays arms 0..K-1 once, in index order, before doing
// anything adaptive.  After that warm start:
//
//   srts           Thompson sampling on the Sharpe objective: per arm draw
//                  tau ~ Gamma(alpha, rate beta) and theta ~ N(mu_hat, 1/s),
//                  play argmax theta / (L0 + rho / tau).
//   mean-ts        theta draws only, argmax theta.
//   sr-ucb         argmax empirical Sharpe + c sqrt(log t / s).
//   mv-lcb         argmin (rho var_hat - mu_hat) - c sqrt(log t / s); the
//                  classical mean-variance index restated so that smaller is
//                  better, kept as a non-Thompson baseline.
//   round-robin    arm t mod K.
//   uniform-random one uniformly random arm per round.
//
// Draw-order contract: per round srts consumes exactly K gamma variates
// from the tau stream and K normal variates from the theta stream, both in
// arm-index order; mean-ts consumes the same K normals from the theta
// stream and nothing else.  With rho = 0 the srts index is theta / L0, so
// srts and mean-ts produce identical choice sequences on identical streams.
// The warm start consumes no randomness; uniform-random consumes one
// uniform per round from its own pick stream.  Ties break to the lowest
// arm index everywhere.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace srlab {

enum class PolicyKind {
    srts,
    mean_ts,
    sr_ucb,
    mv_lcb,
    round_robin,
    uniform_random,
};

inline const char* to_string(PolicyKind kind) {
    switch (kind) {
    case PolicyKind::srts: return "srts";
    case PolicyKind::mean_ts: return "mean-ts";
    case PolicyKind::sr_ucb: return "sr-ucb";
    case PolicyKind::mv_lcb: return "mv-lcb";
    case PolicyKind::round_robin: return "round-robin";
    case PolicyKind::uniform_random: return "uniform-random";
    }
    return "?";
}

inline PolicyKind policy_kind_from_string(const std::string& name) {
    if (name == "srts") return PolicyKind::srts;
    if (name == "mean-ts") return PolicyKind::mean_ts;
    if (name == "sr-ucb") return PolicyKind::sr_ucb;
    if (name == "mv-lcb") return PolicyKind::mv_lcb;
    if (name == "round-robin") return PolicyKind::round_robin;
    if (name == "uniform-random") return PolicyKind::uniform_random;
    throw std::invalid_argument("unknown policy kind '" + name + "'");
}

struct PolicyConfig {
    PolicyKind kind = PolicyKind::srts;
    double rho = 1.0;
    double l0 = 1.0;
    double c = 2.0; // exploration coefficient for sr-ucb / mv-lcb
};

// Per-arm sufficient statistics.  mu_hat is the running mean, sum_sq_dev
// the running sum of squared deviations, so the plug-in variance is
// sum_sq_dev / pulls.  The Gamma posterior on the precision tau keeps the
// invariants alpha = 1/2 + pulls/2 and beta = 1/2 + sum_sq_dev/2.
struct ArmPosterior {
    double mu_hat = 0.0;
    double sum_sq_dev = 0.0;
    double alpha = 0.5;
    double beta = 0.5;
    std::uint64_t pulls = 0;

    double plug_in_variance() const noexcept {
        return pulls == 0 ? 0.0 : sum_sq_dev / static_cast<double>(pulls);
    }
};

inline void posterior_update(ArmPosterior& post, double reward) {
    if (!std::isfinite(reward)) {
        throw InvalidReward("posterior_update: reward must be finite");
    }
    ++post.pulls;
    const double d = reward - post.mu_hat;
    post.mu_hat += d / static_cast<double>(post.pulls);
    post.sum_sq_dev += d * (reward - post.mu_hat);
    post.alpha += 0.5;
    post.beta = 0.5 + 0.5 * post.sum_sq_dev;
}

inline void srts_update(std::span<ArmPosterior> arms, std::size_t arm, double reward) {
    if (arm >= arms.size()) {
        throw std::out_of_range("srts_update: arm index out of range");
    }
    posterior_update(arms[arm], reward);
}

namespace detail {

inline void require_warm(std::span<const ArmPosterior> arms, const char* where) {
    if (arms.empty()) {
        throw EmptySample(std::string(where) + ": no arms");
    }
    for (std::size_t i = 0; i < arms.size(); ++i) {
        if (arms[i].pulls == 0) {
            throw NotWarmedUp(std::string(where) + ": arm " + std::to_string(i) +
                              " has no pulls yet");
        }
    }
}

// Lowest index wins ties.
inline int argmax(std::span<const double> values) noexcept {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) {
            best = i;
        }
    }
    return static_cast<int>(best);
}

} // namespace detail

inline int srts_select(std::span<const ArmPosterior> arms, double rho, double l0,
                       RngStream& tau_rng, RngStream& theta_rng) {
    detail::require_warm(arms, "srts_select");
    const std::size_t k = arms.size();
    std::vector<double> tau(k);
    std::vector<double> theta(k);
    for (std::size_t i = 0; i < k; ++i) {
        tau[i] = tau_rng.next_gamma(arms[i].alpha, arms[i].beta);
    }
    for (std::size_t i = 0; i < k; ++i) {
        theta[i] = theta_rng.next_normal(arms[i].mu_hat,
                                         1.0 / std::sqrt(static_cast<double>(arms[i].pulls)));
    }
    std::vector<double> index(k);
    for (std::size_t i = 0; i < k; ++i) {
        index[i] = theta[i] / (l0 + rho / tau[i]);
    }
    return detail::argmax(index);
}

inline int mean_ts_select(std::span<const ArmPosterior> arms, RngStream& theta_rng) {
    detail::require_warm(arms, "mean_ts_select");
    const std::size_t k = arms.size();
    std::vector<double> theta(k);
    for (std::size_t i = 0; i < k; ++i) {
        theta[i] = theta_rng.next_normal(arms[i].mu_hat,
                                         1.0 / std::sqrt(static_cast<double>(arms[i].pulls)));
    }
    return detail::argmax(theta);
}

inline int sr_ucb_select(std::span<const ArmPosterior> arms, double rho, double l0,
                         std::uint64_t t, double c) {
    detail::require_warm(arms, "sr_ucb_select");
    std::vector<double> index(arms.size());
    for (std::size_t i = 0; i < arms.size(); ++i) {
        const double sr = arms[i].mu_hat / (l0 + rho * arms[i].plug_in_variance());
        index[i] = sr + c * std::sqrt(std::log(static_cast<double>(t)) /
                                      static_cast<double>(arms[i].pulls));
    }
    return detail::argmax(index);
}

inline int mv_lcb_select(std::span<const ArmPosterior> arms, double rho, double /*l0*/,
                         std::uint64_t t, double c) {
    detail::require_warm(arms, "mv_lcb_select");
    std::size_t best = 0;
    double best_value = 0.0;
    for (std::size_t i = 0; i < arms.size(); ++i) {
        const double mv = rho * arms[i].plug_in_variance() - arms[i].mu_hat;
        const double value = mv - c * std::sqrt(std::log(static_cast<double>(t)) /
                                                static_cast<double>(arms[i].pulls));
        if (i == 0 || value < best_value) {
            best = i;
            best_value = value;
        }
    }
    return static_cast<int>(best);
}

// The per-replication stream bundle.  tau and theta feed the Thompson
// draws; pick feeds uniform-random.  Keeping them separate is what makes
// the rho = 0 equivalence between srts and mean-ts exact.
struct PolicyRng {
    RngStream tau;
    RngStream theta;
    RngStream pick;
};

inline PolicyRng make_policy_rng(const RngStream& base) {
    return PolicyRng{base.substream(1), base.substream(2), base.substream(3)};
}

class Policy {
  public:
    Policy(PolicyConfig config, std::size_t num_arms)
        : config_(config), arms_(num_arms) {
        if (num_arms < 2) {
            throw InvalidInstance("Policy: need at least two arms");
        }
        check_objective_params(config_.rho, config_.l0, "Policy");
        if (!(config_.c >= 0.0) || !std::isfinite(config_.c)) {
            throw DomainError("Policy: exploration coefficient must be finite and >= 0");
        }
    }

    // Arm to play in round (pulls so far + 1); rounds 1..K are forced.
    int select(PolicyRng& rng) {
        const std::size_t k = arms_.size();
        if (rounds_ < k) {
            return static_cast<int>(rounds_);
        }
        const std::uint64_t t = rounds_ + 1;
        switch (config_.kind) {
        case PolicyKind::srts:
            return srts_select(arms_, config_.rho, config_.l0, rng.tau, rng.theta);
        case PolicyKind::mean_ts:
            return mean_ts_select(arms_, rng.theta);
        case PolicyKind::sr_ucb:
            return sr_ucb_select(arms_, config_.rho, config_.l0, t, config_.c);
        case PolicyKind::mv_lcb:
            return mv_lcb_select(arms_, config_.rho, config_.l0, t, config_.c);
        case PolicyKind::round_robin:
            return static_cast<int>(rounds_ % k);
        case PolicyKind::uniform_random: {
            const double u = rng.pick.next_uniform();
            const auto arm = static_cast<std::size_t>(u * static_cast<double>(k));
            return static_cast<int>(arm < k ? arm : k - 1);
        }
        }
        throw std::logic_error("Policy::select: unreachable");
    }

    void update(int arm, double reward) {
        if (arm < 0 || static_cast<std::size_t>(arm) >= arms_.size()) {
            throw std::out_of_range("Policy::update: arm index out of range");
        }
        posterior_update(arms_[static_cast<std::size_t>(arm)], reward);
        ++rounds_;
    }

    const std::vector<ArmPosterior>& arms() const noexcept { return arms_; }
    const PolicyConfig& config() const noexcept { return config_; }
    std::uint64_t rounds_played() const noexcept { return rounds_; }

  private:
    PolicyConfig config_;
    std::vector<ArmPosterior> arms_;
    std::uint64_t rounds_ = 0;
};

} // namespace srlab
