#pragma once

// Gaussian bandit instances scored by a variance-regularized Sharpe ratio.
//
// Arm i emits N(mean_i, variance_i) rewards.  The objective of an arm (and
// of any reward stream) is  mean / (L0 + rho * variance),  with L0 in (0, 1]
// keeping the denominator away from zero and rho >= 0 setting the risk
// penalty; rho = 0 recovers plain mean maximization.

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace srlab {

struct ArmParams {
    double mean = 0.0;
    double variance = 1.0;
};

inline void check_objective_params(double rho, double l0, const char* where) {
    if (!(l0 > 0.0) || !(l0 <= 1.0) || !std::isfinite(l0)) {
        throw DomainError(std::string(where) + ": L0 must lie in (0, 1]");
    }
    if (!(rho >= 0.0) || !std::isfinite(rho)) {
        throw DomainError(std::string(where) + ": rho must be finite and >= 0");
    }
}

// Objective value of a (mean, variance) pair.
inline double sharpe_ratio(double mean, double variance, double rho, double l0) {
    check_objective_params(rho, l0, "sharpe_ratio");
    if (!(variance >= 0.0) || !std::isfinite(variance) || !std::isfinite(mean)) {
        throw DomainError("sharpe_ratio: mean must be finite and variance >= 0");
    }
    return mean / (l0 + rho * variance);
}

class BanditInstance {
  public:
    BanditInstance(std::vector<ArmParams> arms, double rho, double l0)
        : arms_(std::move(arms)), rho_(rho), l0_(l0) {
        if (arms_.size() < 2) {
            throw InvalidInstance("instance needs at least two arms");
        }
        check_objective_params(rho_, l0_, "BanditInstance");
        sharpe_.reserve(arms_.size());
        for (std::size_t i = 0; i < arms_.size(); ++i) {
            const ArmParams& a = arms_[i];
            if (!std::isfinite(a.mean) || !std::isfinite(a.variance) || !(a.variance > 0.0)) {
                throw InvalidInstance("arm " + std::to_string(i) +
                                      ": mean must be finite, variance finite and > 0");
            }
            sharpe_.push_back(a.mean / (l0_ + rho_ * a.variance));
        }
        optimal_ = 0;
        for (std::size_t i = 1; i < arms_.size(); ++i) {
            if (sharpe_[i] > sharpe_[optimal_]) {
                optimal_ = i;
            }
        }
        std::vector<std::size_t> tied;
        for (std::size_t i = 0; i < arms_.size(); ++i) {
            if (i != optimal_ && sharpe_[i] == sharpe_[optimal_]) {
                tied.push_back(i);
            }
        }
        if (!tied.empty()) {
            std::ostringstream msg;
            msg << "objective is maximized by arms " << optimal_;
            for (std::size_t i : tied) {
                msg << ", " << i;
            }
            msg << "; a unique optimum is required";
            throw TiedOptimum(msg.str());
        }
    }

    std::size_t num_arms() const noexcept { return arms_.size(); }
    const std::vector<ArmParams>& arms() const noexcept { return arms_; }
    double rho() const noexcept { return rho_; }
    double l0() const noexcept { return l0_; }

    const ArmParams& arm(std::size_t i) const {
        if (i >= arms_.size()) {
            throw std::out_of_range("arm index " + std::to_string(i) + " out of range");
        }
        return arms_[i];
    }

    double sharpe(std::size_t i) const {
        if (i >= sharpe_.size()) {
            throw std::out_of_range("arm index " + std::to_string(i) + " out of range");
        }
        return sharpe_[i];
    }

    const std::vector<double>& sharpes() const noexcept { return sharpe_; }
    std::size_t optimal_arm() const noexcept { return optimal_; }
    double optimal_sharpe() const noexcept { return sharpe_[optimal_]; }

  private:
    std::vector<ArmParams> arms_;
    double rho_;
    double l0_;
    std::vector<double> sharpe_;
    std::size_t optimal_ = 0;
};

inline BanditInstance make_instance(std::vector<ArmParams> arms, double rho, double l0) {
    return BanditInstance(std::move(arms), rho, l0);
}

// The 10-arm instance used throughout the experiments.  mean_override
// replaces every mean (1.0 gives the equal-mean variance-minimization
// variant).
inline BanditInstance paper_instance(double rho = 1.0, double l0 = 1.0,
                                     std::optional<double> mean_override = std::nullopt) {
    static constexpr double means[10] = {0.10, 0.27, 0.34, 0.41, 0.43,
                                         0.55, 0.56, 0.67, 0.71, 0.79};
    static constexpr double variances[10] = {0.05, 0.09, 0.19, 0.14, 0.44,
                                             0.24, 0.36, 0.56, 0.49, 0.85};
    std::vector<ArmParams> arms;
    arms.reserve(10);
    for (int i = 0; i < 10; ++i) {
        arms.push_back({mean_override ? *mean_override : means[i], variances[i]});
    }
    return BanditInstance(std::move(arms), rho, l0);
}

inline double sample_reward(const BanditInstance& instance, std::size_t arm, RngStream& rng) {
    const ArmParams& a = instance.arm(arm);
    return rng.next_normal(a.mean, std::sqrt(a.variance));
}

} // namespace srlab
