#pragma once

#include <stdexcept>
#include <string>

namespace srlab {

// Invalid bandit instance (K < 2, bad variances, bad rho/L0, ...).
struct InvalidInstance : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The Sharpe objective must have a unique maximizer; the message lists the
// tied arm indices.
struct TiedOptimum : InvalidInstance {
    using InvalidInstance::InvalidInstance;
};

// Statistic requested from an empty sample or empty trace.
struct EmptySample : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Cross-replication estimator called with too few replications.
struct InsufficientData : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Posterior sampling requested before every arm has at least one pull.
struct NotWarmedUp : std::logic_error {
    using std::logic_error::logic_error;
};

// Non-finite reward fed into a posterior update.
struct InvalidReward : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of a bound or transform.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Config file problems: parse failures, unknown keys, out-of-range values.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failures while reading configs or writing results.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace srlab
