#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>

#include "vnfq/dtmc.hpp"
#include "vnfq/model.hpp"

namespace vnfq {

/// Effective Bernoulli rates propagated through the decomposition.
struct EffectiveRates {
    double lambda1 = 0.0;   // p * alpha, into Q1
    double lambda2 = 0.0;   // Pr{Q1>0} mu1, into Q2
    double lambda3 = 0.0;   // p * (1-alpha), into Q3
    double lambda4 = 0.0;   // Pr{Q3>0} mu3, into Q4
    double lambda5 = 0.0;   // Pr{Q4>0} mu4, into Q5
    double lambda62 = 0.0;  // Pr{Q2>0} mu2, into Q6
    double lambda65 = 0.0;  // Pr{Q5>0} mu5, into Q6
    double lambda6 = 0.0;   // lambda62 + lambda65
};

/// Per-slot drop probabilities P_D1..P_D5. pi1/pi2 are the joint tandem
/// steady states, pi3 the Q5 vector. The full-phase columns of the tandem
/// chains are summed over levels >= 1 for the transmission-side drops.
std::array<double, 5> drop_probabilities(const SteadyState& pi1, const SteadyState& pi2,
                                         const Eigen::VectorXd& pi3,
                                         const EffectiveRates& rates,
                                         const SystemParams& params);

/// Mean lengths of the five finite queues.
std::array<double, 5> mean_lengths_finite(const SteadyState& pi1, const SteadyState& pi2,
                                          const Eigen::VectorXd& pi3);

/// Sums parts into SystemMetrics. Throughput is p - P_D; delay is
/// Q / throughput (Little), absent when throughput is 0 or Q6's mean is
/// unavailable.
SystemMetrics aggregate(const std::array<double, 5>& drops,
                        const std::array<double, 5>& finite_means,
                        std::optional<double> q6_mean, double p);

} // namespace vnfq
