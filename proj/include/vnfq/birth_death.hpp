#pragma once

#include <Eigen/Dense>

#include "vnfq/dtmc.hpp"

namespace vnfq {

/// Finite-buffer queue with Bernoulli arrivals and geometric service,
/// early departure / late arrival (Q5 in the pipeline).
struct BirthDeathParams {
    double lambda = 0.0;  // per-slot arrival probability
    double mu = 1.0;      // per-slot service probability
    int cap = 1;          // buffer capacity
};

/// Tridiagonal (cap+1)-state transition matrix.
StochasticMatrix bd_transition_matrix(const BirthDeathParams& params);

/// Closed-form stationary vector from the balance equations:
///   pi_i = lambda^i (1-mu)^(i-1) / ((1-lambda)^i mu^i) * pi_0.
/// lambda = 1 (closed form divides by 1-lambda) falls back to the matrix
/// solver.
Eigen::VectorXd bd_steady_state(const BirthDeathParams& params);

} // namespace vnfq
