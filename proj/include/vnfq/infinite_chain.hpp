#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "vnfq/dtmc.hpp"

namespace vnfq {

/// Q6's two independent Bernoulli feeds (from Q2 and Q5) and its service rate.
struct Q6Inputs {
    double lambda62 = 0.0;
    double lambda65 = 0.0;
    double mu6 = 1.0;

    double lambda6() const noexcept { return lambda62 + lambda65; }
};

/// Effective feed rates from the solved upstream subsystems:
/// lambda62 = Pr{Q2 > 0} mu2, lambda65 = Pr{Q5 > 0} mu5.
Q6Inputs q6_arrivals(const SteadyState& pi1, const Eigen::VectorXd& pi3, double mu2,
                     double mu5, double mu6);

/// Loynes: the infinite queue is stable iff lambda6 < mu6 strictly.
bool q6_stable(const Q6Inputs& inputs);

/// One-step transition probabilities of the Q6 chain. `a` governs the empty
/// state (batch of 0/1/2 arrivals, no departure possible); `b` the occupied
/// states (net change -1..+2). Each group sums to 1.
struct HessenbergCoefficients {
    std::array<double, 3> a{};
    std::array<double, 4> b{};

    double arrival_mean() const noexcept { return a[1] + 2.0 * a[2]; }
    /// Net-drift mean from occupied states is arrival_mean() - mu6.
    double service_rate() const noexcept { return 1.0 + arrival_mean() - (b[1] + 2.0 * b[2] + 3.0 * b[3]); }
};

HessenbergCoefficients hessenberg_coefficients(const Q6Inputs& inputs);

/// Stationary distribution of Q6 in residues/poles/direct-terms form:
///   pi_i = c_i + sum_j r_j p_j^(i-1)   for i > 0.
/// When the pole expansion is unusable (repeated or non-real poles) the
/// solution falls back to a truncated-chain vector and says so.
struct Q6Solution {
    double pi0 = 1.0;
    std::vector<double> direct;    // c_0, c_1, ... (c_0 only enters the pi0 identity)
    std::vector<double> poles;     // p_j, all |p_j| < 1
    std::vector<double> residues;  // r_j
    bool truncated_fallback = false;
    std::string fallback_reason;
    std::vector<double> fallback_pi;
    double mean = 0.0;  // filled by solve_ztransform via truncated summation

    /// pi_i for any i >= 0.
    double evaluate(Eigen::Index i) const;
};

/// Solves the infinite chain by z-transform: pi0 from the derivative
/// identity, the tail by partial fractions of the generating function
/// (the denominator's root at 1 cancels, leaving at most a quadratic).
/// Throws UnstableError when the drift is non-negative.
Q6Solution solve_ztransform(const HessenbergCoefficients& coeffs);

/// Steady state of the n-state truncation (states 0..n-1, overflow mass
/// reflected into the last state), solved as a sparse linear system.
/// Fails if the a-posteriori geometric tail bound exceeds 1e-10.
Eigen::VectorXd truncated_solve(const HessenbergCoefficients& coeffs, Eigen::Index n);

/// Mean queue length, as stored in the solution.
double q6_mean(const Q6Solution& solution);

/// Closed-form mean via the pole series, sum_j r_j / (1-p_j)^2 plus direct
/// terms; cross-check for the summation path.
double q6_mean_by_series(const Q6Solution& solution);

} // namespace vnfq
