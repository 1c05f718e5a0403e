#pragma once

#include <Eigen/Dense>
#include <utility>

#include "vnfq/dtmc.hpp"

namespace vnfq {

// A tandem subsystem is two finite queues in series: an upstream queue fed
// by an external Bernoulli stream and a downstream queue fed by the
// upstream's departures. The joint chain is a finite QBD whose level is the
// upstream queue length and whose phase is the downstream queue length.
// Subsystem 1 is (Q1, Q2); subsystem 2 reuses the same construction for
// (Q3, Q4).

/// Phase transition matrices of the downstream queue, dimension (cap+1).
/// `first` moves no task into the queue; `second` feeds exactly one task
/// (a simultaneous departure keeps a full queue full, the overflow drops).
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> intra_phase_matrices(double mu_down, int cap_down);

/// The six level-block matrices of the QBD transition matrix.
struct QbdBlocks {
    Eigen::MatrixXd B;   // level 0 -> 0
    Eigen::MatrixXd C;   // level 0 -> 1
    Eigen::MatrixXd E;   // level 1 -> 0
    Eigen::MatrixXd A0;  // level k -> k+1
    Eigen::MatrixXd A1;  // level k -> k
    Eigen::MatrixXd A2;  // level k -> k-1
};

QbdBlocks build_blocks(double lambda_in, double mu_up, double mu_down, int cap_down);

/// Full block-tridiagonal transition matrix over levels 0..cap_up,
/// states ordered level-major.
StochasticMatrix assemble(const QbdBlocks& blocks, int cap_up);

/// Effective Bernoulli rates induced by a solved tandem.
struct TandemRates {
    double lambda_in = 0.0;    // external arrivals to the upstream queue
    double lambda_out = 0.0;   // Pr{upstream > 0} * mu_up, feeds downstream
    double lambda_next = 0.0;  // Pr{downstream > 0} * mu_down, feeds next hop
};

struct TandemSolution {
    SteadyState pi;  // joint, shape = (cap_up+1, cap_down+1)
    TandemRates rates;
};

enum class TandemMethod {
    Auto,    // dense below kDenseStateLimit states, sparse above
    Dense,   // assemble the full matrix, solve directly
    Sparse,  // sparse LU on the block-tridiagonal balance system
};

inline constexpr Eigen::Index kDenseStateLimit = 1024;

TandemSolution solve_tandem(double lambda_in, double mu_up, double mu_down,
                            int cap_up, int cap_down,
                            TandemMethod method = TandemMethod::Auto);

} // namespace vnfq
