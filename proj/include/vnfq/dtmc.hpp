#pragma once

#include <Eigen/Dense>
#include <optional>

#include "vnfq/errors.hpp"

namespace vnfq {

inline constexpr double kRowSumTol = 1e-12;
inline constexpr double kResidualTol = 1e-10;

/// Dense row-stochastic transition matrix. Construction checks that every
/// entry is a probability and every row sums to 1 within kRowSumTol.
class StochasticMatrix {
public:
    explicit StochasticMatrix(Eigen::MatrixXd m);

    const Eigen::MatrixXd& mat() const noexcept { return m_; }
    Eigen::Index size() const noexcept { return m_.rows(); }

private:
    Eigen::MatrixXd m_;
};

/// (levels, phases) dimensions of a joint chain stored level-major:
/// state (i, j) lives at index i * phases + j.
struct JointShape {
    Eigen::Index levels = 0;
    Eigen::Index phases = 0;
};

enum class Axis { Level, Phase };

/// Stationary distribution. `residual` is the achieved ||pi P - pi||_inf.
struct SteadyState {
    Eigen::VectorXd pi;
    std::optional<JointShape> shape;
    double residual = 0.0;
};

/// Solves pi P = pi, pi 1 = 1 by a dense direct method (one balance equation
/// replaced by the normalization). Requires a single recurrent class.
/// Throws SolverError if the residual exceeds kResidualTol.
SteadyState solve_steady_state(const StochasticMatrix& P);

/// Marginal distribution over one axis of a joint (level, phase) chain.
Eigen::VectorXd marginal(const SteadyState& pi, Axis axis);

} // namespace vnfq
