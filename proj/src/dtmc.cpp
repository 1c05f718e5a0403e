#include "vnfq/dtmc.hpp"

#include <string>

namespace vnfq {

StochasticMatrix::StochasticMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw SolverError("transition matrix must be square and non-empty");
    }
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < m_.cols(); ++j) {
            const double v = m_(i, j);
            if (v < -1e-15 || v > 1.0 + 1e-15) {
                throw SolverError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") = " + std::to_string(v) + " is not a probability");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kRowSumTol) {
            throw SolverError("row " + std::to_string(i) + " sums to " + std::to_string(sum));
        }
    }
}

SteadyState solve_steady_state(const StochasticMatrix& P) {
    const Eigen::Index n = P.size();
    if (n == 1) {
        SteadyState out;
        out.pi = Eigen::VectorXd::Ones(1);
        out.residual = 0.0;
        return out;
    }

    // pi (I - P) = 0  <=>  (I - P)^T x = 0; the rows of (I - P)^T carry a
    // single all-ones dependency, so any one may be replaced by pi 1 = 1.
    Eigen::MatrixXd A = (Eigen::MatrixXd::Identity(n, n) - P.mat()).transpose();
    A.row(n - 1).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    b(n - 1) = 1.0;

    Eigen::VectorXd x = A.partialPivLu().solve(b);

    for (Eigen::Index i = 0; i < n; ++i) {
        if (x(i) < -1e-9) {
            throw SolverError("steady-state solve produced negative probability " +
                              std::to_string(x(i)) + " at state " + std::to_string(i));
        }
        if (x(i) < 0.0) x(i) = 0.0;
    }
    const double total = x.sum();
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw SolverError("steady-state solve failed to normalize (singular system?)");
    }
    x /= total;

    const double residual = (x.transpose() * P.mat() - x.transpose()).cwiseAbs().maxCoeff();
    if (!(residual <= kResidualTol)) {
        throw SolverError("steady-state residual " + std::to_string(residual) +
                          " exceeds tolerance");
    }

    SteadyState out;
    out.pi = std::move(x);
    out.residual = residual;
    return out;
}

Eigen::VectorXd marginal(const SteadyState& pi, Axis axis) {
    if (!pi.shape) {
        throw SolverError("marginal requires (level, phase) shape metadata");
    }
    const auto [levels, phases] = *pi.shape;
    if (levels * phases != pi.pi.size()) {
        throw SolverError("shape metadata does not match vector length");
    }
    if (axis == Axis::Level) {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(levels);
        for (Eigen::Index i = 0; i < levels; ++i) {
            out(i) = pi.pi.segment(i * phases, phases).sum();
        }
        return out;
    }
    Eigen::VectorXd out = Eigen::VectorXd::Zero(phases);
    for (Eigen::Index i = 0; i < levels; ++i) {
        out += pi.pi.segment(i * phases, phases);
    }
    return out;
}

} // namespace vnfq
