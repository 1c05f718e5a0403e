#include "vnfq/qbd.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <string>
#include <vector>

namespace vnfq {

namespace {

void check_rate(const char* name, double v, bool allow_zero) {
    const bool ok = allow_zero ? (v >= 0.0 && v <= 1.0) : (v > 0.0 && v <= 1.0);
    if (!ok) {
        throw ValidationError(name, std::string(name) + " out of range: " + std::to_string(v));
    }
}

} // namespace

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> intra_phase_matrices(double mu_down, int cap_down) {
    check_rate("mu_down", mu_down, false);
    if (cap_down < 1) throw ValidationError("cap_down", "capacity must be >= 1");

    const int n = cap_down + 1;
    const double served = mu_down;
    const double held = 1.0 - mu_down;

    Eigen::MatrixXd no_feed = Eigen::MatrixXd::Zero(n, n);
    no_feed(0, 0) = 1.0;
    for (int j = 1; j < n; ++j) {
        no_feed(j, j - 1) = served;
        no_feed(j, j) = held;
    }

    Eigen::MatrixXd feed = Eigen::MatrixXd::Zero(n, n);
    feed(0, 1) = 1.0;
    for (int j = 1; j < cap_down; ++j) {
        feed(j, j) = served;
        feed(j, j + 1) = held;
    }
    // Full queue stays full: the fed task either takes the slot a departure
    // frees or is dropped.
    feed(cap_down, cap_down) = 1.0;

    return {std::move(no_feed), std::move(feed)};
}

QbdBlocks build_blocks(double lambda_in, double mu_up, double mu_down, int cap_down) {
    check_rate("lambda_in", lambda_in, true);
    check_rate("mu_up", mu_up, false);
    const auto [p_hold, p_feed] = intra_phase_matrices(mu_down, cap_down);

    const double lam = lambda_in, nlam = 1.0 - lambda_in;
    const double mu = mu_up, nmu = 1.0 - mu_up;

    QbdBlocks blocks;
    blocks.B = nlam * p_hold;
    blocks.C = lam * p_hold;
    blocks.E = nlam * mu * p_feed;
    blocks.A0 = lam * nmu * p_hold;
    blocks.A1 = nlam * nmu * p_hold + lam * mu * p_feed;
    blocks.A2 = nlam * mu * p_feed;
    return blocks;
}

StochasticMatrix assemble(const QbdBlocks& blocks, int cap_up) {
    if (cap_up < 1) throw ValidationError("cap_up", "capacity must be >= 1");
    const Eigen::Index m = blocks.B.rows();
    const Eigen::Index levels = cap_up + 1;
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(levels * m, levels * m);

    auto put = [&](Eigen::Index lv_from, Eigen::Index lv_to, const Eigen::MatrixXd& block) {
        full.block(lv_from * m, lv_to * m, m, m) += block;
    };

    put(0, 0, blocks.B);
    put(0, 1, blocks.C);
    for (Eigen::Index k = 1; k < levels; ++k) {
        // Only the level-1 -> level-0 transition uses E; every other down
        // step is A2, including the final block row [A2, A0+A1].
        put(k, k - 1, (k == 1 && k < levels - 1) ? blocks.E : blocks.A2);
        if (k < levels - 1) {
            put(k, k, blocks.A1);
            put(k, k + 1, blocks.A0);
        } else {
            put(k, k, blocks.A0 + blocks.A1);
        }
    }
    return StochasticMatrix(std::move(full));
}

namespace {

TandemRates rates_from(const SteadyState& joint, double lambda_in, double mu_up,
                       double mu_down) {
    TandemRates rates;
    rates.lambda_in = lambda_in;
    rates.lambda_out = (1.0 - marginal(joint, Axis::Level)(0)) * mu_up;
    rates.lambda_next = (1.0 - marginal(joint, Axis::Phase)(0)) * mu_down;
    return rates;
}

SteadyState solve_dense(const QbdBlocks& blocks, int cap_up, int cap_down) {
    SteadyState joint = solve_steady_state(assemble(blocks, cap_up));
    joint.shape = JointShape{cap_up + 1, cap_down + 1};
    return joint;
}

// Sparse direct solve of the same normalized balance system the dense path
// uses. The block-tridiagonal pattern keeps the LU fill-in banded, so large
// buffers stay cheap without giving up pivoting.
SteadyState solve_sparse(const QbdBlocks& blocks, double lambda_in, double mu_up,
                         double mu_down, int cap_up, int cap_down) {
    const Eigen::Index m = blocks.B.rows();
    const Eigen::Index levels = cap_up + 1;
    const Eigen::Index n = levels * m;

    // (I - P)^T x = 0 with one balance row replaced by x_pin = 1; pinning a
    // coordinate instead of appending a dense normalization row keeps the
    // factorization banded. The anchor must carry non-negligible mass, so
    // follow the drift of each queue; a bad anchor fails the residual check
    // and falls back to the dense path.
    const Eigen::Index pin_level = lambda_in < mu_up ? 0 : cap_up;
    const Eigen::Index pin_phase = std::min(lambda_in, mu_up) < mu_down ? 0 : cap_down;
    const Eigen::Index pin = pin_level * m + pin_phase;

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(4 * n * m));
    auto add_block = [&](Eigen::Index lv_from, Eigen::Index lv_to, const Eigen::MatrixXd& blk) {
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) {
                const double v = blk(i, j);
                if (v == 0.0) continue;
                const Eigen::Index row = lv_to * m + j;   // transposed
                const Eigen::Index col = lv_from * m + i;
                if (row != pin) trip.emplace_back(row, col, -v);
            }
        }
    };
    add_block(0, 0, blocks.B);
    add_block(0, 1, blocks.C);
    for (Eigen::Index k = 1; k < levels; ++k) {
        add_block(k, k - 1, (k == 1 && k < levels - 1) ? blocks.E : blocks.A2);
        if (k < levels - 1) {
            add_block(k, k, blocks.A1);
            add_block(k, k + 1, blocks.A0);
        } else {
            add_block(k, k, blocks.A0 + blocks.A1);
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) trip.emplace_back(i, i, 1.0);

    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) throw SolverError("sparse QBD factorization failed");
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(pin) = 1.0;
    Eigen::VectorXd pi = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !pi.allFinite()) {
        throw SolverError("sparse QBD solve failed");
    }

    const double scale = pi.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (pi(i) < -1e-9 * scale) {
            throw SolverError("sparse QBD solve produced a negative probability");
        }
        if (pi(i) < 0.0) pi(i) = 0.0;
    }
    const double total = pi.sum();
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw SolverError("sparse QBD solve failed to normalize");
    }
    pi /= total;

    // Blockwise residual of pi P = pi, without assembling P densely.
    Eigen::MatrixXd rows(levels, m);
    for (Eigen::Index k = 0; k < levels; ++k) rows.row(k) = pi.segment(k * m, m);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(levels, m);
    out.row(0) += rows.row(0) * blocks.B;
    out.row(1) += rows.row(0) * blocks.C;
    for (Eigen::Index k = 1; k < levels; ++k) {
        out.row(k - 1) += rows.row(k) * ((k == 1 && k < levels - 1) ? blocks.E : blocks.A2);
        if (k < levels - 1) {
            out.row(k) += rows.row(k) * blocks.A1;
            out.row(k + 1) += rows.row(k) * blocks.A0;
        } else {
            out.row(k) += rows.row(k) * (blocks.A0 + blocks.A1);
        }
    }
    const double residual = (out - rows).cwiseAbs().maxCoeff();
    if (!(residual <= kResidualTol)) {
        throw SolverError("sparse QBD residual " + std::to_string(residual) +
                          " exceeds tolerance");
    }

    SteadyState joint;
    joint.pi = std::move(pi);
    joint.shape = JointShape{levels, cap_down + 1};
    joint.residual = residual;
    return joint;
}

} // namespace

TandemSolution solve_tandem(double lambda_in, double mu_up, double mu_down,
                            int cap_up, int cap_down, TandemMethod method) {
    if (cap_up < 1) throw ValidationError("cap_up", "capacity must be >= 1");
    const QbdBlocks blocks = build_blocks(lambda_in, mu_up, mu_down, cap_down);
    const Eigen::Index states =
        static_cast<Eigen::Index>(cap_up + 1) * static_cast<Eigen::Index>(cap_down + 1);

    if (method == TandemMethod::Auto) {
        method = states <= kDenseStateLimit ? TandemMethod::Dense : TandemMethod::Sparse;
    }

    TandemSolution solution;
    if (method == TandemMethod::Dense) {
        solution.pi = solve_dense(blocks, cap_up, cap_down);
    } else {
        try {
            solution.pi = solve_sparse(blocks, lambda_in, mu_up, mu_down, cap_up, cap_down);
        } catch (const SolverError&) {
            // Corner cases the sparse factorization dislikes fall back to the
            // dense path.
            solution.pi = solve_dense(blocks, cap_up, cap_down);
        }
    }
    solution.rates = rates_from(solution.pi, lambda_in, mu_up, mu_down);
    return solution;
}

} // namespace vnfq
