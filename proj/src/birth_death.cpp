#include "vnfq/birth_death.hpp"

#include <string>

namespace vnfq {

namespace {

void check(const BirthDeathParams& params) {
    if (!(params.lambda >= 0.0 && params.lambda <= 1.0)) {
        throw ValidationError("lambda", "lambda out of range: " + std::to_string(params.lambda));
    }
    if (!(params.mu > 0.0 && params.mu <= 1.0)) {
        throw ValidationError("mu", "mu out of range: " + std::to_string(params.mu));
    }
    if (params.cap < 1) {
        throw ValidationError("M", "capacity must be >= 1");
    }
}

} // namespace

StochasticMatrix bd_transition_matrix(const BirthDeathParams& params) {
    check(params);
    const double lam = params.lambda, nlam = 1.0 - params.lambda;
    const double mu = params.mu, nmu = 1.0 - params.mu;
    const int n = params.cap + 1;

    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    P(0, 0) = nlam;
    P(0, 1) = lam;
    for (int i = 1; i < params.cap; ++i) {
        P(i, i - 1) = nlam * mu;
        P(i, i) = lam * mu + nlam * nmu;
        P(i, i + 1) = lam * nmu;
    }
    P(params.cap, params.cap - 1) = nlam * mu;
    P(params.cap, params.cap) = nlam * nmu + lam;
    return StochasticMatrix(std::move(P));
}

Eigen::VectorXd bd_steady_state(const BirthDeathParams& params) {
    check(params);
    if (params.lambda == 1.0) {
        return solve_steady_state(bd_transition_matrix(params)).pi;
    }
    if (params.lambda == 0.0) {
        Eigen::VectorXd pi = Eigen::VectorXd::Zero(params.cap + 1);
        pi(0) = 1.0;
        return pi;
    }

    // pi_i / pi_{i-1} = lambda (1-mu) / ((1-lambda) mu) from state 1 on;
    // the first step lacks the (1-mu) factor.
    const double ratio =
        params.lambda * (1.0 - params.mu) / ((1.0 - params.lambda) * params.mu);
    Eigen::VectorXd weights(params.cap + 1);
    weights(0) = 1.0;
    weights(1) = params.lambda / ((1.0 - params.lambda) * params.mu);
    for (int i = 2; i <= params.cap; ++i) {
        weights(i) = weights(i - 1) * ratio;
    }
    return weights / weights.sum();
}

} // namespace vnfq
