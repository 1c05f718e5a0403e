#include "vnfq/pipeline.hpp"

#include "vnfq/birth_death.hpp"

namespace vnfq {

AnalysisResult analyze(const SystemParams& raw) {
    const SystemParams params = validate(raw);

    AnalysisResult result;
    result.params = params;

    // Subsystems 1 and 2: tandems fed by the routing split.
    const double lambda1 = params.p * params.alpha;
    const double lambda3 = params.p * (1.0 - params.alpha);
    TandemSolution sub1 = solve_tandem(lambda1, params.mu[0], params.mu[1],
                                       params.buffer[0], params.buffer[1]);
    TandemSolution sub2 = solve_tandem(lambda3, params.mu[2], params.mu[3],
                                       params.buffer[2], params.buffer[3]);

    EffectiveRates& rates = result.rates;
    rates.lambda1 = lambda1;
    rates.lambda2 = sub1.rates.lambda_out;
    rates.lambda3 = lambda3;
    rates.lambda4 = sub2.rates.lambda_out;
    rates.lambda5 = sub2.rates.lambda_next;

    // Subsystem 3: Q5 fed by Q4's departures.
    const BirthDeathParams bd{rates.lambda5, params.mu[4], params.buffer[4]};
    Eigen::VectorXd pi3 = bd_steady_state(bd);

    // Subsystem 4: Q6 fed by both transmission queues.
    const Q6Inputs q6in = q6_arrivals(sub1.pi, pi3, params.mu[1], params.mu[4], params.mu[5]);
    rates.lambda62 = q6in.lambda62;
    rates.lambda65 = q6in.lambda65;
    rates.lambda6 = q6in.lambda6();
    result.q6_stable = q6_stable(q6in);

    std::optional<double> q6mean;
    if (result.q6_stable) {
        result.q6 = solve_ztransform(hessenberg_coefficients(q6in));
        q6mean = q6_mean(*result.q6);
    }

    const auto drops = drop_probabilities(sub1.pi, sub2.pi, pi3, rates, params);
    const auto means = mean_lengths_finite(sub1.pi, sub2.pi, pi3);
    result.metrics = aggregate(drops, means, q6mean, params.p);

    result.pi1 = std::move(sub1.pi);
    result.pi2 = std::move(sub2.pi);
    result.pi3 = std::move(pi3);
    return result;
}

} // namespace vnfq
