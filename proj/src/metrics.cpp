#include "vnfq/metrics.hpp"

namespace vnfq {

namespace {

double mean_of(const Eigen::VectorXd& dist) {
    double mean = 0.0;
    for (Eigen::Index i = 0; i < dist.size(); ++i) mean += i * dist(i);
    return mean;
}

// Joint probability of {level >= 1, phase = cap_phase}.
double full_phase_mass(const SteadyState& joint) {
    const auto [levels, phases] = *joint.shape;
    double mass = 0.0;
    for (Eigen::Index i = 1; i < levels; ++i) {
        mass += joint.pi(i * phases + (phases - 1));
    }
    return mass;
}

} // namespace

std::array<double, 5> drop_probabilities(const SteadyState& pi1, const SteadyState& pi2,
                                         const Eigen::VectorXd& pi3,
                                         const EffectiveRates& rates,
                                         const SystemParams& params) {
    const Eigen::VectorXd level1 = marginal(pi1, Axis::Level);
    const Eigen::VectorXd level2 = marginal(pi2, Axis::Level);

    std::array<double, 5> drops{};
    drops[0] = rates.lambda1 * (1.0 - params.mu[0]) * level1(level1.size() - 1);
    drops[1] = rates.lambda2 * (1.0 - params.mu[1]) * full_phase_mass(pi1);
    drops[2] = rates.lambda3 * (1.0 - params.mu[2]) * level2(level2.size() - 1);
    drops[3] = rates.lambda4 * (1.0 - params.mu[3]) * full_phase_mass(pi2);
    drops[4] = rates.lambda5 * (1.0 - params.mu[4]) * pi3(pi3.size() - 1);
    return drops;
}

std::array<double, 5> mean_lengths_finite(const SteadyState& pi1, const SteadyState& pi2,
                                          const Eigen::VectorXd& pi3) {
    std::array<double, 5> means{};
    means[0] = mean_of(marginal(pi1, Axis::Level));
    means[1] = mean_of(marginal(pi1, Axis::Phase));
    means[2] = mean_of(marginal(pi2, Axis::Level));
    means[3] = mean_of(marginal(pi2, Axis::Phase));
    means[4] = mean_of(pi3);
    return means;
}

SystemMetrics aggregate(const std::array<double, 5>& drops,
                        const std::array<double, 5>& finite_means,
                        std::optional<double> q6_mean, double p) {
    SystemMetrics metrics;
    metrics.drop_per_queue = drops;
    for (double d : drops) metrics.drop_total += d;
    metrics.mean_finite = finite_means;
    metrics.mean_q6 = q6_mean;
    if (q6_mean) {
        double total = *q6_mean;
        for (double m : finite_means) total += m;
        metrics.mean_total = total;
    }
    metrics.throughput = p - metrics.drop_total;
    if (metrics.mean_total && metrics.throughput > 0.0) {
        metrics.delay = *metrics.mean_total / metrics.throughput;
    }
    return metrics;
}

} // namespace vnfq
