#include "doctest.h"

#include "vnfq/birth_death.hpp"
#include "vnfq/metrics.hpp"
#include "vnfq/pipeline.hpp"

using namespace vnfq;

namespace {

SystemParams fig3_params(double alpha) {
    SystemParams p;
    p.p = 0.8;
    p.alpha = alpha;
    p.mu = {0.5, 0.5, 0.5, 0.5, 0.5, 0.9};
    p.buffer = {10, 10, 10, 10, 10};
    return p;
}

} // namespace

TEST_CASE("route 1 idle means no drops on route 1") {
    const AnalysisResult r = analyze(fig3_params(0.0));
    CHECK(r.metrics.drop_per_queue[0] == doctest::Approx(0.0));
    CHECK(r.metrics.drop_per_queue[1] == doctest::Approx(0.0));
}

TEST_CASE("ample buffer drives the Q5 drop to zero") {
    SystemParams p = fig3_params(0.5);
    p.buffer[4] = 60;
    const AnalysisResult r = analyze(p);
    CHECK(r.metrics.drop_per_queue[4] <= 1e-9);
}

TEST_CASE("Q5 mean from the hand-solved distribution") {
    // pi = [0.2, 0.4, 0.4] gives a mean of 1.2.
    const Eigen::VectorXd pi3 = bd_steady_state({0.5, 0.5, 2});
    SteadyState trivial;
    trivial.pi = Eigen::VectorXd::Ones(1);
    trivial.shape = JointShape{1, 1};
    const auto means = mean_lengths_finite(trivial, trivial, pi3);
    CHECK(means[4] == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("aggregate sums its parts and derives throughput and delay") {
    const std::array<double, 5> drops = {0.01, 0.0, 0.02, 0.0, 0.005};
    const std::array<double, 5> means = {1.0, 0.5, 2.0, 0.25, 0.25};
    const SystemMetrics m = aggregate(drops, means, 3.0, 0.8);
    CHECK(m.drop_total == doctest::Approx(0.035).epsilon(1e-15));
    CHECK(*m.mean_total == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(m.throughput == doctest::Approx(0.765).epsilon(1e-15));
    CHECK(*m.delay == doctest::Approx(7.0 / 0.765).epsilon(1e-12));
}

TEST_CASE("empty system produces all-zero metrics and no delay") {
    SystemParams p = fig3_params(0.5);
    p.p = 0.0;
    const AnalysisResult r = analyze(p);
    CHECK(r.metrics.drop_total == doctest::Approx(0.0));
    CHECK(*r.metrics.mean_total == doctest::Approx(0.0));
    CHECK(r.metrics.throughput == doctest::Approx(0.0));
    CHECK_FALSE(r.metrics.delay.has_value());
}

TEST_CASE("lossless regime carries the offered load") {
    SystemParams p = fig3_params(0.5);
    p.mu = {0.9, 0.9, 0.9, 0.9, 0.9, 0.95};
    p.buffer = {50, 50, 50, 50, 50};
    p.p = 0.3;
    const AnalysisResult r = analyze(p);
    CHECK(r.metrics.throughput == doctest::Approx(0.3).epsilon(1e-6));
}

TEST_CASE("drops stay within the offered load") {
    for (double alpha : {0.0, 0.3, 0.7, 1.0}) {
        const AnalysisResult r = analyze(fig3_params(alpha));
        const auto& d = r.metrics.drop_per_queue;
        CHECK(d[0] >= 0.0);
        CHECK(d[0] <= r.rates.lambda1 + 1e-15);
        CHECK(d[1] <= r.rates.lambda2 + 1e-15);
        CHECK(d[2] <= r.rates.lambda3 + 1e-15);
        CHECK(d[3] <= r.rates.lambda4 + 1e-15);
        CHECK(d[4] <= r.rates.lambda5 + 1e-15);
        double sum = 0.0;
        for (double v : d) sum += v;
        CHECK(r.metrics.drop_total == doctest::Approx(sum).epsilon(1e-15));
        CHECK(r.metrics.throughput >= 0.0);
        CHECK(r.metrics.throughput <= r.params.p);
    }
}
