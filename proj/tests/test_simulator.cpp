#include "doctest.h"

#include "vnfq/pipeline.hpp"
#include "vnfq/simulator.hpp"

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

TEST_CASE("no arrivals, no activity") {
    SystemParams p = fig3_params(0.5);
    p.p = 0.0;
    const SimResult r = simulate(p, {20'000, 100, 1});
    CHECK(r.totals.external_arrivals == 0);
    CHECK(r.metrics.drop_total == 0.0);
    CHECK(*r.metrics.mean_total == 0.0);
    CHECK(r.metrics.throughput == 0.0);
    CHECK_FALSE(r.metrics.delay.has_value());
    CHECK(r.conservation_residual() == 0);
}

TEST_CASE("instant service never drops") {
    SystemParams p = fig3_params(0.5);
    p.mu = {1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    p.buffer = {50, 50, 50, 50, 50};
    const SimResult r = simulate(p, {100'000, 1'000, 2});
    for (int i = 0; i < 6; ++i) CHECK(r.totals.dropped[i] == 0);
    CHECK(r.metrics.throughput ==
          doctest::Approx(p.p).epsilon(0.02));
    CHECK(r.conservation_residual() == 0);
}

TEST_CASE("same seed reproduces bit-identical results") {
    const SimConfig cfg{50'000, 500, 777};
    const SimResult a = simulate(fig3_params(0.4), cfg);
    const SimResult b = simulate(fig3_params(0.4), cfg);
    CHECK(a.totals.external_arrivals == b.totals.external_arrivals);
    CHECK(a.metrics.drop_total == b.metrics.drop_total);
    CHECK(*a.metrics.mean_total == *b.metrics.mean_total);
    CHECK(a.final_occupancy == b.final_occupancy);
    for (int i = 0; i < 6; ++i) {
        CHECK(a.totals.departed[i] == b.totals.departed[i]);
        CHECK(a.totals.dropped[i] == b.totals.dropped[i]);
    }
}

TEST_CASE("conservation identity holds exactly") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 42ULL}) {
        for (double alpha : {0.0, 0.3, 1.0}) {
            SystemParams p = fig3_params(alpha);
            p.buffer = {2, 1, 3, 1, 2};
            const SimResult r = simulate(p, {30'000, 300, seed});
            CHECK(r.conservation_residual() == 0);
        }
    }
}

TEST_CASE("drop rule via forced event sequences at M=1") {
    SystemParams p = fig3_params(1.0);  // route 1 only
    p.buffer = {1, 1, 1, 1, 1};
    std::array<std::int64_t, 6> q{};
    SlotCounters counters;

    SlotEvents fill;
    fill.arrival = true;
    fill.route1 = true;
    step_slot(q, p, 0, fill, counters);  // Q1: 0 -> 1
    CHECK(q[0] == 1);
    CHECK(counters.dropped[0] == 0);

    // Arrival into the full queue with no departure: dropped.
    step_slot(q, p, 0, fill, counters);
    CHECK(q[0] == 1);
    CHECK(counters.dropped[0] == 1);

    // Arrival with a simultaneous departure: the freed slot is taken, no drop.
    SlotEvents serve_and_fill = fill;
    serve_and_fill.service[0] = true;
    step_slot(q, p, 0, serve_and_fill, counters);
    CHECK(q[0] == 1);  // departure freed it, arrival refilled it
    CHECK(q[1] == 1);  // the served task moved to Q2
    CHECK(counters.dropped[0] == 1);

    // Q2 full, Q1 serves again, Q2 does not: the fed task is dropped.
    step_slot(q, p, 0, serve_and_fill, counters);
    CHECK(q[1] == 1);
    CHECK(counters.dropped[1] == 1);

    // Q2 full but departing in the same slot: fed task takes the slot.
    SlotEvents serve_both = serve_and_fill;
    serve_both.service[1] = true;
    step_slot(q, p, 0, serve_both, counters);
    CHECK(q[1] == 1);
    CHECK(counters.dropped[1] == 1);
    CHECK(counters.departed[1] == 1);

    CHECK(counters.external_arrivals == 5);
}

TEST_CASE("Q6 batch histogram matches the two-feed product law") {
    const SimResult r = simulate(fig3_params(0.5), {1'000'000, 10'000, 2024});
    const double w = static_cast<double>(r.window_slots);
    const double l62 = r.empirical_lambda62;
    const double l65 = r.empirical_lambda65;
    const double expect0 = (1 - l62) * (1 - l65);
    const double expect1 = l62 * (1 - l65) + l65 * (1 - l62);
    const double expect2 = l62 * l65;
    CHECK(static_cast<double>(r.window.q6_batches[0]) / w ==
          doctest::Approx(expect0).epsilon(0.005 / expect0));
    CHECK(static_cast<double>(r.window.q6_batches[1]) / w ==
          doctest::Approx(expect1).epsilon(0.005 / expect1));
    CHECK(std::abs(static_cast<double>(r.window.q6_batches[2]) / w - expect2) <= 0.005);
}

TEST_CASE("subsystem-1 occupancy histogram matches the analytical marginals") {
    const AnalysisResult ana = analyze(fig3_params(0.5));
    const SimResult sim = simulate(fig3_params(0.5), {1'000'000, 10'000, 99});

    const Eigen::VectorXd level = marginal(ana.pi1, Axis::Level);
    const Eigen::VectorXd phase = marginal(ana.pi1, Axis::Phase);
    const double w = static_cast<double>(sim.window_slots);
    for (int i = 0; i <= 10; ++i) {
        const double q1 = static_cast<double>(sim.occupancy_hist[0][i]) / w;
        const double q2 = static_cast<double>(sim.occupancy_hist[1][i]) / w;
        CHECK(std::abs(q1 - level(i)) <= 0.01);
        CHECK(std::abs(q2 - phase(i)) <= 0.01);
    }

    // Effective rates against their empirical counterparts.
    const double q1_departure_rate = static_cast<double>(sim.window.departed[0]) / w;
    CHECK(ana.rates.lambda2 < 0.5);
    CHECK(std::abs(ana.rates.lambda2 - q1_departure_rate) <= 0.01);
    const double q6_arrival_rate = static_cast<double>(sim.window.offered[5]) / w;
    CHECK(std::abs(ana.rates.lambda6 - q6_arrival_rate) <= 0.01);
}

TEST_CASE("bad simulation windows are rejected") {
    CHECK_THROWS_AS(simulate(fig3_params(0.5), {1'000, 1'000, 1}), ValidationError);
    CHECK_THROWS_AS(simulate(fig3_params(0.5), {1'000, 2'000, 1}), ValidationError);
    SimConfig bad{1'000, 10, 1};
    bad.q6_cap = -1;
    CHECK_THROWS_AS(simulate(fig3_params(0.5), bad), ValidationError);
}

TEST_CASE("replicate derives distinct reproducible streams") {
    const SimConfig cfg{20'000, 200, 31};
    const ReplicateResult r = replicate(fig3_params(0.5), cfg, 2);
    CHECK(r.runs.size() == 2);
    CHECK(r.runs[0].stream_seed != r.runs[1].stream_seed);
    CHECK(r.runs[0].metrics.drop_total != r.runs[1].metrics.drop_total);

    const ReplicateResult again = replicate(fig3_params(0.5), cfg, 2);
    CHECK(again.runs[0].metrics.drop_total == r.runs[0].metrics.drop_total);
    CHECK(again.runs[1].metrics.drop_total == r.runs[1].metrics.drop_total);

    const ReplicateResult parallel = replicate(fig3_params(0.5), cfg, 2, 2);
    CHECK(parallel.runs[0].metrics.drop_total == r.runs[0].metrics.drop_total);
    CHECK(parallel.runs[1].metrics.drop_total == r.runs[1].metrics.drop_total);
}

TEST_CASE("trade-off-regime replications have small drop-rate spread") {
    SystemParams p = fig3_params(0.5);
    p.mu = {0.45, 0.45, 0.45, 0.45, 0.45, 0.9};
    const ReplicateResult r = replicate(p, {1'000'000, 10'000, 12345}, 10, 2);
    CHECK(r.stddev.drop_total < 0.002);
}

TEST_CASE("replicate with no traffic has zero spread") {
    SystemParams p = fig3_params(0.5);
    p.p = 0.0;
    const ReplicateResult r = replicate(p, {5'000, 100, 5}, 3);
    CHECK(r.mean.drop_total == 0.0);
    CHECK(r.stddev.drop_total == 0.0);
    CHECK(*r.stddev.mean_total == 0.0);
}

TEST_CASE("q6 cap drops and still conserves") {
    SystemParams p = fig3_params(0.5);
    p.mu = {0.9, 0.9, 0.9, 0.9, 0.9, 0.05};  // choke Q6
    const SimResult r = simulate(p, {20'000, 100, 7, 4});
    CHECK(r.final_occupancy[5] <= 4);
    CHECK(r.totals.dropped[5] > 0);
    CHECK(r.conservation_residual() == 0);
}
