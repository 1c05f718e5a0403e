#include "doctest.h"

#include <random>

#include "vnfq/birth_death.hpp"
#include "vnfq/dtmc.hpp"

using namespace vnfq;

TEST_CASE("single state chain") {
    const SteadyState s = solve_steady_state(StochasticMatrix(Eigen::MatrixXd::Identity(1, 1)));
    CHECK(s.pi(0) == 1.0);
}

TEST_CASE("symmetric two-state chain") {
    Eigen::MatrixXd P(2, 2);
    P << 0.5, 0.5, 0.5, 0.5;
    const SteadyState s = solve_steady_state(StochasticMatrix(P));
    CHECK(s.pi(0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(s.pi(1) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("three-state birth-death chain solved against hand balance") {
    // lambda = mu = 0.5, M = 2: balance gives pi = [0.2, 0.4, 0.4].
    const StochasticMatrix P = bd_transition_matrix({0.5, 0.5, 2});
    const SteadyState s = solve_steady_state(P);
    CHECK(s.pi(0) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(s.pi(1) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(s.pi(2) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("non-stochastic input is rejected") {
    Eigen::MatrixXd bad(2, 2);
    bad << 0.5, 0.4, 0.5, 0.5;
    CHECK_THROWS_AS(StochasticMatrix{bad}, SolverError);
    bad << 1.2, -0.2, 0.5, 0.5;
    CHECK_THROWS_AS(StochasticMatrix{bad}, SolverError);
}

TEST_CASE("multi-class chains still satisfy the residual contract") {
    // Two absorbing states: the stationary distribution is not unique (the
    // single-recurrent-class precondition is violated), but whatever comes
    // back must still be a normalized stationary vector or an error.
    try {
        const SteadyState s =
            solve_steady_state(StochasticMatrix(Eigen::MatrixXd::Identity(2, 2)));
        CHECK(s.residual <= 1e-10);
        CHECK(s.pi.sum() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.pi.minCoeff() >= 0.0);
    } catch (const SolverError&) {
        // Also acceptable: the degenerate system is reported.
    }
}

TEST_CASE("residual invariant over random chains") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> sizes(1, 40);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = sizes(gen);
        Eigen::MatrixXd P(n, n);
        for (int i = 0; i < n; ++i) {
            double sum = 0.0;
            for (int j = 0; j < n; ++j) {
                P(i, j) = unit(gen);
                sum += P(i, j);
            }
            P.row(i) /= sum;
        }
        const SteadyState s = solve_steady_state(StochasticMatrix(P));
        CHECK(s.residual <= 1e-10);
        CHECK(s.pi.sum() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.pi.minCoeff() >= 0.0);
    }
}

TEST_CASE("marginals") {
    SUBCASE("uniform joint") {
        SteadyState s;
        s.pi = Eigen::VectorXd::Constant(4, 0.25);
        s.shape = JointShape{2, 2};
        const Eigen::VectorXd lv = marginal(s, Axis::Level);
        const Eigen::VectorXd ph = marginal(s, Axis::Phase);
        CHECK(lv(0) == doctest::Approx(0.5));
        CHECK(lv(1) == doctest::Approx(0.5));
        CHECK(ph(0) == doctest::Approx(0.5));
        CHECK(ph(1) == doctest::Approx(0.5));
    }
    SUBCASE("point mass at the origin") {
        SteadyState s;
        s.pi = Eigen::VectorXd::Zero(6);
        s.pi(0) = 1.0;
        s.shape = JointShape{2, 3};
        const Eigen::VectorXd lv = marginal(s, Axis::Level);
        CHECK(lv(0) == doctest::Approx(1.0));
        CHECK(lv(1) == doctest::Approx(0.0));
    }
    SUBCASE("missing shape metadata") {
        SteadyState s;
        s.pi = Eigen::VectorXd::Constant(4, 0.25);
        CHECK_THROWS_AS(marginal(s, Axis::Level), SolverError);
    }
    SUBCASE("marginals sum to one") {
        std::mt19937_64 gen(3);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        SteadyState s;
        s.pi = Eigen::VectorXd::NullaryExpr(12, [&]() { return unit(gen); });
        s.pi /= s.pi.sum();
        s.shape = JointShape{3, 4};
        CHECK(marginal(s, Axis::Level).sum() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(marginal(s, Axis::Phase).sum() == doctest::Approx(1.0).epsilon(1e-14));
    }
}
