#include "doctest.h"

#include <random>

#include "vnfq/birth_death.hpp"

using namespace vnfq;

TEST_CASE("no arrivals drift to the empty state") {
    const StochasticMatrix P = bd_transition_matrix({0.0, 0.5, 3});
    for (Eigen::Index i = 0; i < 4; ++i) {
        for (Eigen::Index j = i + 1; j < 4; ++j) CHECK(P.mat()(i, j) == 0.0);
    }
    const Eigen::VectorXd pi = bd_steady_state({0.0, 0.5, 3});
    CHECK(pi(0) == 1.0);
    CHECK(pi.tail(3).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("interior row matches the instantiated display") {
    const StochasticMatrix P = bd_transition_matrix({0.5, 0.5, 2});
    CHECK(P.mat()(1, 0) == doctest::Approx(0.25));
    CHECK(P.mat()(1, 1) == doctest::Approx(0.5));
    CHECK(P.mat()(1, 2) == doctest::Approx(0.25));
}

TEST_CASE("hand-solved three-state chain") {
    const Eigen::VectorXd pi = bd_steady_state({0.5, 0.5, 2});
    CHECK(pi(0) == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(pi(1) == doctest::Approx(0.4).epsilon(1e-13));
    CHECK(pi(2) == doctest::Approx(0.4).epsilon(1e-13));
}

TEST_CASE("closed form equals the matrix solve over random draws") {
    std::mt19937_64 gen(41);
    std::uniform_real_distribution<double> unit(0.01, 0.99);
    std::uniform_int_distribution<int> caps(1, 25);
    for (int trial = 0; trial < 200; ++trial) {
        const BirthDeathParams params{unit(gen), unit(gen), caps(gen)};
        const Eigen::VectorXd closed = bd_steady_state(params);
        const Eigen::VectorXd solved = solve_steady_state(bd_transition_matrix(params)).pi;
        CHECK((closed - solved).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("reference-regime closed form vs matrix solve") {
    const BirthDeathParams params{0.45, 0.45, 10};
    const Eigen::VectorXd closed = bd_steady_state(params);
    const Eigen::VectorXd solved = solve_steady_state(bd_transition_matrix(params)).pi;
    CHECK((closed - solved).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("tail decays geometrically from state 1 on") {
    std::mt19937_64 gen(43);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    for (int trial = 0; trial < 50; ++trial) {
        double lam = unit(gen), mu = unit(gen);
        if (lam >= mu) std::swap(lam, mu);
        if (lam == mu) continue;
        const int cap = 12;
        const Eigen::VectorXd pi = bd_steady_state({lam, mu, cap});
        const double ratio = lam * (1 - mu) / ((1 - lam) * mu);
        for (int i = 1; i < cap; ++i) {
            CHECK(pi(i + 1) == doctest::Approx(pi(i) * ratio).epsilon(1e-10));
        }
        CHECK(ratio < 1.0);
    }
}

TEST_CASE("lambda = 1 falls back to the matrix solve") {
    const Eigen::VectorXd pi = bd_steady_state({1.0, 0.5, 3});
    CHECK(pi.sum() == doctest::Approx(1.0).epsilon(1e-12));
    // Every slot brings an arrival, so the queue never empties.
    CHECK(pi(0) == doctest::Approx(0.0).epsilon(1e-12));
}
