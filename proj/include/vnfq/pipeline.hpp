#pragma once

#include <optional>

#include "vnfq/infinite_chain.hpp"
#include "vnfq/metrics.hpp"
#include "vnfq/model.hpp"
#include "vnfq/qbd.hpp"

namespace vnfq {

/// Outcome of one end-to-end analytical evaluation. When Q6 is unstable the
/// finite-queue metrics are still reported; mean_q6, mean_total and delay
/// stay empty.
struct AnalysisResult {
    SystemParams params;
    EffectiveRates rates;
    bool q6_stable = false;
    SystemMetrics metrics;

    // Subsystem steady states, kept for inspection and cross-validation.
    SteadyState pi1;           // (Q1, Q2) joint
    SteadyState pi2;           // (Q3, Q4) joint
    Eigen::VectorXd pi3;       // Q5
    std::optional<Q6Solution> q6;  // present iff stable
};

/// Solves the decomposition in dependency order: tandems (Q1,Q2) and
/// (Q3,Q4), then Q5 from Q4's departures, then Q6 from the two transmission
/// feeds, then the closed-form metrics. Deterministic for fixed params.
AnalysisResult analyze(const SystemParams& params);

} // namespace vnfq
