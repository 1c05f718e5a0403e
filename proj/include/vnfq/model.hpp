#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "vnfq/errors.hpp"

namespace vnfq {

// Queue indices are 1-based throughout, matching the topology:
//   route 1: Q1 -> Q2 -> Q6
//   route 2: Q3 -> Q4 -> Q5 -> Q6
// Q1, Q4, Q6 process tasks; Q2, Q3, Q5 transmit them. Q6 is the only
// unbounded queue.
enum class QueueRole { Processing, Transmission };

QueueRole queue_role(int queue);

/// Successor queue index on the task path; 0 means the task leaves the system.
int queue_successor(int queue);

inline constexpr std::array<int, 3> kRoute1 = {1, 2, 6};
inline constexpr std::array<int, 4> kRoute2 = {3, 4, 5, 6};

/// Full parameterization of the six-queue system.
struct SystemParams {
    double p = 0.8;                   // per-slot wireless arrival probability
    double alpha = 0.5;               // routing probability toward Q1
    std::array<double, 6> mu{};       // per-slot service probabilities mu1..mu6
    std::array<int, 5> buffer{};      // capacities M1..M5 (Q6 is unbounded)

    double mu_of(int queue) const { return mu.at(queue - 1); }
    int cap_of(int queue) const { return buffer.at(queue - 1); }
};

/// Checks every model invariant, returning the params unchanged.
/// Throws ValidationError naming the first violated field in the canonical
/// order p, alpha, mu1..mu6, M1..M5.
SystemParams validate(const SystemParams& params);

/// Per-queue and aggregate performance numbers. The analytical pipeline
/// leaves the Q6-dependent fields empty when Q6 is unstable; the simulator
/// always fills them. Throughput and delay are derived quantities (flow
/// accounting and Little's law); delay counts in-network time only.
struct SystemMetrics {
    std::array<double, 5> drop_per_queue{};  // P_D1..P_D5, tasks/slot
    double drop_total = 0.0;                 // P_D
    std::array<double, 5> mean_finite{};     // mean lengths of Q1..Q5, tasks
    std::optional<double> mean_q6;           // mean length of Q6
    std::optional<double> mean_total;        // sum over all six queues
    double throughput = 0.0;                 // p - P_D, tasks/slot
    std::optional<double> delay;             // mean_total / throughput, slots
};

} // namespace vnfq
