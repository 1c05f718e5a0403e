#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vnfq/model.hpp"

namespace vnfq {

/// Deterministic per-run random stream. Identifier "mt19937_64/sm64-v1":
/// run r of base seed s uses mt19937_64 (whose sequence the standard pins
/// down) seeded with splitmix64(splitmix64(s) ^ (r + 1) * 0x9E3779B97F4A7C15).
/// Draws avoid std distributions so streams are identical across platforms.
class SimRng {
public:
    static constexpr const char* kIdentifier = "mt19937_64/sm64-v1";

    SimRng(std::uint64_t base_seed, std::uint64_t run_index)
        : engine_(stream_seed(base_seed, run_index)) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform() < p; }

    static std::uint64_t splitmix64(std::uint64_t x);
    static std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t run_index);

private:
    std::mt19937_64 engine_;
};

struct SimConfig {
    std::int64_t slots = 1'000'000;
    std::int64_t warmup = 10'000;  // slots excluded from the statistics
    std::uint64_t seed = 12345;
    std::int64_t q6_cap = 0;  // 0 = unbounded; otherwise drops above the cap
};

/// One slot's random outcomes. service[i] is consulted only when queue i+1
/// is non-empty; route1 only when arrival is set.
struct SlotEvents {
    std::array<bool, 6> service{};
    bool arrival = false;
    bool route1 = false;
};

/// Running totals over whatever window they are accumulated in.
struct SlotCounters {
    std::int64_t external_arrivals = 0;          // wireless successes
    std::array<std::int64_t, 6> offered{};       // tasks presented to each queue
    std::array<std::int64_t, 6> dropped{};       // dropped[5] counts q6_cap drops
    std::array<std::int64_t, 6> departed{};      // departed[5] leaves the system
    std::array<std::int64_t, 3> q6_batches{};    // slots with 0/1/2 arrivals to Q6
};

/// Advances the system one slot: departures first (early departure), then the
/// external arrival, then all enqueues with drop-on-full (late arrival).
/// q[i] is the occupancy of queue i+1.
void step_slot(std::array<std::int64_t, 6>& q, const SystemParams& params,
               std::int64_t q6_cap, const SlotEvents& events, SlotCounters& counters);

struct SimResult {
    SystemParams params;
    SimConfig config;
    std::string rng_id;
    std::uint64_t stream_seed = 0;

    SystemMetrics metrics;  // empirical, always fully populated

    // Full-run counters (warmup included): these satisfy the conservation
    // identity external_arrivals = departed[5] + sum(dropped) + occupancy sum.
    SlotCounters totals;
    std::array<std::int64_t, 6> final_occupancy{};

    // Post-warmup counters and occupancy statistics.
    SlotCounters window;
    std::int64_t window_slots = 0;
    std::array<double, 6> mean_occupancy{};
    std::array<std::vector<std::int64_t>, 6> occupancy_hist;

    double empirical_lambda62 = 0.0;  // Q2 departures per window slot
    double empirical_lambda65 = 0.0;  // Q5 departures per window slot

    /// Left side minus right side of the conservation identity; always 0.
    std::int64_t conservation_residual() const;
};

SimResult simulate(const SystemParams& params, const SimConfig& config);

/// Mean and sample standard deviation over independently seeded runs.
struct ReplicateResult {
    std::vector<SimResult> runs;
    SystemMetrics mean;
    SystemMetrics stddev;  // optionals present iff present in every run
};

ReplicateResult replicate(const SystemParams& params, const SimConfig& config, int n_runs,
                          int jobs = 1);

} // namespace vnfq
