#include "vnfq/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace vnfq {

std::uint64_t SimRng::splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t SimRng::stream_seed(std::uint64_t base_seed, std::uint64_t run_index) {
    return splitmix64(splitmix64(base_seed) ^ (run_index + 1) * 0x9E3779B97F4A7C15ULL);
}

void step_slot(std::array<std::int64_t, 6>& q, const SystemParams& params,
               std::int64_t q6_cap, const SlotEvents& events, SlotCounters& counters) {
    // Departure phase: every non-empty queue may complete one task; the task
    // is in flight until the enqueue phase of the same slot.
    std::array<bool, 6> left{};
    for (int i = 0; i < 6; ++i) {
        if (q[i] > 0 && events.service[i]) {
            left[i] = true;
            --q[i];
            ++counters.departed[i];
        }
    }

    // External arrival and routing decision.
    int external_target = -1;  // 0-based queue index
    if (events.arrival) {
        ++counters.external_arrivals;
        external_target = events.route1 ? 0 : 2;
    }

    // Enqueue phase: a task that finds its target still full after the
    // departure phase is dropped.
    auto offer_finite = [&](int target) {
        ++counters.offered[target];
        if (q[target] >= params.buffer[target]) {
            ++counters.dropped[target];
        } else {
            ++q[target];
        }
    };
    if (left[0]) offer_finite(1);  // Q1 -> Q2
    if (left[2]) offer_finite(3);  // Q3 -> Q4
    if (left[3]) offer_finite(4);  // Q4 -> Q5
    if (external_target >= 0) offer_finite(external_target);

    const int q6_batch = (left[1] ? 1 : 0) + (left[4] ? 1 : 0);  // Q2, Q5 -> Q6
    ++counters.q6_batches[q6_batch];
    for (int k = 0; k < q6_batch; ++k) {
        ++counters.offered[5];
        if (q6_cap > 0 && q[5] >= q6_cap) {
            ++counters.dropped[5];
        } else {
            ++q[5];
        }
    }
}

std::int64_t SimResult::conservation_residual() const {
    std::int64_t rhs = totals.departed[5];
    for (int i = 0; i < 6; ++i) rhs += totals.dropped[i];
    for (int i = 0; i < 6; ++i) rhs += final_occupancy[i];
    return totals.external_arrivals - rhs;
}

namespace {

SlotCounters counters_diff(const SlotCounters& after, const SlotCounters& before) {
    SlotCounters d;
    d.external_arrivals = after.external_arrivals - before.external_arrivals;
    for (int i = 0; i < 6; ++i) {
        d.offered[i] = after.offered[i] - before.offered[i];
        d.dropped[i] = after.dropped[i] - before.dropped[i];
        d.departed[i] = after.departed[i] - before.departed[i];
    }
    for (int i = 0; i < 3; ++i) d.q6_batches[i] = after.q6_batches[i] - before.q6_batches[i];
    return d;
}

SimResult run_one(const SystemParams& params, const SimConfig& config,
                  std::uint64_t run_index) {
    SimResult result;
    result.params = params;
    result.config = config;
    result.rng_id = SimRng::kIdentifier;
    result.stream_seed = SimRng::stream_seed(config.seed, run_index);

    SimRng rng(config.seed, run_index);
    std::array<std::int64_t, 6> q{};

    for (int i = 0; i < 5; ++i) {
        result.occupancy_hist[i].assign(static_cast<std::size_t>(params.buffer[i]) + 1, 0);
    }
    result.occupancy_hist[5].assign(64, 0);

    SlotCounters at_warmup;
    std::array<double, 6> occupancy_sum{};
    for (std::int64_t slot = 0; slot < config.slots; ++slot) {
        if (slot == config.warmup) at_warmup = result.totals;

        SlotEvents events;
        // Fixed draw order: service for each non-empty queue in index order,
        // then the arrival, then the routing coin.
        for (int i = 0; i < 6; ++i) {
            if (q[i] > 0) events.service[i] = rng.bernoulli(params.mu[i]);
        }
        events.arrival = rng.bernoulli(params.p);
        if (events.arrival) events.route1 = rng.bernoulli(params.alpha);

        step_slot(q, params, config.q6_cap, events, result.totals);

        if (slot >= config.warmup) {
            ++result.window_slots;
            for (int i = 0; i < 6; ++i) occupancy_sum[i] += static_cast<double>(q[i]);
            for (int i = 0; i < 5; ++i) {
                ++result.occupancy_hist[i][static_cast<std::size_t>(q[i])];
            }
            if (static_cast<std::size_t>(q[5]) >= result.occupancy_hist[5].size()) {
                result.occupancy_hist[5].resize(static_cast<std::size_t>(q[5]) + 1, 0);
            }
            ++result.occupancy_hist[5][static_cast<std::size_t>(q[5])];
        }
    }
    result.final_occupancy = q;
    result.window = counters_diff(result.totals, at_warmup);

    const double w = static_cast<double>(result.window_slots);
    for (int i = 0; i < 6; ++i) result.mean_occupancy[i] = occupancy_sum[i] / w;
    result.empirical_lambda62 = static_cast<double>(result.window.departed[1]) / w;
    result.empirical_lambda65 = static_cast<double>(result.window.departed[4]) / w;

    SystemMetrics& m = result.metrics;
    for (int i = 0; i < 5; ++i) {
        m.drop_per_queue[i] = static_cast<double>(result.window.dropped[i]) / w;
        m.drop_total += m.drop_per_queue[i];
        m.mean_finite[i] = result.mean_occupancy[i];
    }
    m.mean_q6 = result.mean_occupancy[5];
    double mean_total = 0.0;
    for (int i = 0; i < 6; ++i) mean_total += result.mean_occupancy[i];
    m.mean_total = mean_total;
    m.throughput = static_cast<double>(result.window.departed[5]) / w;
    if (m.throughput > 0.0) m.delay = *m.mean_total / m.throughput;
    return result;
}

} // namespace

SimResult simulate(const SystemParams& raw, const SimConfig& config) {
    const SystemParams params = validate(raw);
    if (!(config.warmup >= 0 && config.warmup < config.slots)) {
        throw ValidationError("warmup", "warmup must be in [0, slots)");
    }
    if (config.q6_cap < 0) {
        throw ValidationError("q6_cap", "q6_cap must be 0 (unbounded) or positive");
    }
    return run_one(params, config, 0);
}

namespace {

double metric_field(const SystemMetrics& m, int k) {
    if (k < 5) return m.drop_per_queue[k];
    if (k == 5) return m.drop_total;
    if (k < 11) return m.mean_finite[k - 6];
    if (k == 11) return m.mean_q6.value_or(0.0);
    if (k == 12) return m.mean_total.value_or(0.0);
    if (k == 13) return m.throughput;
    return m.delay.value_or(0.0);
}

void set_metric_field(SystemMetrics& m, int k, double v) {
    if (k < 5) m.drop_per_queue[k] = v;
    else if (k == 5) m.drop_total = v;
    else if (k < 11) m.mean_finite[k - 6] = v;
    else if (k == 11) m.mean_q6 = v;
    else if (k == 12) m.mean_total = v;
    else if (k == 13) m.throughput = v;
    else m.delay = v;
}

constexpr int kMetricFields = 15;

} // namespace

ReplicateResult replicate(const SystemParams& raw, const SimConfig& config, int n_runs,
                          int jobs) {
    const SystemParams params = validate(raw);
    if (n_runs < 1) throw ValidationError("runs", "n_runs must be >= 1");
    if (!(config.warmup >= 0 && config.warmup < config.slots)) {
        throw ValidationError("warmup", "warmup must be in [0, slots)");
    }

    ReplicateResult result;
    result.runs.resize(static_cast<std::size_t>(n_runs));
    jobs = std::max(1, jobs);
    if (jobs == 1) {
        for (int r = 0; r < n_runs; ++r) {
            result.runs[static_cast<std::size_t>(r)] =
                run_one(params, config, static_cast<std::uint64_t>(r));
        }
    } else {
        std::vector<std::thread> workers;
        std::atomic<int> next{0};
        for (int t = 0; t < std::min(jobs, n_runs); ++t) {
            workers.emplace_back([&]() {
                for (int r = next.fetch_add(1); r < n_runs; r = next.fetch_add(1)) {
                    result.runs[static_cast<std::size_t>(r)] =
                        run_one(params, config, static_cast<std::uint64_t>(r));
                }
            });
        }
        for (auto& worker : workers) worker.join();
    }

    const bool all_delay = std::all_of(result.runs.begin(), result.runs.end(),
                                       [](const SimResult& r) { return r.metrics.delay.has_value(); });
    for (int k = 0; k < kMetricFields; ++k) {
        if (k == 14 && !all_delay) continue;
        double mean = 0.0;
        for (const auto& run : result.runs) mean += metric_field(run.metrics, k);
        mean /= n_runs;
        double var = 0.0;
        for (const auto& run : result.runs) {
            const double d = metric_field(run.metrics, k) - mean;
            var += d * d;
        }
        var = n_runs > 1 ? var / (n_runs - 1) : 0.0;
        set_metric_field(result.mean, k, mean);
        set_metric_field(result.stddev, k, std::sqrt(var));
    }
    return result;
}

} // namespace vnfq
