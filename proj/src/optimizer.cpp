#include "vnfq/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace vnfq {

Objective objective_from_string(const std::string& name) {
    if (name == "drop") return Objective::Drop;
    if (name == "tasks") return Objective::Tasks;
    if (name == "weighted") return Objective::Weighted;
    throw ValidationError("objective", "unknown objective '" + name + "'");
}

std::string to_string(Objective objective) {
    switch (objective) {
        case Objective::Drop: return "drop";
        case Objective::Tasks: return "tasks";
        case Objective::Weighted: return "weighted";
    }
    return "?";
}

namespace {

// Deterministic parallel map: slot i of the output only ever written by the
// worker that claimed i, so results are independent of scheduling.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const int count = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(jobs), n));
    workers.reserve(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t) {
        workers.emplace_back([&]() {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& worker : workers) worker.join();
}

std::vector<double> alpha_grid(double step) {
    if (!(step > 0.0 && step <= 0.5)) {
        throw ValidationError("step", "grid step must be in (0, 0.5]");
    }
    std::vector<double> grid;
    for (int k = 0; k * step < 1.0 - 1e-12; ++k) grid.push_back(k * step);
    grid.push_back(1.0);
    return grid;
}

std::optional<double> score(const AnalysisResult& analysis, Objective objective, double weight) {
    switch (objective) {
        case Objective::Drop:
            return analysis.metrics.drop_total;
        case Objective::Tasks:
            if (!analysis.metrics.mean_total) return std::nullopt;
            return *analysis.metrics.mean_total;
        case Objective::Weighted:
            if (!analysis.metrics.mean_total) return std::nullopt;
            return weight * analysis.metrics.drop_total +
                   (1.0 - weight) * *analysis.metrics.mean_total;
    }
    return std::nullopt;
}

} // namespace

SweepResult sweep_alpha(const SystemParams& base, double grid_step, Objective objective,
                        double weight, int jobs) {
    const std::vector<double> grid = alpha_grid(grid_step);

    SweepResult result;
    result.objective = objective;
    result.weight = weight;
    result.points.resize(grid.size());
    parallel_for(grid.size(), jobs, [&](std::size_t i) {
        SystemParams params = base;
        params.alpha = grid[i];
        SweepPoint& point = result.points[i];
        point.alpha = grid[i];
        point.analysis = analyze(params);
        point.objective = score(point.analysis, objective, weight);
    });

    for (std::size_t i = 0; i < result.points.size(); ++i) {
        const auto& obj = result.points[i].objective;
        if (!obj) continue;
        if (!result.argmin || *obj < *result.points[*result.argmin].objective) {
            result.argmin = i;
        }
    }
    if (!result.argmin) {
        throw SolverError("no grid point admits the objective (Q6 unstable everywhere)");
    }
    return result;
}

std::vector<TradeoffPoint> tradeoff_curve(const SystemParams& base, double grid_step,
                                          int jobs) {
    const SweepResult sweep = sweep_alpha(base, grid_step, Objective::Drop, 0.5, jobs);

    std::vector<TradeoffPoint> curve(sweep.points.size());
    for (std::size_t i = 0; i < sweep.points.size(); ++i) {
        const auto& analysis = sweep.points[i].analysis;
        curve[i].alpha = sweep.points[i].alpha;
        curve[i].drop_rate = analysis.metrics.drop_total;
        curve[i].mean_tasks = analysis.metrics.mean_total;
    }

    // Pareto marking over the stable points by sorted sweep: after ordering
    // by (drop, tasks), a point is efficient iff it strictly improves the
    // running best task count, or exactly duplicates the point that set it.
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (curve[i].mean_tasks) order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (curve[a].drop_rate != curve[b].drop_rate) {
            return curve[a].drop_rate < curve[b].drop_rate;
        }
        return *curve[a].mean_tasks < *curve[b].mean_tasks;
    });
    double best_tasks = std::numeric_limits<double>::infinity();
    double best_drop = 0.0;
    for (std::size_t idx : order) {
        const double drop = curve[idx].drop_rate, tasks = *curve[idx].mean_tasks;
        if (tasks < best_tasks) {
            curve[idx].pareto = true;
            best_tasks = tasks;
            best_drop = drop;
        } else if (tasks == best_tasks && drop == best_drop) {
            curve[idx].pareto = true;  // exact duplicate of an efficient point
        }
    }
    return curve;
}

std::vector<RegionPoint> performance_region(const std::vector<double>& mu_values,
                                            const std::vector<int>& cap_values,
                                            const SystemParams& base, int jobs) {
    std::vector<RegionPoint> region(mu_values.size() * cap_values.size());
    parallel_for(region.size(), jobs, [&](std::size_t k) {
        const double mu = mu_values[k / cap_values.size()];
        const int cap = cap_values[k % cap_values.size()];
        SystemParams params = base;
        for (int i = 0; i < 5; ++i) params.mu[i] = mu;
        for (int i = 0; i < 5; ++i) params.buffer[i] = cap;
        const AnalysisResult analysis = analyze(params);
        RegionPoint& point = region[k];
        point.mu = mu;
        point.cap = cap;
        point.stable = analysis.q6_stable;
        point.drop_rate = analysis.metrics.drop_total;
        point.throughput = analysis.metrics.throughput;
        point.delay = analysis.metrics.delay;
    });
    return region;
}

std::vector<MapCell> optimal_alpha_map(const std::vector<double>& mu1_values,
                                       const std::vector<double>& mu2_values,
                                       const SystemParams& base, double grid_step,
                                       Objective objective, double weight, int jobs) {
    std::vector<MapCell> map(mu1_values.size() * mu2_values.size());
    parallel_for(map.size(), jobs, [&](std::size_t k) {
        MapCell& cell = map[k];
        cell.mu1 = mu1_values[k / mu2_values.size()];
        cell.mu2 = mu2_values[k % mu2_values.size()];
        SystemParams params = base;
        params.mu[0] = cell.mu1;
        params.mu[1] = cell.mu2;
        // Inner sweep stays sequential; the outer map is already parallel.
        const SweepResult sweep = sweep_alpha(params, grid_step, objective, weight, 1);
        cell.best_alpha = sweep.best_alpha();
        cell.best_objective = *sweep.points[*sweep.argmin].objective;
    });
    return map;
}

} // namespace vnfq
