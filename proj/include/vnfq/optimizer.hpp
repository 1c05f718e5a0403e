#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vnfq/pipeline.hpp"

namespace vnfq {

enum class Objective { Drop, Tasks, Weighted };

Objective objective_from_string(const std::string& name);
std::string to_string(Objective objective);

struct SweepPoint {
    double alpha = 0.0;
    AnalysisResult analysis;
    std::optional<double> objective;  // empty when the point cannot be scored
};

/// Result of a brute-force sweep over the alpha grid {0, step, ..., 1}.
/// Ties break toward the smaller alpha.
struct SweepResult {
    Objective objective = Objective::Drop;
    double weight = 0.5;
    std::vector<SweepPoint> points;
    std::optional<std::size_t> argmin;

    double best_alpha() const { return points.at(argmin.value()).alpha; }
};

/// Evaluates analyze() over the grid. The `tasks` objective skips unstable
/// points (they carry no mean); an all-unstable grid is an error.
/// weighted(w) scores w * P_D + (1-w) * Qbar.
SweepResult sweep_alpha(const SystemParams& base, double grid_step, Objective objective,
                        double weight = 0.5, int jobs = 1);

struct TradeoffPoint {
    double alpha = 0.0;
    double drop_rate = 0.0;
    std::optional<double> mean_tasks;  // empty when unstable
    bool pareto = false;               // efficient in the (P_D, Qbar) plane
};

/// Full (alpha, P_D, Qbar) curve with Pareto-efficient points marked.
std::vector<TradeoffPoint> tradeoff_curve(const SystemParams& base, double grid_step,
                                          int jobs = 1);

struct RegionPoint {
    double mu = 0.0;  // applied to mu1..mu5
    int cap = 0;      // applied to M1..M5
    bool stable = false;
    double drop_rate = 0.0;
    double throughput = 0.0;
    std::optional<double> delay;
};

/// Grid over (mu, M) pairs with mu1..mu5 = mu and M1..M5 = M; p, alpha and
/// mu6 come from the base params. Unstable points are flagged, not dropped.
std::vector<RegionPoint> performance_region(const std::vector<double>& mu_values,
                                            const std::vector<int>& cap_values,
                                            const SystemParams& base, int jobs = 1);

/// Optimal alpha for each (mu1, mu2) cell; used for the optimal-routing maps.
struct MapCell {
    double mu1 = 0.0;
    double mu2 = 0.0;
    double best_alpha = 0.0;
    double best_objective = 0.0;
};

std::vector<MapCell> optimal_alpha_map(const std::vector<double>& mu1_values,
                                       const std::vector<double>& mu2_values,
                                       const SystemParams& base, double grid_step,
                                       Objective objective, double weight = 0.5,
                                       int jobs = 1);

} // namespace vnfq
