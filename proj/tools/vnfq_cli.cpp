// vnfq: queueing analysis of a two-VNF edge-to-core service chain.
// Subcommands: analyze, simulate, compare, sweep, region.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vnfq/config.hpp"
#include "vnfq/optimizer.hpp"
#include "vnfq/pipeline.hpp"
#include "vnfq/simulator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitModel = 2;  // model-level condition (Q6 instability)

constexpr const char* kSchemaComment = "# vnfq csv v1";
constexpr const char* kDerivedNote =
    "# note: throughput and delay are derived quantities (flow accounting and Little's law); "
    "delay counts in-network time across Q1..Q6 only";

using vnfq::format_double;

std::string fmt(double v) { return format_double(v); }
std::string fmt(std::optional<double> v) { return v ? format_double(*v) : ""; }

struct Csv {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void emit(std::ostream& out) const {
        out << kSchemaComment << "\n";
        for (const auto& c : comments) out << c << "\n";
        for (std::size_t i = 0; i < header.size(); ++i) {
            out << header[i] << (i + 1 < header.size() ? "," : "");
        }
        out << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << row[i] << (i + 1 < row.size() ? "," : "");
            }
            out << "\n";
        }
    }

    void deliver(const std::string& out_path) const {
        if (out_path.empty()) {
            emit(std::cout);
            return;
        }
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw vnfq::ConfigError("cannot write output file '" + out_path + "'");
        emit(file);
        std::cerr << "wrote " << rows.size() << " row(s) to " << out_path << "\n";
    }
};

const std::vector<std::string>& param_header() {
    static const std::vector<std::string> cols = {
        "p", "alpha", "mu1", "mu2", "mu3", "mu4", "mu5", "mu6",
        "M1", "M2", "M3", "M4", "M5"};
    return cols;
}

std::vector<std::string> param_cells(const vnfq::SystemParams& p) {
    std::vector<std::string> cells = {fmt(p.p), fmt(p.alpha)};
    for (double m : p.mu) cells.push_back(fmt(m));
    for (int b : p.buffer) cells.push_back(std::to_string(b));
    return cells;
}

// Config plus command-line overrides shared by every subcommand.
struct ParamArgs {
    std::string config_path;
    std::optional<double> p, alpha;
    std::array<std::optional<double>, 6> mu;
    std::array<std::optional<int>, 5> buffer;

    void attach(CLI::App* cmd) {
        cmd->add_option("-c,--config", config_path, "config file (key = value)")
            ->required();
        cmd->add_option("--p", p, "override p");
        cmd->add_option("--alpha", alpha, "override alpha");
        for (int i = 0; i < 6; ++i) {
            cmd->add_option("--mu" + std::to_string(i + 1), mu[i],
                            "override mu" + std::to_string(i + 1));
        }
        for (int i = 0; i < 5; ++i) {
            cmd->add_option("--M" + std::to_string(i + 1), buffer[i],
                            "override M" + std::to_string(i + 1));
        }
    }

    vnfq::SystemParams resolve() const {
        vnfq::SystemParams params = vnfq::load_config(config_path);
        if (p) params.p = *p;
        if (alpha) params.alpha = *alpha;
        for (int i = 0; i < 6; ++i) {
            if (mu[i]) params.mu[i] = *mu[i];
        }
        for (int i = 0; i < 5; ++i) {
            if (buffer[i]) params.buffer[i] = *buffer[i];
        }
        return vnfq::validate(params);
    }
};

void metrics_header(Csv& csv) {
    for (const auto& c : param_header()) csv.header.push_back(c);
    for (int i = 1; i <= 5; ++i) csv.header.push_back("drop" + std::to_string(i));
    csv.header.push_back("drop_total");
    for (int i = 1; i <= 6; ++i) csv.header.push_back("qbar" + std::to_string(i));
    csv.header.insert(csv.header.end(), {"qbar_total", "throughput", "delay"});
}

void metrics_cells(std::vector<std::string>& row, const vnfq::SystemMetrics& m) {
    for (double d : m.drop_per_queue) row.push_back(fmt(d));
    row.push_back(fmt(m.drop_total));
    for (double q : m.mean_finite) row.push_back(fmt(q));
    row.push_back(fmt(m.mean_q6));
    row.push_back(fmt(m.mean_total));
    row.push_back(fmt(m.throughput));
    row.push_back(fmt(m.delay));
}

void print_metrics_block(std::ostream& out, const char* source,
                         const vnfq::SystemParams& params, const vnfq::SystemMetrics& m) {
    out << source << " metrics (p=" << fmt(params.p) << ", alpha=" << fmt(params.alpha)
        << ")\n";
    out << "  queue     drop/slot      mean length\n";
    for (int i = 0; i < 5; ++i) {
        out << "  Q" << (i + 1) << "        " << fmt(m.drop_per_queue[i]) << "\t"
            << fmt(m.mean_finite[i]) << "\n";
    }
    out << "  Q6        -\t" << (m.mean_q6 ? fmt(*m.mean_q6) : "unavailable (Q6 unstable)")
        << "\n";
    out << "  P_D (dropped tasks/slot):  " << fmt(m.drop_total) << "\n";
    out << "  Qbar (tasks in system):    "
        << (m.mean_total ? fmt(*m.mean_total) : "unavailable (Q6 unstable)") << "\n";
    out << "  throughput (derived):      " << fmt(m.throughput) << "\n";
    out << "  delay (derived, Little):   " << (m.delay ? fmt(*m.delay) : "unavailable")
        << "\n";
    out << "  (throughput/delay are derived; delay counts in-network time Q1..Q6 only)\n";
}

int cmd_analyze(const ParamArgs& args, const std::string& out_path) {
    const vnfq::SystemParams params = args.resolve();
    const vnfq::AnalysisResult result = vnfq::analyze(params);

    std::ostream& out = std::cout;
    print_metrics_block(out, "analytical", params, result.metrics);
    out << "  effective rates: lambda1=" << fmt(result.rates.lambda1)
        << " lambda2=" << fmt(result.rates.lambda2)
        << " lambda3=" << fmt(result.rates.lambda3)
        << " lambda4=" << fmt(result.rates.lambda4)
        << " lambda5=" << fmt(result.rates.lambda5) << "\n";
    out << "  Q6 feed: lambda62=" << fmt(result.rates.lambda62)
        << " lambda65=" << fmt(result.rates.lambda65)
        << " lambda6=" << fmt(result.rates.lambda6) << " mu6=" << fmt(params.mu[5]) << "\n";
    if (!result.q6_stable) {
        out << "  UNSTABLE: lambda6 = " << fmt(result.rates.lambda6)
            << " >= mu6 = " << fmt(params.mu[5])
            << "; Q6 mean, total mean and delay withheld\n";
    }

    if (!out_path.empty()) {
        Csv csv;
        csv.comments.push_back("# kind: analyze");
        csv.comments.push_back(kDerivedNote);
        metrics_header(csv);
        csv.header.insert(csv.header.end(),
                          {"lambda2", "lambda4", "lambda5", "lambda62", "lambda65", "lambda6",
                           "q6_stable"});
        std::vector<std::string> row = param_cells(params);
        metrics_cells(row, result.metrics);
        row.insert(row.end(),
                   {fmt(result.rates.lambda2), fmt(result.rates.lambda4),
                    fmt(result.rates.lambda5), fmt(result.rates.lambda62),
                    fmt(result.rates.lambda65), fmt(result.rates.lambda6),
                    result.q6_stable ? "1" : "0"});
        csv.rows.push_back(std::move(row));
        csv.deliver(out_path);
    }
    return result.q6_stable ? kExitOk : kExitModel;
}

int cmd_simulate(const ParamArgs& args, const vnfq::SimConfig& cfg, int runs, int jobs,
                 const std::string& out_path) {
    const vnfq::SystemParams params = args.resolve();

    Csv csv;
    csv.comments.push_back("# kind: simulate");
    csv.comments.push_back(std::string("# rng: ") + vnfq::SimRng::kIdentifier);
    csv.comments.push_back("# seed: " + std::to_string(cfg.seed));
    csv.comments.push_back("# slots: " + std::to_string(cfg.slots) +
                           ", warmup: " + std::to_string(cfg.warmup));
    csv.comments.push_back(kDerivedNote);

    if (runs == 1) {
        const vnfq::SimResult result = vnfq::simulate(params, cfg);
        print_metrics_block(std::cout, "simulated", params, result.metrics);
        std::cout << "  slots=" << cfg.slots << " warmup=" << cfg.warmup
                  << " seed=" << cfg.seed << " rng=" << result.rng_id << "\n"
                  << "  conservation residual: " << result.conservation_residual() << "\n";
        metrics_header(csv);
        csv.header.insert(csv.header.end(), {"slots", "warmup", "seed", "rng"});
        std::vector<std::string> row = param_cells(params);
        metrics_cells(row, result.metrics);
        row.insert(row.end(), {std::to_string(cfg.slots), std::to_string(cfg.warmup),
                               std::to_string(cfg.seed), result.rng_id});
        csv.rows.push_back(std::move(row));
    } else {
        const vnfq::ReplicateResult result = vnfq::replicate(params, cfg, runs, jobs);
        print_metrics_block(std::cout, "simulated (mean over runs)", params, result.mean);
        std::cout << "  runs=" << runs << " P_D stddev=" << fmt(result.stddev.drop_total)
                  << "\n";
        for (const auto& c : param_header()) csv.header.push_back(c);
        csv.header.insert(csv.header.end(),
                          {"runs", "slots", "warmup", "seed", "rng",
                           "drop_total_mean", "drop_total_std", "qbar_total_mean",
                           "qbar_total_std", "throughput_mean", "throughput_std",
                           "delay_mean", "delay_std"});
        std::vector<std::string> row = param_cells(params);
        row.insert(row.end(),
                   {std::to_string(runs), std::to_string(cfg.slots),
                    std::to_string(cfg.warmup), std::to_string(cfg.seed),
                    vnfq::SimRng::kIdentifier, fmt(result.mean.drop_total),
                    fmt(result.stddev.drop_total), fmt(result.mean.mean_total),
                    fmt(result.stddev.mean_total), fmt(result.mean.throughput),
                    fmt(result.stddev.throughput), fmt(result.mean.delay),
                    fmt(result.stddev.delay)});
        csv.rows.push_back(std::move(row));
    }
    csv.deliver(out_path);
    return kExitOk;
}

int cmd_compare(const ParamArgs& args, const std::vector<double>& alphas,
                const vnfq::SimConfig& cfg, const std::string& out_path) {
    if (alphas.empty()) throw CLI::ValidationError("--alphas", "at least one alpha required");
    const vnfq::SystemParams base = args.resolve();

    Csv csv;
    csv.comments.push_back("# kind: compare");
    csv.comments.push_back(std::string("# rng: ") + vnfq::SimRng::kIdentifier);
    csv.comments.push_back("# seed: " + std::to_string(cfg.seed));
    csv.comments.push_back("# slots: " + std::to_string(cfg.slots) +
                           ", warmup: " + std::to_string(cfg.warmup));
    for (const auto& c : param_header()) csv.header.push_back(c);
    csv.header.insert(csv.header.end(),
                      {"pd_ana", "pd_sim", "qbar_ana", "qbar_sim", "pd_abs_err", "pd_rel_err",
                       "qbar_abs_err", "qbar_rel_err"});

    bool all_stable = true;
    for (double alpha : alphas) {
        vnfq::SystemParams params = base;
        params.alpha = alpha;
        const vnfq::AnalysisResult ana = vnfq::analyze(params);
        const vnfq::SimResult sim = vnfq::simulate(params, cfg);
        all_stable = all_stable && ana.q6_stable;

        const double pd_err = ana.metrics.drop_total - sim.metrics.drop_total;
        std::vector<std::string> row = param_cells(params);
        row.push_back(fmt(ana.metrics.drop_total));
        row.push_back(fmt(sim.metrics.drop_total));
        row.push_back(fmt(ana.metrics.mean_total));
        row.push_back(fmt(sim.metrics.mean_total));
        row.push_back(fmt(std::abs(pd_err)));
        row.push_back(sim.metrics.drop_total > 0.0
                          ? fmt(std::abs(pd_err) / sim.metrics.drop_total)
                          : "");
        if (ana.metrics.mean_total && sim.metrics.mean_total) {
            const double q_err = *ana.metrics.mean_total - *sim.metrics.mean_total;
            row.push_back(fmt(std::abs(q_err)));
            row.push_back(*sim.metrics.mean_total > 0.0
                              ? fmt(std::abs(q_err) / *sim.metrics.mean_total)
                              : "");
        } else {
            row.push_back("");
            row.push_back("");
        }
        csv.rows.push_back(std::move(row));
    }
    csv.deliver(out_path);
    return all_stable ? kExitOk : kExitModel;
}

int cmd_sweep(const ParamArgs& args, double step, const std::string& objective_name,
              double weight, const std::vector<double>& mu1_list,
              const std::vector<double>& mu2_list, int jobs, const std::string& out_path) {
    const vnfq::SystemParams base = args.resolve();
    const vnfq::Objective objective = vnfq::objective_from_string(objective_name);

    Csv csv;
    if (!mu1_list.empty() || !mu2_list.empty()) {
        // Optimal-alpha map over a (mu1, mu2) grid.
        if (mu1_list.empty() || mu2_list.empty()) {
            throw CLI::ValidationError("--mu1-list/--mu2-list",
                                       "both lists are required for a map sweep");
        }
        const auto map = vnfq::optimal_alpha_map(mu1_list, mu2_list, base, step, objective,
                                                 weight, jobs);
        csv.comments.push_back("# kind: sweep-map, objective: " + objective_name);
        csv.comments.push_back("# base params below; mu1, mu2 vary per row");
        for (const auto& c : param_header()) csv.header.push_back(c);
        csv.header.insert(csv.header.end(), {"alpha_opt", "objective_value"});
        for (const auto& cell : map) {
            vnfq::SystemParams params = base;
            params.mu[0] = cell.mu1;
            params.mu[1] = cell.mu2;
            params.alpha = cell.best_alpha;
            std::vector<std::string> row = param_cells(params);
            row.push_back(fmt(cell.best_alpha));
            row.push_back(fmt(cell.best_objective));
            csv.rows.push_back(std::move(row));
        }
        csv.deliver(out_path);
        return kExitOk;
    }

    const vnfq::SweepResult sweep = vnfq::sweep_alpha(base, step, objective, weight, jobs);
    csv.comments.push_back("# kind: sweep, objective: " + objective_name);
    csv.comments.push_back(kDerivedNote);
    for (const auto& c : param_header()) csv.header.push_back(c);
    csv.header.insert(csv.header.end(),
                      {"pd", "qbar", "objective_value", "q6_stable", "is_argmin"});
    for (std::size_t i = 0; i < sweep.points.size(); ++i) {
        const auto& point = sweep.points[i];
        vnfq::SystemParams params = base;
        params.alpha = point.alpha;
        std::vector<std::string> row = param_cells(params);
        row.push_back(fmt(point.analysis.metrics.drop_total));
        row.push_back(fmt(point.analysis.metrics.mean_total));
        row.push_back(fmt(point.objective));
        row.push_back(point.analysis.q6_stable ? "1" : "0");
        row.push_back(sweep.argmin == i ? "1" : "0");
        csv.rows.push_back(std::move(row));
    }
    std::cout << "optimal alpha = " << fmt(sweep.best_alpha()) << " with " << objective_name
              << " = " << fmt(*sweep.points[*sweep.argmin].objective) << "\n";
    csv.deliver(out_path);
    return kExitOk;
}

int cmd_region(const ParamArgs& args, const std::vector<double>& mu_list,
               const std::vector<int>& cap_list, int jobs, const std::string& out_path) {
    if (mu_list.empty() || cap_list.empty()) {
        throw CLI::ValidationError("--mu-list/--M-list", "both lists are required");
    }
    const vnfq::SystemParams base = args.resolve();
    const auto region = vnfq::performance_region(mu_list, cap_list, base, jobs);

    Csv csv;
    csv.comments.push_back("# kind: region");
    csv.comments.push_back(kDerivedNote);
    for (const auto& c : param_header()) csv.header.push_back(c);
    csv.header.insert(csv.header.end(), {"throughput", "delay", "pd", "q6_stable"});
    for (const auto& point : region) {
        vnfq::SystemParams params = base;
        for (int i = 0; i < 5; ++i) params.mu[i] = point.mu;
        for (int i = 0; i < 5; ++i) params.buffer[i] = point.cap;
        std::vector<std::string> row = param_cells(params);
        row.push_back(fmt(point.throughput));
        row.push_back(fmt(point.delay));
        row.push_back(fmt(point.drop_rate));
        row.push_back(point.stable ? "1" : "0");
        csv.rows.push_back(std::move(row));
    }
    csv.deliver(out_path);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"queueing analysis of a two-VNF edge-to-core service chain"};
    app.require_subcommand(1);

    std::string out_path;

    ParamArgs analyze_args;
    auto* analyze_cmd = app.add_subcommand("analyze", "analytical metrics for one config");
    analyze_args.attach(analyze_cmd);
    analyze_cmd->add_option("--out", out_path, "CSV output path");

    ParamArgs sim_args;
    vnfq::SimConfig sim_cfg;
    int sim_runs = 1, sim_jobs = 1;
    auto* sim_cmd = app.add_subcommand("simulate", "slot-level simulation");
    sim_args.attach(sim_cmd);
    sim_cmd->add_option("--slots", sim_cfg.slots, "timeslots per run");
    sim_cmd->add_option("--warmup", sim_cfg.warmup, "slots excluded from statistics");
    sim_cmd->add_option("--seed", sim_cfg.seed, "base RNG seed");
    sim_cmd->add_option("--q6-cap", sim_cfg.q6_cap, "cap Q6 occupancy (0 = unbounded)");
    sim_cmd->add_option("--runs", sim_runs, "independent replications");
    sim_cmd->add_option("--jobs", sim_jobs, "parallel workers for replications");
    sim_cmd->add_option("--out", out_path, "CSV output path");

    ParamArgs compare_args;
    vnfq::SimConfig compare_cfg;
    std::vector<double> compare_alphas;
    auto* compare_cmd =
        app.add_subcommand("compare", "analytical vs simulated metrics over alphas");
    compare_args.attach(compare_cmd);
    compare_cmd->add_option("--alphas", compare_alphas, "alpha values")
        ->delimiter(',')
        ->required();
    compare_cmd->add_option("--slots", compare_cfg.slots, "timeslots per run");
    compare_cmd->add_option("--warmup", compare_cfg.warmup, "warmup slots");
    compare_cmd->add_option("--seed", compare_cfg.seed, "RNG seed");
    compare_cmd->add_option("--out", out_path, "CSV output path");

    ParamArgs sweep_args;
    double sweep_step = 0.01, sweep_weight = 0.5;
    std::string sweep_objective = "drop";
    std::vector<double> sweep_mu1, sweep_mu2;
    int sweep_jobs = 1;
    auto* sweep_cmd = app.add_subcommand("sweep", "brute-force alpha sweep (or mu1/mu2 map)");
    sweep_args.attach(sweep_cmd);
    sweep_cmd->add_option("--step", sweep_step, "alpha grid step");
    sweep_cmd->add_option("--objective", sweep_objective, "drop | tasks | weighted");
    sweep_cmd->add_option("--weight", sweep_weight, "weight for the weighted objective");
    sweep_cmd->add_option("--mu1-list", sweep_mu1, "map mode: mu1 grid")->delimiter(',');
    sweep_cmd->add_option("--mu2-list", sweep_mu2, "map mode: mu2 grid")->delimiter(',');
    sweep_cmd->add_option("--jobs", sweep_jobs, "parallel workers");
    sweep_cmd->add_option("--out", out_path, "CSV output path");

    ParamArgs region_args;
    std::vector<double> region_mu;
    std::vector<int> region_cap;
    int region_jobs = 1;
    auto* region_cmd =
        app.add_subcommand("region", "throughput/delay region over (mu, M) grid");
    region_args.attach(region_cmd);
    region_cmd->add_option("--mu-list", region_mu, "service rates for mu1..mu5")
        ->delimiter(',')
        ->required();
    region_cmd->add_option("--M-list", region_cap, "capacities for M1..M5")
        ->delimiter(',')
        ->required();
    region_cmd->add_option("--jobs", region_jobs, "parallel workers");
    region_cmd->add_option("--out", out_path, "CSV output path");

    try {
        app.parse(argc, argv);
        if (analyze_cmd->parsed()) return cmd_analyze(analyze_args, out_path);
        if (sim_cmd->parsed()) {
            return cmd_simulate(sim_args, sim_cfg, sim_runs, sim_jobs, out_path);
        }
        if (compare_cmd->parsed()) {
            return cmd_compare(compare_args, compare_alphas, compare_cfg, out_path);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(sweep_args, sweep_step, sweep_objective, sweep_weight, sweep_mu1,
                             sweep_mu2, sweep_jobs, out_path);
        }
        if (region_cmd->parsed()) {
            return cmd_region(region_args, region_mu, region_cap, region_jobs, out_path);
        }
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    } catch (const vnfq::UnstableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitModel;
    } catch (const vnfq::SolverError& e) {
        // Model-level conditions (e.g. every grid point unstable).
        std::cerr << "error: " << e.what() << "\n";
        return kExitModel;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
