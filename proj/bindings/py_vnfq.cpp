// Python bindings for the vnfq core: analysis, simulation and sweeps.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "vnfq/birth_death.hpp"
#include "vnfq/config.hpp"
#include "vnfq/infinite_chain.hpp"
#include "vnfq/optimizer.hpp"
#include "vnfq/pipeline.hpp"
#include "vnfq/simulator.hpp"

namespace py = pybind11;
using namespace vnfq;

namespace {

std::vector<double> to_vector(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

SystemParams make_params(double p, double alpha, const std::array<double, 6>& mu,
                         const std::array<int, 5>& buffer) {
    SystemParams params;
    params.p = p;
    params.alpha = alpha;
    params.mu = mu;
    params.buffer = buffer;
    return validate(params);
}

std::string params_repr(const SystemParams& params) {
    std::ostringstream out;
    out << "SystemParams(p=" << format_double(params.p)
        << ", alpha=" << format_double(params.alpha) << ", mu=[";
    for (int i = 0; i < 6; ++i) out << (i ? ", " : "") << format_double(params.mu[i]);
    out << "], M=[";
    for (int i = 0; i < 5; ++i) out << (i ? ", " : "") << params.buffer[i];
    out << "])";
    return out.str();
}

} // namespace

PYBIND11_MODULE(_vnfq, m) {
    m.doc() = "Queueing analysis of a two-VNF edge-to-core service chain";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<UnstableError>(m, "UnstableError", PyExc_RuntimeError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init(&make_params), py::arg("p"), py::arg("alpha"), py::arg("mu"),
             py::arg("M"))
        .def_readwrite("p", &SystemParams::p)
        .def_readwrite("alpha", &SystemParams::alpha)
        .def_readwrite("mu", &SystemParams::mu)
        .def_readwrite("M", &SystemParams::buffer)
        .def("__repr__", &params_repr);

    m.def("validate", &validate, py::arg("params"),
          "Check all parameter invariants; raises ValidationError on the first violation.");
    m.def("load_config", &load_config, py::arg("path"));
    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("format_config", &format_config, py::arg("params"));

    py::class_<SystemMetrics>(m, "SystemMetrics")
        .def_readonly("drop_per_queue", &SystemMetrics::drop_per_queue)
        .def_readonly("drop_total", &SystemMetrics::drop_total)
        .def_readonly("mean_finite", &SystemMetrics::mean_finite)
        .def_readonly("mean_q6", &SystemMetrics::mean_q6)
        .def_readonly("mean_total", &SystemMetrics::mean_total)
        .def_readonly("throughput", &SystemMetrics::throughput)
        .def_readonly("delay", &SystemMetrics::delay);

    py::class_<EffectiveRates>(m, "EffectiveRates")
        .def_readonly("lambda1", &EffectiveRates::lambda1)
        .def_readonly("lambda2", &EffectiveRates::lambda2)
        .def_readonly("lambda3", &EffectiveRates::lambda3)
        .def_readonly("lambda4", &EffectiveRates::lambda4)
        .def_readonly("lambda5", &EffectiveRates::lambda5)
        .def_readonly("lambda62", &EffectiveRates::lambda62)
        .def_readonly("lambda65", &EffectiveRates::lambda65)
        .def_readonly("lambda6", &EffectiveRates::lambda6);

    py::class_<AnalysisResult>(m, "AnalysisResult")
        .def_readonly("params", &AnalysisResult::params)
        .def_readonly("rates", &AnalysisResult::rates)
        .def_readonly("q6_stable", &AnalysisResult::q6_stable)
        .def_readonly("metrics", &AnalysisResult::metrics)
        .def_property_readonly(
            "pi1", [](const AnalysisResult& r) { return to_vector(r.pi1.pi); },
            "Joint (Q1, Q2) stationary vector, level-major")
        .def_property_readonly(
            "pi2", [](const AnalysisResult& r) { return to_vector(r.pi2.pi); })
        .def_property_readonly(
            "pi3", [](const AnalysisResult& r) { return to_vector(r.pi3); });

    m.def("analyze", &analyze, py::arg("params"),
          "End-to-end analytical evaluation via subsystem decomposition.");

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init([](std::int64_t slots, std::int64_t warmup, std::uint64_t seed,
                         std::int64_t q6_cap) {
                 return SimConfig{slots, warmup, seed, q6_cap};
             }),
             py::arg("slots") = 1'000'000, py::arg("warmup") = 10'000,
             py::arg("seed") = 12345, py::arg("q6_cap") = 0)
        .def_readwrite("slots", &SimConfig::slots)
        .def_readwrite("warmup", &SimConfig::warmup)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("q6_cap", &SimConfig::q6_cap);

    py::class_<SimResult>(m, "SimResult")
        .def_readonly("params", &SimResult::params)
        .def_readonly("metrics", &SimResult::metrics)
        .def_readonly("rng_id", &SimResult::rng_id)
        .def_readonly("stream_seed", &SimResult::stream_seed)
        .def_readonly("final_occupancy", &SimResult::final_occupancy)
        .def_readonly("mean_occupancy", &SimResult::mean_occupancy)
        .def_readonly("window_slots", &SimResult::window_slots)
        .def_property_readonly(
            "external_arrivals",
            [](const SimResult& r) { return r.totals.external_arrivals; })
        .def_property_readonly(
            "dropped", [](const SimResult& r) { return r.totals.dropped; })
        .def_property_readonly(
            "departed", [](const SimResult& r) { return r.totals.departed; })
        .def("conservation_residual", &SimResult::conservation_residual);

    m.def(
        "simulate",
        [](const SystemParams& params, std::int64_t slots, std::int64_t warmup,
           std::uint64_t seed, std::int64_t q6_cap) {
            return simulate(params, SimConfig{slots, warmup, seed, q6_cap});
        },
        py::arg("params"), py::arg("slots") = 1'000'000, py::arg("warmup") = 10'000,
        py::arg("seed") = 12345, py::arg("q6_cap") = 0,
        py::call_guard<py::gil_scoped_release>(),
        "Slot-level simulation of the full six-queue system.");

    py::class_<ReplicateResult>(m, "ReplicateResult")
        .def_readonly("runs", &ReplicateResult::runs)
        .def_readonly("mean", &ReplicateResult::mean)
        .def_readonly("stddev", &ReplicateResult::stddev);

    m.def(
        "replicate",
        [](const SystemParams& params, int n_runs, std::int64_t slots, std::int64_t warmup,
           std::uint64_t seed, int jobs) {
            return replicate(params, SimConfig{slots, warmup, seed, 0}, n_runs, jobs);
        },
        py::arg("params"), py::arg("n_runs"), py::arg("slots") = 1'000'000,
        py::arg("warmup") = 10'000, py::arg("seed") = 12345, py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>(),
        "Independently seeded replications with mean and sample stddev.");

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("alpha", &SweepPoint::alpha)
        .def_readonly("objective", &SweepPoint::objective)
        .def_property_readonly(
            "metrics", [](const SweepPoint& p) { return p.analysis.metrics; })
        .def_property_readonly(
            "q6_stable", [](const SweepPoint& p) { return p.analysis.q6_stable; });

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("points", &SweepResult::points)
        .def_property_readonly("best_alpha",
                               [](const SweepResult& r) { return r.best_alpha(); });

    m.def(
        "sweep_alpha",
        [](const SystemParams& params, double step, const std::string& objective,
           double weight, int jobs) {
            return sweep_alpha(params, step, objective_from_string(objective), weight, jobs);
        },
        py::arg("params"), py::arg("step") = 0.01, py::arg("objective") = "drop",
        py::arg("weight") = 0.5, py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>(),
        "Brute-force evaluation over the alpha grid {0, step, ..., 1}.");

    py::class_<TradeoffPoint>(m, "TradeoffPoint")
        .def_readonly("alpha", &TradeoffPoint::alpha)
        .def_readonly("drop_rate", &TradeoffPoint::drop_rate)
        .def_readonly("mean_tasks", &TradeoffPoint::mean_tasks)
        .def_readonly("pareto", &TradeoffPoint::pareto);

    m.def(
        "tradeoff_curve",
        [](const SystemParams& params, double step, int jobs) {
            return tradeoff_curve(params, step, jobs);
        },
        py::arg("params"), py::arg("step") = 0.01, py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>());

    py::class_<RegionPoint>(m, "RegionPoint")
        .def_readonly("mu", &RegionPoint::mu)
        .def_readonly("M", &RegionPoint::cap)
        .def_readonly("stable", &RegionPoint::stable)
        .def_readonly("drop_rate", &RegionPoint::drop_rate)
        .def_readonly("throughput", &RegionPoint::throughput)
        .def_readonly("delay", &RegionPoint::delay);

    m.def(
        "performance_region",
        [](const std::vector<double>& mus, const std::vector<int>& caps,
           const SystemParams& params, int jobs) {
            return performance_region(mus, caps, params, jobs);
        },
        py::arg("mu_values"), py::arg("M_values"), py::arg("params"), py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>());

    // Low-level pieces, mainly for cross-checking from python.
    m.def("bd_steady_state", [](double lam, double mu, int cap) {
        return to_vector(bd_steady_state({lam, mu, cap}));
    });
    m.def("q6_pi", [](double l62, double l65, double mu6, int count) {
        const Q6Solution sol = solve_ztransform(hessenberg_coefficients({l62, l65, mu6}));
        std::vector<double> out(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = sol.evaluate(i);
        return out;
    });

    m.attr("RNG_ID") = SimRng::kIdentifier;
}
