"""Queueing analysis of a two-VNF edge-to-core service chain.

Analytical subsystem decomposition, an exact slot-level simulator, and
brute-force routing sweeps. The heavy lifting lives in the compiled
extension module; this package re-exports its public surface.
"""

from vnfq._vnfq import (  # noqa: F401
    RNG_ID,
    AnalysisResult,
    ConfigError,
    EffectiveRates,
    RegionPoint,
    ReplicateResult,
    SimConfig,
    SimResult,
    SolverError,
    SweepPoint,
    SweepResult,
    SystemMetrics,
    SystemParams,
    TradeoffPoint,
    UnstableError,
    ValidationError,
    analyze,
    bd_steady_state,
    format_config,
    load_config,
    parse_config,
    performance_region,
    q6_pi,
    replicate,
    simulate,
    sweep_alpha,
    tradeoff_curve,
    validate,
)

__all__ = [
    "RNG_ID",
    "AnalysisResult",
    "ConfigError",
    "EffectiveRates",
    "RegionPoint",
    "ReplicateResult",
    "SimConfig",
    "SimResult",
    "SolverError",
    "SweepPoint",
    "SweepResult",
    "SystemMetrics",
    "SystemParams",
    "TradeoffPoint",
    "UnstableError",
    "ValidationError",
    "analyze",
    "bd_steady_state",
    "format_config",
    "load_config",
    "parse_config",
    "performance_region",
    "q6_pi",
    "replicate",
    "simulate",
    "sweep_alpha",
    "tradeoff_curve",
    "validate",
]
