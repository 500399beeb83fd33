"""Accelerated qubit-qutrit simulation: decoherence, local quantum
uncertainty and bidirectional entropic steering over region I."""

from .linalg import (
    SpectralDecomposition,
    hermitian_eig,
    hermiticity_defect,
    kron,
    partial_trace,
    psd_sqrt,
)
from .measures import (
    Convention,
    DecoherenceReport,
    Direction,
    JointDistribution,
    LquReport,
    Observable,
    OverlapBound,
    STEERING_BOUNDS,
    SteeringBound,
    SteeringReport,
    conditional_entropy,
    decoherence_triple,
    joint_distribution,
    linear_entropy,
    lqu,
    overlap_bound,
    standard_observables,
    steerability,
    steering_closed,
    steering_report,
    steering_sum_oracle,
)
from .model import (
    BASIS_6,
    BASIS_8,
    BasisLabel,
    ModelParams,
    PAIR,
    R_MAX,
    RegionIState,
    Scenario,
    accelerate_closed,
    accelerate_oracle,
    as_printed_both_matrix,
    initial_state,
    label_text,
    pad_to_accelerated,
    reduce_qubit,
    reduce_qutrit,
)
from .sweep import (
    ConfigError,
    PRESET_NAMES,
    QUANTITIES,
    SweepConfig,
    SweepRecord,
    preset_config,
    run_sweep,
    write_output,
)

__version__ = "0.1.0"

__all__ = [
    "BASIS_6",
    "BASIS_8",
    "BasisLabel",
    "ConfigError",
    "Convention",
    "DecoherenceReport",
    "Direction",
    "JointDistribution",
    "LquReport",
    "ModelParams",
    "Observable",
    "OverlapBound",
    "PAIR",
    "PRESET_NAMES",
    "QUANTITIES",
    "R_MAX",
    "RegionIState",
    "STEERING_BOUNDS",
    "Scenario",
    "SpectralDecomposition",
    "SteeringBound",
    "SteeringReport",
    "SweepConfig",
    "SweepRecord",
    "accelerate_closed",
    "accelerate_oracle",
    "as_printed_both_matrix",
    "conditional_entropy",
    "decoherence_triple",
    "hermitian_eig",
    "hermiticity_defect",
    "initial_state",
    "joint_distribution",
    "kron",
    "label_text",
    "linear_entropy",
    "lqu",
    "overlap_bound",
    "pad_to_accelerated",
    "partial_trace",
    "preset_config",
    "psd_sqrt",
    "reduce_qubit",
    "reduce_qutrit",
    "run_sweep",
    "standard_observables",
    "steerability",
    "steering_closed",
    "steering_report",
    "steering_sum_oracle",
    "write_output",
]
