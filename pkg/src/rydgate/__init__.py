"""rydgate: two-atom Rydberg gate simulator and calibration toolkit.

Simulates controlled-phase gates on two three-level atoms (|0>, |1>, |r>),
covering both the strong-blockade pi-2pi-pi protocol and the four-segment
phase-toggled protocol that works at weak interaction strength, plus gate
characterization (phases, leakage, fidelity), kappa calibration, parameter
sweeps and Monte-Carlo robustness statistics.
"""

from rydgate._kernels import BACKEND
from rydgate.analysis import (
    GateReport,
    analyze_gate,
    controlled_phase,
    fidelity_cphase,
    phases_and_leakage,
    pulse_area,
    rydberg_time,
)
from rydgate.calibration import (
    CalibrationError,
    CalibrationResult,
    SweepRecord,
    blockade_invariance_scan,
    calibrate_kappa,
    sweep_kappa,
)
from rydgate.hamiltonians import (
    CouplingKind,
    CouplingSpec,
    DriveParams,
    RydbergParams,
    h_block_01,
    h_block_11,
    h_blockade_eff,
    h_direct,
    h_full,
)
from rydgate.propagation import (
    ConvergenceError,
    PulseSegment,
    PulseSequence,
    SampledControls,
    sampled_unitary,
    segment_unitary,
    sequence_unitary,
)
from rydgate.protocols import (
    BlockadeProtocolParams,
    GeometricProtocolParams,
    blockade_pdp_sequence,
    gate_time_blockade,
    gate_time_geometric,
    geometric_sequence,
)
from rydgate.robustness import (
    FidelityStats,
    NoiseModel,
    monte_carlo_fidelity,
    v_of_spacing,
)
from rydgate.statespace import Level, basis_index, basis_state, expm_hermitian, kron

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BlockadeProtocolParams",
    "CalibrationError",
    "CalibrationResult",
    "ConvergenceError",
    "CouplingKind",
    "CouplingSpec",
    "DriveParams",
    "FidelityStats",
    "GateReport",
    "GeometricProtocolParams",
    "Level",
    "NoiseModel",
    "PulseSegment",
    "PulseSequence",
    "RydbergParams",
    "SampledControls",
    "SweepRecord",
    "analyze_gate",
    "basis_index",
    "basis_state",
    "blockade_invariance_scan",
    "blockade_pdp_sequence",
    "calibrate_kappa",
    "controlled_phase",
    "expm_hermitian",
    "fidelity_cphase",
    "gate_time_blockade",
    "gate_time_geometric",
    "geometric_sequence",
    "h_block_01",
    "h_block_11",
    "h_blockade_eff",
    "h_direct",
    "h_full",
    "kron",
    "monte_carlo_fidelity",
    "phases_and_leakage",
    "pulse_area",
    "rydberg_time",
    "sampled_unitary",
    "segment_unitary",
    "sequence_unitary",
    "sweep_kappa",
    "v_of_spacing",
]
