"""The two controlled-phase gate protocols and their closed-form gate times.

Geometric weak-interaction protocol: both atoms driven symmetrically with
Omega = kappa*V and Delta = -V/2, in four equal segments of duration
T = 2*pi/sqrt(4*Omega^2 + V^2/4) whose laser phase toggles between 0 and
-pi/2. The toggle sign matters: with the drive convention
<1|H|r> = (Omega/2) e^{i phi}, toggling by -pi/2 places the pi controlled
phase at kappa ~ 1.65 (toggling by +pi/2 would put it near kappa ~ 1.33).

Blockade protocol: resonant pi pulse on atom 1, 2*pi pulse on atom 2, pi
pulse on atom 1, total 4*pi/Omega regardless of V.
"""

import math
from dataclasses import dataclass

from rydgate.hamiltonians import DriveParams, RydbergParams
from rydgate.propagation import PulseSegment, PulseSequence

#: Default calibration seed: ratio Omega/V at which the geometric protocol
#: realizes a controlled phase of magnitude pi.
CZ_KAPPA_SEED = 1.65

#: Laser phases of the four geometric-protocol segments.
GEOMETRIC_SEGMENT_PHASES = (0.0, -math.pi / 2, 0.0, -math.pi / 2)


@dataclass(frozen=True)
class GeometricProtocolParams:
    """Weak-interaction protocol parameters: kappa = Omega/V and V."""

    kappa: float
    v: float

    def __post_init__(self):
        if not (math.isfinite(self.kappa) and self.kappa > 0):
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        if not (math.isfinite(self.v) and self.v > 0):
            raise ValueError(f"v must be positive, got {self.v}")

    @classmethod
    def from_omega(cls, kappa, omega):
        """Build from (kappa, Omega) instead of (kappa, V)."""
        if not (math.isfinite(omega) and omega > 0):
            raise ValueError(f"omega must be positive, got {omega}")
        return cls(kappa=kappa, v=omega / kappa)

    @property
    def omega(self):
        return self.kappa * self.v

    @property
    def segment_duration(self):
        """One cyclic-evolution period 2*pi/sqrt(4*Omega^2 + V^2/4)."""
        return 2 * math.pi / math.hypot(2 * self.omega, self.v / 2)


@dataclass(frozen=True)
class BlockadeProtocolParams:
    """Blockade pi-2pi-pi protocol parameters (intended V >> Omega)."""

    rabi: float
    v: float

    def __post_init__(self):
        if not (math.isfinite(self.rabi) and self.rabi > 0):
            raise ValueError(f"rabi must be positive, got {self.rabi}")
        if not math.isfinite(self.v):
            raise ValueError(f"v must be finite, got {self.v}")


def geometric_sequence(params):
    """Four-segment phase-toggled schedule of the geometric protocol."""
    ryd = RydbergParams(params.v)
    t = params.segment_duration
    segments = tuple(
        PulseSegment(
            duration=t,
            drive1=DriveParams(params.omega, -params.v / 2, phase),
            drive2=DriveParams(params.omega, -params.v / 2, phase),
            ryd=ryd,
        )
        for phase in GEOMETRIC_SEGMENT_PHASES
    )
    return PulseSequence(segments)


def blockade_pdp_sequence(params):
    """Resonant pi (atom 1) - 2pi (atom 2) - pi (atom 1) schedule.

    The schedule itself is independent of V; the interaction only enters the
    Hamiltonian during propagation.
    """
    ryd = RydbergParams(params.v)
    drive = DriveParams(params.rabi, 0.0, 0.0)
    pi_time = math.pi / params.rabi
    return PulseSequence(
        (
            PulseSegment(duration=pi_time, drive1=drive, drive2=None, ryd=ryd),
            PulseSegment(duration=2 * pi_time, drive1=None, drive2=drive, ryd=ryd),
            PulseSegment(duration=pi_time, drive1=drive, drive2=None, ryd=ryd),
        )
    )


def gate_time_geometric(kappa, omega):
    """Total geometric-protocol duration 8*pi/(Omega*sqrt(4 + 1/(4*kappa^2))).

    Strictly increasing in kappa at fixed Omega: from 2*pi/Omega at
    kappa = 1/sqrt(48) up to 4*pi/Omega as kappa -> infinity (V -> 0).
    """
    if not (math.isfinite(kappa) and kappa > 0):
        raise ValueError(f"kappa must be positive, got {kappa}")
    if not (math.isfinite(omega) and omega > 0):
        raise ValueError(f"omega must be positive, got {omega}")
    return 8 * math.pi / (omega * math.sqrt(4 + 1 / (4 * kappa * kappa)))


def gate_time_blockade(omega):
    """Total blockade-protocol duration 4*pi/Omega, independent of V."""
    if not (math.isfinite(omega) and omega > 0):
        raise ValueError(f"omega must be positive, got {omega}")
    return 4 * math.pi / omega
