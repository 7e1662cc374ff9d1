"""Parameter sweeps and root-finding calibration of the geometric protocol.

The controlled phase is not assumed monotone in kappa: calibration first
scans the bracket on a fixed 200-point grid, keeps the sign-change interval
of the wrapped phase error nearest the seed, and then bisects. Everything
here is deterministic: identical inputs give bit-identical tables.
"""

import math
from dataclasses import dataclass

import numpy as np

from rydgate.analysis import (
    analyze_gate,
    controlled_phase,
    fidelity_cphase,
    phase_combination,
    phases_and_leakage,
)
from rydgate.propagation import sequence_unitary
from rydgate.protocols import (
    CZ_KAPPA_SEED,
    BlockadeProtocolParams,
    GeometricProtocolParams,
    blockade_pdp_sequence,
    geometric_sequence,
)
from rydgate.statespace import wrap_angle

#: Grid size of the pre-bisection scan in calibrate_kappa.
CALIBRATION_SCAN_POINTS = 200


class CalibrationError(RuntimeError):
    """Calibration could not bracket the target; ``scan`` holds (kappa, phi_c)."""

    def __init__(self, message, scan):
        super().__init__(message)
        self.scan = scan


@dataclass(frozen=True)
class SweepRecord:
    """One kappa sample of the geometric protocol at fixed Omega."""

    kappa: float
    v_over_omega: float
    gate_time_omega_over_pi: float
    phi_c_wrapped: float
    phi_c_unwrapped: float
    leakage_max: float
    fidelity_cz: float


@dataclass(frozen=True)
class CalibrationResult:
    """Calibrated ratio kappa* and the gate report at that point."""

    kappa_star: float
    report: object
    scan: tuple


@dataclass(frozen=True)
class BlockadeScanRecord:
    """Blockade protocol characterization at one interaction strength."""

    v: float
    v_over_omega: float
    report: object


def _propagate_geometric(kappa, omega):
    seq = geometric_sequence(GeometricProtocolParams.from_omega(kappa, omega))
    u = sequence_unitary(seq)
    return seq, u, phases_and_leakage(u)


def sweep_kappa(k_min, k_max, n, omega=1.0):
    """Characterize the geometric protocol on n uniformly spaced kappa values.

    Fidelity is measured against a CZ gate (target phase pi). Records come
    back ordered by kappa.
    """
    if not (0 < k_min < k_max):
        raise ValueError(f"need 0 < k_min < k_max, got ({k_min}, {k_max})")
    if n < 2:
        raise ValueError(f"need at least 2 sweep points, got {n}")
    records = []
    for kappa in np.linspace(k_min, k_max, int(n)):
        kappa = float(kappa)
        seq, u, extraction = _propagate_geometric(kappa, omega)
        records.append(
            SweepRecord(
                kappa=kappa,
                v_over_omega=1.0 / kappa,
                gate_time_omega_over_pi=seq.total_duration * omega / math.pi,
                phi_c_wrapped=controlled_phase(extraction.phases),
                phi_c_unwrapped=phase_combination(extraction.phases),
                leakage_max=extraction.leakage_max,
                fidelity_cz=fidelity_cphase(u, math.pi),
            )
        )
    return records


def _phase_error(kappa, omega, target_phi):
    _, _, extraction = _propagate_geometric(kappa, omega)
    return wrap_angle(controlled_phase(extraction.phases) - target_phi)


def calibrate_kappa(target_phi, bracket, omega=1.0, seed_kappa=CZ_KAPPA_SEED, tol=1e-6):
    """Find kappa* where the geometric protocol's controlled phase hits target.

    A 200-point scan over ``bracket`` locates sign changes of the wrapped
    error wrap(phi_c(kappa) - target); intervals whose endpoints differ by
    more than pi are branch-cut jumps and are skipped. The admissible
    interval nearest ``seed_kappa`` is bisected down to width 1e-10, which
    leaves the wrapped error far below ``tol``.

    Raises
    ------
    CalibrationError
        If no admissible sign change exists in the bracket; the scanned
        (kappa, wrapped phi_c) table is attached for diagnosis.
    """
    k_lo, k_hi = bracket
    if not (0 < k_lo < k_hi):
        raise ValueError(f"need 0 < k_lo < k_hi, got {bracket}")
    kappas = np.linspace(k_lo, k_hi, CALIBRATION_SCAN_POINTS)
    errors = [_phase_error(float(k), omega, target_phi) for k in kappas]
    scan = tuple(
        (float(k), wrap_angle(e + target_phi)) for k, e in zip(kappas, errors)
    )

    candidates = []
    for i in range(len(kappas) - 1):
        e0, e1 = errors[i], errors[i + 1]
        if e0 == 0.0:
            candidates.append((float(kappas[i]), float(kappas[i])))
        elif e0 * e1 < 0 and abs(e1 - e0) < math.pi:
            candidates.append((float(kappas[i]), float(kappas[i + 1])))
    if errors[-1] == 0.0:
        candidates.append((float(kappas[-1]), float(kappas[-1])))
    if not candidates:
        raise CalibrationError(
            f"no sign change of the wrapped phase error in bracket ({k_lo}, {k_hi}) "
            f"for target {target_phi:.6f} rad",
            scan=scan,
        )
    lo, hi = min(candidates, key=lambda c: abs(0.5 * (c[0] + c[1]) - seed_kappa))

    if lo != hi:
        e_lo = _phase_error(lo, omega, target_phi)
        while hi - lo > 1e-10:
            mid = 0.5 * (lo + hi)
            e_mid = _phase_error(mid, omega, target_phi)
            if e_mid == 0.0:
                lo = hi = mid
                break
            if (e_mid < 0) == (e_lo < 0):
                lo, e_lo = mid, e_mid
            else:
                hi = mid
    kappa_star = 0.5 * (lo + hi)

    residual = _phase_error(kappa_star, omega, target_phi)
    if abs(residual) > tol:
        raise CalibrationError(
            f"bisection stalled: |wrapped error| = {abs(residual):.3e} > {tol:g} "
            f"at kappa = {kappa_star}",
            scan=scan,
        )
    seq = geometric_sequence(GeometricProtocolParams.from_omega(kappa_star, omega))
    report = analyze_gate(seq, target_phi=target_phi)
    return CalibrationResult(kappa_star=kappa_star, report=report, scan=scan)


def blockade_invariance_scan(omega, v_values):
    """Characterize the blockade protocol at fixed Omega for each V.

    The schedule never changes with V, so the gate-time column is constant
    by construction; phases, leakage and CZ fidelity expose the blockade
    error, whose infidelity shrinks roughly fourfold per doubling of V.
    All V must be at least 10*Omega; below that the pi-2pi-pi analysis does
    not apply.
    """
    records = []
    for v in v_values:
        if v < 10 * omega:
            raise ValueError(f"blockade scan requires V >= 10*Omega, got V={v}, Omega={omega}")
        seq = blockade_pdp_sequence(BlockadeProtocolParams(rabi=omega, v=v))
        report = analyze_gate(seq, target_phi=math.pi)
        records.append(BlockadeScanRecord(v=float(v), v_over_omega=float(v) / omega, report=report))
    return records
