"""Damping simulations with and without error correction, and ESD solvers.

The coded path runs on the full eight-qubit register: encode, damp every
physical qubit, recover each block, decode.  Because every stage acts on one
block at a time, the same map also factorises into a single-block logical
channel applied to each qubit; :func:`logical_channel` builds that channel
and is used as a cross-check and for fast sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .channels import apply_independent
from .code41 import CODE, FourQubitCode
from .errors import NumericalError
from .metrics import MetricResult, concurrence, fidelity
from .qlinalg import apply_kraus, projector
from .states import StateFamily, make_uncoded

ZERO_CONCURRENCE = 1e-9
DEFAULT_STEPS = 201
TRACE_TOL = 1e-10


@dataclass(frozen=True)
class SimResult:
    """Metrics at one damping value; ``None`` marks a path that was not run."""

    gamma: float
    fidelity_uncoded: float | None = None
    concurrence_uncoded: float | None = None
    fidelity_coded: float | None = None
    concurrence_coded: float | None = None


@dataclass(frozen=True)
class EsdReport:
    family: str
    alpha: float
    beta: float
    gamma_star_uncoded: float | None
    gamma_star_coded: float | None
    crossover_gamma: float | None


def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"damping probability must lie in [0, 1], got {gamma}")
    return gamma


def _check_trace(rho: np.ndarray, stage: str) -> np.ndarray:
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise NumericalError(f"trace {tr!r} after {stage}")
    return rho


def uncoded_state(spec: StateFamily, gamma: float, backend: str | None = None) -> np.ndarray:
    """Two-qubit density matrix after damping both qubits."""
    gamma = _check_gamma(gamma)
    rho = projector(make_uncoded(spec))
    return _check_trace(apply_independent(gamma, rho, backend=backend), "damping")


def coded_state(
    spec: StateFamily,
    gamma: float,
    recover: bool = True,
    code: FourQubitCode = CODE,
    backend: str | None = None,
) -> np.ndarray:
    """Decoded two-qubit density matrix after encode, damp, recover.

    With ``recover=False`` the recovery stage is skipped, which only decodes
    cleanly when nothing has left the code space (``gamma = 0``).
    """
    gamma = _check_gamma(gamma)
    psi = code.encode_two_qubits(make_uncoded(spec))
    rho = _check_trace(projector(psi), "encoding")
    rho = _check_trace(apply_independent(gamma, rho, backend=backend), "damping")
    if recover:
        rho = _check_trace(code.recover_block(rho, 1, backend=backend), "recovery of block 1")
        rho = _check_trace(code.recover_block(rho, 2, backend=backend), "recovery of block 2")
    return _check_trace(code.decode(rho, backend=backend), "decoding")


def run_uncoded(spec: StateFamily, gamma: float, backend: str | None = None) -> MetricResult:
    rho = uncoded_state(spec, gamma, backend=backend)
    return MetricResult(fidelity(make_uncoded(spec), rho), concurrence(rho))


def run_coded(
    spec: StateFamily,
    gamma: float,
    recover: bool = True,
    code: FourQubitCode = CODE,
    backend: str | None = None,
) -> MetricResult:
    rho = coded_state(spec, gamma, recover=recover, code=code, backend=backend)
    return MetricResult(fidelity(make_uncoded(spec), rho), concurrence(rho))


def logical_channel(gamma: float, code: FourQubitCode = CODE) -> np.ndarray:
    """Single-block encode-damp-recover-decode map as a 4x4 superoperator.

    Acts on row-major vectorised 2x2 matrices: ``vec(out) = S @ vec(in)``.
    """
    gamma = _check_gamma(gamma)
    w = np.column_stack(code.codewords)
    d = code.isometry
    sup = np.zeros((4, 4), dtype=np.complex128)
    for a in range(2):
        for b in range(2):
            x = np.outer(w[:, a], w[:, b].conj())
            x = apply_independent(gamma, x)
            x = apply_kraus(x, code.recovery_kraus, 0)
            sup[:, 2 * a + b] = (d @ x @ d.conj().T).reshape(4)
    return sup


def coded_state_factorized(spec: StateFamily, gamma: float, code: FourQubitCode = CODE) -> np.ndarray:
    """Same result as :func:`coded_state` via the single-block logical channel."""
    s = logical_channel(gamma, code)
    rho = projector(make_uncoded(spec)).reshape(2, 2, 2, 2)  # (i, j, k, l) = <ij|rho|kl>
    s4 = s.reshape(2, 2, 2, 2)  # (a, c, i, k): out_ac <- in_ik
    out = np.einsum("acik,bdjl,ijkl->abcd", s4, s4, rho)
    return out.reshape(4, 4)


def _run(spec, gamma, coded, fast, backend):
    if not coded:
        return run_uncoded(spec, gamma, backend=backend)
    if fast:
        rho = coded_state_factorized(spec, gamma)
        return MetricResult(fidelity(make_uncoded(spec), rho), concurrence(rho))
    return run_coded(spec, gamma, backend=backend)


def gamma_grid(gamma_min: float = 0.0, gamma_max: float = 1.0, steps: int = DEFAULT_STEPS) -> np.ndarray:
    if steps < 1:
        raise ValueError(f"steps must be positive, got {steps}")
    if not 0.0 <= gamma_min <= gamma_max <= 1.0:
        raise ValueError(f"need 0 <= gamma_min <= gamma_max <= 1, got [{gamma_min}, {gamma_max}]")
    if gamma_min == gamma_max:
        return np.array([gamma_min])
    return np.linspace(gamma_min, gamma_max, steps)


def sweep(
    spec: StateFamily,
    gammas: Sequence[float],
    uncoded: bool = True,
    coded: bool = True,
    fast: bool = False,
    backend: str | None = None,
) -> list[SimResult]:
    """Evaluate the requested paths at each damping value, in the given order."""
    rows = []
    for g in gammas:
        g = float(g)
        fu = cu = fc = cc = None
        if uncoded:
            m = run_uncoded(spec, g, backend=backend)
            fu, cu = m.fidelity, m.concurrence
        if coded:
            m = _run(spec, g, True, fast, backend)
            fc, cc = m.fidelity, m.concurrence
        rows.append(SimResult(g, fu, cu, fc, cc))
    return rows


def concurrence_curve(spec: StateFamily, coded: bool, fast: bool = False) -> Callable[[float], float]:
    return lambda g: _run(spec, g, coded, fast, None).concurrence


def fidelity_curve(spec: StateFamily, coded: bool, fast: bool = False) -> Callable[[float], float]:
    return lambda g: _run(spec, g, coded, fast, None).fidelity


def esd_threshold(
    curve: Callable[[float], float],
    tol: float = 1e-6,
    steps: int = DEFAULT_STEPS,
    zero: float = ZERO_CONCURRENCE,
) -> float | None:
    """Damping from which the concurrence stays numerically zero up to 1.

    Scans a uniform grid on [0, 1] first, so a curve that dips to zero and
    revives is not mistaken for sudden death, then bisects the last
    transition to ``tol``.  Returns 0.0 for a curve that is zero throughout
    and None when entanglement survives up to ``1 - tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    grid = np.linspace(0.0, 1.0, steps)
    alive = np.array([curve(float(g)) >= zero for g in grid])
    if not alive.any():
        return 0.0
    last = int(np.flatnonzero(alive)[-1])
    if last == steps - 1:
        return None
    lo, hi = float(grid[last]), float(grid[last + 1])
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if curve(mid) >= zero:
            lo = mid
        else:
            hi = mid
    gstar = 0.5 * (lo + hi)
    return None if gstar > 1.0 - tol else gstar


def crossover(
    curve_a: Callable[[float], float],
    curve_b: Callable[[float], float],
    tol: float = 1e-6,
    steps: int = DEFAULT_STEPS,
    deadband: float = 1e-12,
) -> float | None:
    """Smallest positive damping where ``curve_a - curve_b`` changes sign.

    Differences within ``deadband`` of zero count as no sign; returns None
    if the difference never takes both signs on the grid.
    """
    grid = np.linspace(0.0, 1.0, steps)[1:]

    def sign(g):
        d = curve_a(g) - curve_b(g)
        return 0 if abs(d) <= deadband else (1 if d > 0 else -1)

    ref = 0
    prev = 0.0
    for g in grid:
        s = sign(float(g))
        if ref == 0:
            ref = s
        elif s == -ref:
            lo, hi = prev, float(g)
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                if sign(mid) == -ref:
                    hi = mid
                else:
                    lo = mid
            return 0.5 * (lo + hi)
        prev = float(g)
    return None


def esd_report(spec: StateFamily, tol: float = 1e-6, fast: bool = False) -> EsdReport:
    """Thresholds for the uncoded and coded states and their concurrence crossover."""
    unc = concurrence_curve(spec, coded=False)
    cod = concurrence_curve(spec, coded=True, fast=fast)
    return EsdReport(
        family=spec.family.value,
        alpha=spec.alpha,
        beta=spec.beta,
        gamma_star_uncoded=esd_threshold(unc, tol),
        gamma_star_coded=esd_threshold(cod, tol),
        crossover_gamma=crossover(cod, unc, tol),
    )
