"""Fidelity to a pure reference and two-qubit concurrence."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .qlinalg import eigvals_4x4

DUST = 1e-10

_SY = np.array([[0, -1j], [1j, 0]])
SPIN_FLIP = np.kron(_SY, _SY)


@dataclass(frozen=True)
class MetricResult:
    fidelity: float
    concurrence: float


def _clamp(value: float, what: str) -> float:
    if not -DUST <= value <= 1.0 + DUST:
        raise NumericalError(f"{what} {value!r} outside [0, 1] beyond rounding")
    return min(max(value, 0.0), 1.0)


def fidelity(reference: np.ndarray, rho: np.ndarray) -> float:
    """Overlap probability ``<ref|rho|ref>``.

    This is the squared (probability) convention: a qubit damped with
    probability ``gamma`` out of ``|1>`` has fidelity ``1 - gamma``.
    """
    reference = np.asarray(reference, dtype=np.complex128).reshape(-1)
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (reference.size, reference.size):
        raise ValueError(f"reference of size {reference.size} does not match state of shape {rho.shape}")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > DUST:
        raise ValueError(f"state has trace {tr!r}, expected 1")
    return _clamp(float(np.vdot(reference, rho @ reference).real), "fidelity")


def _check_two_qubit(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (4, 4):
        raise ValueError(f"concurrence needs a 4x4 density matrix, got {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise NumericalError("density matrix has non-finite entries")
    return rho


def wootters_lambdas(rho: np.ndarray) -> np.ndarray:
    """Decreasing square roots of the eigenvalues of ``rho (sy x sy) rho* (sy x sy)``.

    They are computed as singular values of ``tau = W^T (sy x sy) W`` where
    ``rho = W W^dagger``.  This avoids taking square roots of tiny
    eigenvalues, which would turn rounding noise of order 1e-17 into errors
    of order 1e-9 for rank-deficient states.
    """
    rho = _check_two_qubit(rho)
    herm = 0.5 * (rho + rho.conj().T)
    d, v = np.linalg.eigh(herm)
    w = v * np.sqrt(np.clip(d, 0.0, None))
    tau = w.T @ SPIN_FLIP @ w
    return np.linalg.svd(tau, compute_uv=False)


def wootters_lambdas_eig(rho: np.ndarray) -> np.ndarray:
    """Same quantity as :func:`wootters_lambdas`, from the non-Hermitian eigenproblem."""
    rho = _check_two_qubit(rho)
    r = rho @ SPIN_FLIP @ rho.conj() @ SPIN_FLIP
    ev = eigvals_4x4(r)
    scale = max(1.0, float(np.abs(r).max()))
    if np.abs(ev.imag).max() > DUST * scale or ev.real.min() < -DUST * scale:
        raise NumericalError(f"spin-flip spectrum is not real non-negative: {ev}")
    return np.sort(np.sqrt(np.clip(ev.real, 0.0, None)))[::-1]


def concurrence(rho: np.ndarray, method: str = "svd") -> float:
    """Wootters concurrence ``max(0, l1 - l2 - l3 - l4)`` of a two-qubit state.

    Parameters
    ----------
    method : {"svd", "eig"}
        ``"svd"`` (default) uses the singular values of the tau matrix,
        ``"eig"`` the eigenvalues of ``rho rho~``.  Both give the same value;
        the first keeps full precision for low-rank states.
    """
    if method == "svd":
        lam = wootters_lambdas(rho)
    elif method == "eig":
        lam = wootters_lambdas_eig(rho)
    else:
        raise ValueError(f"unknown concurrence method {method!r}")
    c = float(lam[0] - lam[1:].sum())
    if c > 1.0 + DUST:
        raise NumericalError(f"concurrence {c!r} exceeds 1")
    # negative values are the separable case, not rounding dust
    return min(max(c, 0.0), 1.0)


def pure_concurrence(psi: np.ndarray) -> float:
    """``2|ad - bc|`` for ``psi = (a, b, c, d)``."""
    a, b, c, d = np.asarray(psi, dtype=np.complex128).reshape(4)
    return float(2.0 * abs(a * d - b * c))


def x_state_concurrence(rho: np.ndarray) -> float:
    """Closed form for density matrices with only diagonal and anti-diagonal entries."""
    rho = _check_two_qubit(rho)
    p = rho.diagonal().real
    c1 = abs(rho[0, 3]) - np.sqrt(max(p[1] * p[2], 0.0))
    c2 = abs(rho[1, 2]) - np.sqrt(max(p[0] * p[3], 0.0))
    return float(2.0 * max(0.0, c1, c2))


def metrics(reference: np.ndarray, rho: np.ndarray) -> MetricResult:
    return MetricResult(fidelity(reference, rho), concurrence(rho))
