"""Amplitude damping on one qubit and its independent extension to many."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .qlinalg import apply_kraus, num_qubits


def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"damping probability must lie in [0, 1], got {gamma}")
    return gamma


@dataclass(frozen=True)
class KrausChannel:
    """An ordered set of Kraus operators of equal shape."""

    operators: tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=np.complex128) for k in self.operators)
        if not ops or any(k.shape != ops[0].shape for k in ops):
            raise ValueError("Kraus operators must be non-empty and share one shape")
        object.__setattr__(self, "operators", ops)

    def __iter__(self):
        return iter(self.operators)

    def __len__(self):
        return len(self.operators)

    def completeness_error(self) -> float:
        """max |sum K^dagger K - I| entrywise."""
        s = sum(k.conj().T @ k for k in self.operators)
        return float(np.abs(s - np.eye(s.shape[0])).max())

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        return sum(k @ rho @ k.conj().T for k in self.operators)


@dataclass(frozen=True)
class AmplitudeDamping:
    """Single-qubit amplitude damping with decay probability ``gamma``."""

    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "gamma", _check_gamma(self.gamma))

    def kraus(self) -> KrausChannel:
        return kraus_pair(self.gamma)


def kraus_pair(gamma: float) -> KrausChannel:
    """No-jump and jump operators ``E0 = diag(1, sqrt(1-g))``, ``E1 = sqrt(g)|0><1|``."""
    gamma = _check_gamma(gamma)
    e0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - gamma)]], dtype=np.complex128)
    e1 = np.array([[0.0, np.sqrt(gamma)], [0.0, 0.0]], dtype=np.complex128)
    return KrausChannel((e0, e1))


def apply_independent(
    gamma: float | Sequence[float],
    rho: np.ndarray,
    targets: Iterable[int] | None = None,
    backend: str | None = None,
) -> np.ndarray:
    """Damp each target qubit independently.

    Parameters
    ----------
    gamma : float or sequence of float
        Damping probability shared by all targets, or one value per target.
    rho : ndarray
        ``n``-qubit density matrix.
    targets : iterable of int, optional
        Qubits to damp; all of them by default.

    Notes
    -----
    Applying the single-qubit channel qubit by qubit equals the sum over all
    product Kraus operators ``E_m x E_n x ...``, since the channels act on
    disjoint tensor factors.
    """
    n = num_qubits(np.asarray(rho))
    targets = list(range(n)) if targets is None else list(targets)
    for t in targets:
        if not 0 <= t < n:
            raise IndexError(f"target qubit {t} out of range for {n} qubits")
    if len(set(targets)) != len(targets):
        raise IndexError(f"duplicate target qubits in {targets}")
    if np.ndim(gamma) == 0:
        gammas = [gamma] * len(targets)
    else:
        gammas = list(gamma)
        if len(gammas) != len(targets):
            raise ValueError(f"got {len(gammas)} damping values for {len(targets)} targets")
    out = np.asarray(rho, dtype=np.complex128)
    for t, g in zip(targets, gammas):
        out = apply_kraus(out, kraus_pair(g).operators, t, backend=backend)
    return out


def compose_gamma(g1: float, g2: float) -> float:
    """Damping probability of two damping channels applied in sequence."""
    return g1 + g2 - g1 * g2
