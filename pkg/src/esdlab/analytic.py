"""Closed forms and small-damping series used to validate the simulations.

The coded fidelities and the uncoded ``VARPHI`` fidelity are second-order
truncations; the remainder is ``O(gamma**3)``.  Everything else is exact.
"""

from __future__ import annotations

import numpy as np

from .states import Family


def coded_fidelity_series(family, alpha: float, beta: float, gamma: float) -> float:
    """Fidelity after damping and error correction, to second order in ``gamma``."""
    family = Family.parse(family)
    c2, c4 = np.cos(2 * alpha), np.cos(4 * alpha)
    g2 = gamma * gamma
    if family is Family.PHI:
        return 1.0 - g2 / 2.0 * (7.0 - 3.0 * c2 - c4)
    if family is Family.PSI:
        return 1.0 - g2 / 2.0 * (7.0 - c4)
    return 1.0 - g2 / 8.0 * (17.0 - 6.0 * c2 + c4 - 2.0 * np.cos(2 * beta) * np.sin(2 * alpha) ** 2)


def uncoded_fidelity_exact(family, alpha: float, beta: float, gamma: float) -> float:
    """Fidelity of the damped uncoded state.

    Exact for ``PHI`` and ``PSI``; for ``VARPHI`` only the series through
    ``gamma**2`` is available, so treat that branch as an approximation.
    """
    family = Family.parse(family)
    cos2 = np.cos(alpha) ** 2
    if family is Family.PHI:
        return 1.0 - 2.0 * gamma * cos2 + gamma * gamma * cos2
    if family is Family.PSI:
        return 1.0 - gamma
    c2, c4 = np.cos(2 * alpha), np.cos(4 * alpha)
    return 1.0 - gamma / 8.0 * (11.0 + 4.0 * c2 + c4) + gamma * gamma / 8.0 * cos2 * (3.0 + 5.0 * c2)


def is_series_only(family, coded: bool) -> bool:
    """True where the closed form is a truncated series rather than exact."""
    return coded or Family.parse(family) is Family.VARPHI


def uncoded_phi_concurrence(alpha: float, beta: float, gamma: float) -> float:
    """Concurrence of the damped uncoded ``PHI`` state.

    After damping both qubits the state keeps its X shape with coherence
    ``(1-g)|sin a cos a|`` and single-excitation populations
    ``g(1-g)cos^2 a``, hence ``2(1-g)|cos a| max(0, |sin a| - g|cos a|)``.
    It vanishes from ``gamma = |tan alpha|`` on when ``|tan alpha| < 1``.
    """
    ca, sa = abs(np.cos(alpha)), abs(np.sin(alpha))
    return float(2.0 * (1.0 - gamma) * ca * max(0.0, sa - gamma * ca))


def uncoded_phi_threshold(alpha: float) -> float | None:
    """Damping at which the uncoded ``PHI`` state disentangles, or None if only at 1."""
    t = abs(np.tan(alpha))
    return float(t) if t < 1.0 - 1e-12 else None
