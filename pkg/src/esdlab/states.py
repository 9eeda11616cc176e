"""Initial two-qubit states and their encoded versions."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .code41 import CODE, FourQubitCode
from .qlinalg import ket


class Family(enum.Enum):
    PHI = "phi"        # cos a |11> + e^{ib} sin a |00>
    PSI = "psi"        # cos a |10> + e^{ib} sin a |01>
    VARPHI = "varphi"  # cos a |11> + e^{ib} sin a |10>, separable

    @classmethod
    def parse(cls, name: "str | Family") -> "Family":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            raise ValueError(f"unknown state family {name!r}; expected phi, psi or varphi") from None


_SUPPORT = {
    Family.PHI: ("11", "00"),
    Family.PSI: ("10", "01"),
    Family.VARPHI: ("11", "10"),
}


@dataclass(frozen=True)
class StateFamily:
    """One member of a state family: ``cos(alpha)|x> + e^{i beta} sin(alpha)|y>``."""

    family: Family
    alpha: float
    beta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))


def make_uncoded(spec: StateFamily) -> np.ndarray:
    """Two-qubit state vector of ``spec``."""
    first, second = _SUPPORT[spec.family]
    return np.cos(spec.alpha) * ket(first) + np.exp(1j * spec.beta) * np.sin(spec.alpha) * ket(second)


def make_coded(spec: StateFamily, code: FourQubitCode = CODE) -> np.ndarray:
    """Eight-qubit state vector with each logical qubit in its own block."""
    return code.encode_two_qubits(make_uncoded(spec))
