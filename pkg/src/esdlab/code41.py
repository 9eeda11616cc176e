"""The four-qubit approximate code for amplitude damping.

Codewords ``|0>_L = (|0000> + |1111>)/sqrt2`` and ``|1>_L = (|0011> + |1100>)/sqrt2``.
The sixteen vectors ``R[k][i]`` split the block into eight two-dimensional
syndrome subspaces: ``k = 0`` holds the codewords, ``k = 1..4`` the states
reached by a single decay of physical qubit ``k`` and ``k = 5..7`` complete
the basis.  Syndromes 5, 6 and 7 are uncorrectable; the block is replaced by
the maximally mixed logical state ``I_L/2``.

In an eight-qubit register, block 1 is physical qubits 0-3 and block 2 is
physical qubits 4-7.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .errors import LeakageError
from .qlinalg import apply_kraus, ket, normalize, num_qubits

_S = 1.0 / np.sqrt(2.0)

ZERO_L = _S * (ket("0000") + ket("1111"))
ONE_L = _S * (ket("0011") + ket("1100"))

# single-decay states, indexed by the physical qubit that decayed (1..4)
_JUMP_STATES = (
    ("0111", "0100"),
    ("1011", "1000"),
    ("1101", "0001"),
    ("1110", "0010"),
)

_COMPLETION = (
    (_S * (ket("0000") - ket("1111")), _S * (ket("0011") - ket("1100"))),
    (_S * (ket("1010") + ket("0101")), _S * (ket("1001") + ket("0110"))),
    (_S * (ket("1010") - ket("0101")), _S * (ket("1001") - ket("0110"))),
)

UNCORRECTABLE = (5, 6, 7)


def syndrome_bits(k: int) -> str:
    """Three-bit binary label of syndrome ``k``."""
    return format(k, "03b")


class FourQubitCode:
    """Encoding, syndrome basis and recovery for one four-qubit block.

    The codewords are parameters so that a corrupted code can be built for
    self-check mutation tests; the default instance is :data:`CODE`.
    """

    def __init__(self, zero_l: np.ndarray = ZERO_L, one_l: np.ndarray = ONE_L):
        self.zero_l = np.array(zero_l, dtype=np.complex128)
        self.one_l = np.array(one_l, dtype=np.complex128)
        for v in (self.zero_l, self.one_l):
            v.setflags(write=False)

    @property
    def codewords(self) -> tuple[np.ndarray, np.ndarray]:
        return self.zero_l, self.one_l

    @cached_property
    def basis(self) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
        """``basis[k][i]`` is the vector ``R_ki``."""
        rows = [(self.zero_l, self.one_l)]
        rows += [(ket(a), ket(b)) for a, b in _JUMP_STATES]
        rows += list(_COMPLETION)
        return tuple(rows)

    @cached_property
    def basis_matrix(self) -> np.ndarray:
        """16x16 matrix whose column ``2k + i`` is ``R_ki``."""
        return np.column_stack([v for pair in self.basis for v in pair])

    @cached_property
    def isometry(self) -> np.ndarray:
        """2x16 decoder ``sum_i |i><i|_L``."""
        return np.vstack([self.zero_l.conj(), self.one_l.conj()])

    @cached_property
    def codespace_projector(self) -> np.ndarray:
        d = self.isometry
        return d.conj().T @ d

    def syndrome_projector(self, k: int) -> np.ndarray:
        """Projector onto ``span{R_k0, R_k1}``."""
        r0, r1 = self.basis[k]
        return np.outer(r0, r0.conj()) + np.outer(r1, r1.conj())

    def syndrome_unitary(self) -> np.ndarray:
        """``U = sum_{k,i} |i Bin(k)><R_ki|``: moves syndrome ``k`` into qubits 2-4."""
        u = np.zeros((16, 16), dtype=np.complex128)
        for k, pair in enumerate(self.basis):
            for i, r in enumerate(pair):
                u += np.outer(ket(str(i) + syndrome_bits(k)), r.conj())
        return u

    def recovery_operator(self, k: int) -> np.ndarray:
        """``R_k = sum_i |i>_L <i Bin(k)|`` for a correctable syndrome ``k <= 4``."""
        if not 0 <= k <= 4:
            raise ValueError(f"syndrome {k} has no recovery operator")
        return sum(np.outer(w, ket(str(i) + syndrome_bits(k))) for i, w in enumerate(self.codewords))

    def recovery_ops(self, k: int) -> list[np.ndarray]:
        """Kraus set of the recovery conditioned on syndrome ``k``, in the block basis.

        ``k <= 4`` gives the single operator ``R_k U P_k`` (which reduces to
        ``sum_i |i>_L <R_ki|``).  ``k >= 5`` gives the four operators
        ``|i>_L <R_kj| / sqrt2`` that replace the block by ``I_L/2``.
        """
        if not 0 <= k <= 7:
            raise ValueError(f"syndrome must be in 0..7, got {k}")
        pair = self.basis[k]
        if k <= 4:
            return [sum(np.outer(w, r.conj()) for w, r in zip(self.codewords, pair))]
        return [_S * np.outer(w, r.conj()) for w in self.codewords for r in pair]

    @cached_property
    def recovery_kraus(self) -> np.ndarray:
        """All recovery Kraus operators for syndromes 0..7, stacked ``(17, 16, 16)``."""
        ops = [op for k in range(8) for op in self.recovery_ops(k)]
        return np.array(ops)

    def completeness_error(self) -> float:
        s = sum(k.conj().T @ k for k in self.recovery_kraus)
        return float(np.abs(s - np.eye(16)).max())

    def encode_qubit(self, state: np.ndarray) -> np.ndarray:
        """``a|0> + b|1>  ->  a|0>_L + b|1>_L``."""
        state = normalize(np.asarray(state).reshape(-1))
        if state.shape != (2,):
            raise ValueError("encode_qubit takes a single-qubit state")
        return state[0] * self.zero_l + state[1] * self.one_l

    def encode_two_qubits(self, state: np.ndarray) -> np.ndarray:
        """Encode each logical qubit of a two-qubit state into its own block."""
        state = normalize(np.asarray(state).reshape(-1))
        if state.shape != (4,):
            raise ValueError("encode_two_qubits takes a two-qubit state")
        # amplitudes c_ij -> sum c_ij |i>_L |j>_L
        w = np.column_stack(self.codewords)
        return (w @ state.reshape(2, 2) @ w.T).reshape(-1)

    def recover_block(self, rho: np.ndarray, block: int, backend: str | None = None) -> np.ndarray:
        """Measure the syndrome of one block and apply its recovery, outcomes summed."""
        rho = np.asarray(rho)
        if num_qubits(rho) != 8:
            raise ValueError("recover_block expects an 8-qubit density matrix")
        if block not in (1, 2):
            raise ValueError(f"block must be 1 or 2, got {block!r}")
        return apply_kraus(rho, self.recovery_kraus, 4 * (block - 1), backend=backend)

    def leakage(self, rho: np.ndarray, backend: str | None = None) -> float:
        """Frobenius norm of the part of an 8-qubit state outside the code space."""
        p = self.codespace_projector
        inside = apply_kraus(apply_kraus(rho, [p], 0, backend=backend), [p], 4, backend=backend)
        return float(np.linalg.norm(rho - inside))

    def decode(self, rho: np.ndarray, atol: float = 1e-10, backend: str | None = None) -> np.ndarray:
        """Map an 8-qubit state supported on the code space to two logical qubits.

        Raises
        ------
        LeakageError
            If the state has weight outside the code space above ``atol``.
        """
        rho = np.asarray(rho, dtype=np.complex128)
        if num_qubits(rho) != 8:
            raise ValueError("decode expects an 8-qubit density matrix")
        leak = self.leakage(rho, backend=backend)
        if leak > atol:
            raise LeakageError(f"state leaks out of the code space (norm {leak:.3e})")
        d = self.isometry
        t = rho.reshape(16, 16, 16, 16)
        t = np.einsum("ai,bj,ijkl,ck,dl->abcd", d, d, t, d.conj(), d.conj(), optimize=True)
        return t.reshape(4, 4)


CODE = FourQubitCode()


def syndrome_unitary() -> np.ndarray:
    return CODE.syndrome_unitary()


def encode_qubit(state: np.ndarray) -> np.ndarray:
    return CODE.encode_qubit(state)


def encode_two_qubits(state: np.ndarray) -> np.ndarray:
    return CODE.encode_two_qubits(state)


def recover_block(rho: np.ndarray, block: int, backend: str | None = None) -> np.ndarray:
    return CODE.recover_block(rho, block, backend=backend)


def decode(rho: np.ndarray, atol: float = 1e-10) -> np.ndarray:
    return CODE.decode(rho, atol=atol)
