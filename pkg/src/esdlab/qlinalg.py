"""Dense complex linear algebra on qubit registers.

Basis convention: the leftmost ket symbol is the most significant bit, so the
basis index of ``|b1 b2 ... bn>`` is the binary number ``b1 b2 ... bn`` and
qubit 0 is the most significant.

The Kraus-application kernel comes in two flavours with the same signature: a
compiled Cython extension (``esdlab._kernels``) and a numpy fallback
(``esdlab._kernels_py``).  The compiled one is used when importable, unless
the environment variable ``ESDLAB_PURE_PYTHON`` is set to a non-empty value.
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence

import numpy as np

from . import _kernels_py
from .errors import NumericalError, SizeError

MAX_AXIS = 2**16

if os.environ.get("ESDLAB_PURE_PYTHON"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_BACKENDS = {"python": _kernels_py.apply_kraus_block}
if _compiled is not None:
    _BACKENDS["cython"] = _compiled.apply_kraus_block


def available_backends() -> list[str]:
    """Names of the kernel implementations that can be selected."""
    return sorted(_BACKENDS)


def num_qubits(rho: np.ndarray) -> int:
    """Number of qubits of a square ``2**n`` matrix."""
    dim = rho.shape[0]
    if rho.ndim != 2 or rho.shape[1] != dim or dim < 1 or dim & (dim - 1):
        raise ValueError(f"expected a square 2**n matrix, got shape {rho.shape}")
    return dim.bit_length() - 1


def as_matrix(a) -> np.ndarray:
    """Return ``a`` as a finite 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got {m.ndim} dimensions")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def ket(bits: str) -> np.ndarray:
    """Computational basis state from a bit string, e.g. ``ket("0011")``."""
    v = np.zeros(2 ** len(bits), dtype=np.complex128)
    v[int(bits, 2)] = 1.0
    return v


def projector(psi: np.ndarray) -> np.ndarray:
    """``|psi><psi|``."""
    psi = np.asarray(psi, dtype=np.complex128)
    return np.outer(psi, psi.conj())


def normalize(psi: np.ndarray, atol: float = 1e-12) -> np.ndarray:
    """Check that ``psi`` has unit norm and return it as complex128."""
    psi = np.asarray(psi, dtype=np.complex128)
    norm2 = np.vdot(psi, psi).real
    if abs(norm2 - 1.0) > atol:
        raise ValueError(f"state is not normalized (norm^2 = {norm2:.15g})")
    return psi


def tensor(*mats) -> np.ndarray:
    """Kronecker product with the first factor most significant.

    >>> tensor(np.eye(2), np.eye(2)).shape
    (4, 4)
    """
    if not mats:
        raise ValueError("tensor() needs at least one factor")
    out = as_matrix(mats[0])
    for b in mats[1:]:
        b = as_matrix(b)
        rows, cols = out.shape[0] * b.shape[0], out.shape[1] * b.shape[1]
        if rows > MAX_AXIS or cols > MAX_AXIS:
            raise SizeError(f"tensor product of shape {(rows, cols)} exceeds {MAX_AXIS} per axis")
        out = np.kron(out, b)
    return out


def apply_kraus(rho: np.ndarray, ops, first: int = 0, backend: str | None = None) -> np.ndarray:
    """Apply a Kraus set to a contiguous run of qubits.

    Parameters
    ----------
    rho : ndarray
        ``n``-qubit density matrix.
    ops : sequence of ndarray
        Kraus operators of equal shape ``2**w x 2**w``.
    first : int
        Index of the first qubit the operators act on; they cover qubits
        ``first .. first + w - 1``.
    backend : {"cython", "python"}, optional
        Kernel to use; defaults to :data:`BACKEND`.

    Returns
    -------
    ndarray
        ``sum_K (I x K x I) rho (I x K x I)^dagger``.
    """
    rho = np.ascontiguousarray(rho, dtype=np.complex128)
    n = num_qubits(rho)
    ops = np.ascontiguousarray(np.asarray(ops, dtype=np.complex128))
    if ops.ndim == 2:
        ops = ops[np.newaxis]
    m = ops.shape[1]
    if ops.ndim != 3 or ops.shape[2] != m or m < 2 or m & (m - 1):
        raise ValueError(f"Kraus operators must be 2**w square matrices, got shape {ops.shape[1:]}")
    width = m.bit_length() - 1
    if first < 0 or first + width > n:
        raise IndexError(f"qubits {first}..{first + width - 1} out of range for {n} qubits")
    kernel = _BACKENDS[backend or BACKEND]
    return kernel(rho, ops, first, width, n)


def apply_local(op: np.ndarray, target: int, rho: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Conjugate ``rho`` by ``op`` acting on qubit ``target`` only.

    Equivalent to ``F @ rho @ F.conj().T`` with ``F = I x ... x op x ... x I``
    but never builds ``F``.
    """
    op = as_matrix(op)
    if op.shape != (2, 2):
        raise ValueError(f"apply_local expects a 2x2 operator, got {op.shape}")
    n = num_qubits(np.asarray(rho))
    if not 0 <= target < n:
        raise IndexError(f"target qubit {target} out of range for {n} qubits")
    return apply_kraus(rho, [op], target, backend=backend)


def partial_trace(rho: np.ndarray, keep: Iterable[int]) -> np.ndarray:
    """Reduced density matrix on the qubits in ``keep`` (kept in ascending order)."""
    rho = np.asarray(rho, dtype=np.complex128)
    n = num_qubits(rho)
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("keep must name at least one qubit")
    if keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"keep {keep} out of range for {n} qubits")
    drop = [q for q in range(n) if q not in keep]
    t = rho.reshape([2] * (2 * n))
    # move kept row axes, then kept column axes, to the front
    order = keep + [n + q for q in keep] + drop + [n + q for q in drop]
    t = t.transpose(order)
    dk, dd = 2 ** len(keep), 2 ** len(drop)
    t = t.reshape(dk, dk, dd, dd)
    return np.trace(t, axis1=2, axis2=3)


def eigvals_4x4(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a general complex 4x4 matrix.

    Raises
    ------
    NumericalError
        If LAPACK fails to converge or returns non-finite values.
    """
    m = np.asarray(m, dtype=np.complex128)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NumericalError("matrix has non-finite entries")
    try:
        w = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigenvalue iteration did not converge: {exc}") from exc
    if not np.all(np.isfinite(w)):
        raise NumericalError("eigenvalue routine returned non-finite values")
    return w


def is_density_matrix(rho: np.ndarray, atol: float = 1e-10) -> bool:
    """Hermitian, unit trace and positive semidefinite within ``atol``."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return False
    if np.abs(rho - rho.conj().T).max() > atol:
        return False
    if abs(np.trace(rho) - 1.0) > atol:
        return False
    return bool(np.linalg.eigvalsh(rho).min() >= -atol)


def embed(op: np.ndarray, first: int, n: int) -> np.ndarray:
    """Explicit ``I x ... x op x ... x I`` with ``op`` starting at qubit ``first``."""
    op = as_matrix(op)
    width = op.shape[0].bit_length() - 1
    return tensor(np.eye(2**first), op, np.eye(2 ** (n - first - width)))


def kron_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    """Kronecker product of a list of vectors or matrices (most significant first)."""
    out = np.ones(1, dtype=np.complex128) if np.ndim(factors[0]) == 1 else np.ones((1, 1), dtype=np.complex128)
    for f in factors:
        out = np.kron(out, f)
    return out
