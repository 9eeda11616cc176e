"""Pure-numpy fallback for the compiled kernel in ``_kernels.pyx``."""

import numpy as np


def apply_kraus_block(rho, ops, first, width, n):
    """Return sum_K (I x K x I) rho (I x K x I)^dagger for K acting on qubits
    ``first .. first + width - 1`` of an ``n``-qubit density matrix."""
    dim = rho.shape[0]
    m = 1 << width
    hi = 1 << first
    lo = 1 << (n - first - width)
    r = rho.reshape(hi, m, lo, hi, m, lo)
    out = np.zeros_like(r)
    for K in ops:
        # row index: contract K with axis 1, then restore axis order
        x = np.moveaxis(np.tensordot(K, r, axes=([1], [1])), 0, 1)
        x = np.moveaxis(np.tensordot(x, K.conj(), axes=([4], [1])), -1, 4)
        out += x
    return out.reshape(dim, dim)
