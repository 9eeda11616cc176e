# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Kraus-application kernel.

Each Kraus term is accumulated straight into the output from pairs of
nonzero operator entries, ``out[p1, p2] += K[p1, q1] conj(K[p2, q2]) rho[q1, q2]``
on the affected sub-blocks.  The operators used here are very sparse (two or
three nonzeros for damping, at most eight of 256 for the code recovery), so
this beats a dense contraction and needs no scratch matrix.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef double complex cplx


cdef inline void _axpy(cplx* dst, const cplx* src, cplx v, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t c
    cdef double vr = v.real, vi = v.imag, sr, si
    cdef double* d = <double*> dst
    cdef const double* s = <const double*> src
    for c in range(n):
        sr = s[2 * c]
        si = s[2 * c + 1]
        d[2 * c] += vr * sr - vi * si
        d[2 * c + 1] += vr * si + vi * sr


def apply_kraus_block(cplx[:, ::1] rho, cplx[:, :, ::1] ops, Py_ssize_t first,
                      Py_ssize_t width, Py_ssize_t n):
    """Return sum_K (I x K x I) rho (I x K x I)^dagger for K acting on qubits
    ``first .. first + width - 1`` of an ``n``-qubit density matrix."""
    cdef Py_ssize_t dim = rho.shape[0]
    cdef Py_ssize_t m = ops.shape[1]
    cdef Py_ssize_t lo = 1 << (n - first - width)
    cdef Py_ssize_t hi = 1 << first
    cdef Py_ssize_t nops = ops.shape[0]
    cdef Py_ssize_t stride = m * lo

    out_arr = np.zeros((dim, dim), dtype=np.complex128)
    cdef cplx[:, ::1] out = out_arr
    cdef cplx* R = &rho[0, 0]
    cdef cplx* O = &out[0, 0]

    nz_p_arr = np.empty(m * m, dtype=np.intp)
    nz_q_arr = np.empty(m * m, dtype=np.intp)
    nz_v_arr = np.empty(m * m, dtype=np.complex128)
    cdef Py_ssize_t[::1] nz_p = nz_p_arr
    cdef Py_ssize_t[::1] nz_q = nz_q_arr
    cdef cplx[::1] nz_v = nz_v_arr

    cdef Py_ssize_t k, p, q, t1, t2, nnz, h1, h2, l1, row_out, row_in, off_out, off_in
    cdef cplx v, coef

    with nogil:
        for k in range(nops):
            nnz = 0
            for p in range(m):
                for q in range(m):
                    v = ops[k, p, q]
                    if v.real != 0.0 or v.imag != 0.0:
                        nz_p[nnz] = p
                        nz_q[nnz] = q
                        nz_v[nnz] = v
                        nnz += 1

            for t1 in range(nnz):
                for t2 in range(nnz):
                    coef = nz_v[t1] * nz_v[t2].conjugate()
                    for h1 in range(hi):
                        for l1 in range(lo):
                            row_out = h1 * stride + nz_p[t1] * lo + l1
                            row_in = h1 * stride + nz_q[t1] * lo + l1
                            for h2 in range(hi):
                                off_out = h2 * stride + nz_p[t2] * lo
                                off_in = h2 * stride + nz_q[t2] * lo
                                _axpy(O + row_out * dim + off_out,
                                      R + row_in * dim + off_in, coef, lo)
    return out_arr
