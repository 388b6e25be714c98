# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels over log-coded finite fields (same contract as _pykernels)."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

NAME = "cython"


def zech_table(F):
    return F.zech


cdef inline int64_t _add(int64_t a, int64_t b, int64_t n, const int64_t[::1] zech) noexcept nogil:
    cdef int64_t d, z
    if a == 0:
        return b
    if b == 0:
        return a
    d = b - a
    if d < 0:
        d += n
    z = zech[d]
    if z == 0:
        return 0
    d = a + z - 2
    if d >= n:
        d -= n
    return d + 1


cdef inline int64_t _mul(int64_t a, int64_t b, int64_t n) noexcept nogil:
    cdef int64_t d
    if a == 0 or b == 0:
        return 0
    d = a + b - 2
    if d >= n:
        d -= n
    return d + 1


cdef list _rref_inplace(int64_t[:, ::1] M, int64_t Q, const int64_t[::1] zech, int64_t half):
    cdef Py_ssize_t nr = M.shape[0], nc = M.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, sel, k, nnz
    cdef int64_t n = Q - 1, inv, f, nf, tmp
    cdef int64_t[::1] nzbuf = np.empty(nc, dtype=np.int64)
    cdef list piv = []
    for c in range(nc):
        if r == nr:
            break
        sel = -1
        for i in range(r, nr):
            if M[i, c] != 0:
                sel = i
                break
        if sel < 0:
            continue
        if sel != r:
            for j in range(nc):
                tmp = M[r, j]
                M[r, j] = M[sel, j]
                M[sel, j] = tmp
        inv = (n - (M[r, c] - 1)) % n + 1
        nnz = 0
        for j in range(c, nc):
            if M[r, j] != 0:
                M[r, j] = _mul(M[r, j], inv, n)
                nzbuf[nnz] = j
                nnz += 1
        with nogil:
            for i in range(nr):
                if i == r:
                    continue
                f = M[i, c]
                if f == 0:
                    continue
                nf = (f - 1 + half) % n + 1
                for k in range(nnz):
                    j = nzbuf[k]
                    M[i, j] = _add(M[i, j], _mul(nf, M[r, j], n), n, zech)
        piv.append(c)
        r += 1
    return piv


def rref_rows(rows, Py_ssize_t ncols, int64_t Q, const int64_t[::1] zech, int64_t half):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    if len(rows) == 0 or ncols == 0:
        return [], []
    M = np.array(rows, dtype=np.int64).reshape(len(rows), ncols)
    piv = _rref_inplace(M, Q, zech, half)
    return M[: len(piv)].tolist(), piv


def polymul(f, g, int64_t Q, const int64_t[::1] zech):
    cdef int64_t[::1] a = np.asarray(f, dtype=np.int64)
    cdef int64_t[::1] b = np.asarray(g, dtype=np.int64)
    cdef Py_ssize_t la = a.shape[0], lb = b.shape[0], i, j
    cdef int64_t n = Q - 1, x
    out_arr = np.zeros(la + lb - 1, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    with nogil:
        for i in range(la):
            x = a[i]
            if x == 0:
                continue
            for j in range(lb):
                if b[j] != 0:
                    out[i + j] = _add(out[i + j], _mul(x, b[j], n), n, zech)
    return out_arr.tolist()
