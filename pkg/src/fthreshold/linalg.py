"""Exact row reduction over a finite field.

Table fields go through the compiled (or fallback) kernel; large fields use
the generic loop below, which calls the field's own arithmetic.
"""

from __future__ import annotations

from . import kernels

__all__ = ["rref", "rank", "left_kernel", "reduce_vector"]


def _rref_generic(F, rows, ncols):
    M = [list(r) for r in rows]
    nr = len(M)
    r = 0
    piv = []
    for c in range(ncols):
        if r == nr:
            break
        sel = next((i for i in range(r, nr) if M[i][c]), -1)
        if sel < 0:
            continue
        M[r], M[sel] = M[sel], M[r]
        inv = F.inv(M[r][c])
        row = [F.mul(x, inv) for x in M[r]]
        M[r] = row
        nz = [j for j in range(c, ncols) if row[j]]
        for i in range(nr):
            if i != r and M[i][c]:
                nf = F.neg(M[i][c])
                Ri = M[i]
                for j in nz:
                    Ri[j] = F.add(Ri[j], F.mul(nf, row[j]))
        piv.append(c)
        r += 1
    return M[:r], piv


def rref(F, rows, ncols):
    """Reduced row echelon form: (nonzero rows with unit pivots, pivot columns)."""
    if not rows:
        return [], []
    if F.tabled:
        return kernels.rref(F, rows, ncols)
    return _rref_generic(F, rows, ncols)


def rank(F, rows, ncols) -> int:
    return len(rref(F, rows, ncols)[1])


def reduce_vector(F, basis, pivots, v):
    """Reduce ``v`` against an RREF basis; returns the remainder."""
    v = list(v)
    for row, c in zip(basis, pivots):
        f = v[c]
        if f:
            nf = F.neg(f)
            for j, x in enumerate(row):
                if x:
                    v[j] = F.add(v[j], F.mul(nf, x))
    return v


def left_kernel(F, rows, ncols):
    """RREF basis of {w : w . rows = 0}."""
    n = len(rows)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    red, piv = rref(F, aug, ncols + n)
    out = [row[ncols:] for row, c in zip(red, piv) if c >= ncols]
    return out
