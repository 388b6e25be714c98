"""Univariate polynomials over a :class:`~fthreshold.gf.Field`.

A polynomial is a list of field codes, lowest degree first, with no
trailing zeros; the zero polynomial is ``[]``.  Every function takes the
field as its first argument.
"""

from __future__ import annotations

import random

from . import kernels

__all__ = [
    "trim",
    "add",
    "sub",
    "scale",
    "mul",
    "divmod_",
    "mod",
    "monic",
    "gcd",
    "powmod",
    "derivative",
    "squarefree_decomposition",
    "ddf_degrees",
    "split_roots",
    "find_roots",
]


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def deg(f) -> int:
    return len(f) - 1


def add(F, f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return trim(out)


def sub(F, f, g):
    return add(F, f, [F.neg(c) for c in g])


def scale(F, f, c):
    if c == 0:
        return []
    return [F.mul(x, c) for x in f]


def mul(F, f, g):
    if not f or not g:
        return []
    if F.tabled:
        return trim(kernels.polymul(f, g, F=F))
    return trim(F.poly_mul(f, g))


def divmod_(F, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    if len(r) <= dg:
        return [], trim(r)
    inv_lead = F.inv(g[-1])
    qt = [0] * (len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i]
        if c == 0:
            continue
        c = F.mul(c, inv_lead)
        qt[i - dg] = c
        nc = F.neg(c)
        for j in range(dg + 1):
            if g[j]:
                r[i - dg + j] = F.add(r[i - dg + j], F.mul(nc, g[j]))
    return trim(qt), trim(r[:dg])


def mod(F, f, g):
    return divmod_(F, f, g)[1]


def monic(F, f):
    if not f:
        return []
    if f[-1] == 1:
        return list(f)
    return scale(F, f, F.inv(f[-1]))


def gcd(F, f, g):
    f, g = trim(f), trim(g)
    while g:
        f, g = g, mod(F, f, g)
    return monic(F, f)


def powmod(F, f, e: int, m):
    result = [1]
    base = mod(F, f, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        e >>= 1
        if e:
            base = mod(F, mul(F, base, base), m)
    return mod(F, result, m)


def derivative(F, f):
    return trim([F.mul(F.from_int(i), f[i]) for i in range(1, len(f))])


def squarefree_decomposition(F, f):
    """Pairs ``(h, m)`` with ``f = lc * prod h**m``, each ``h`` monic square free.

    Works over F_q: when the derivative vanishes the polynomial is a p-th
    power and its p-th root is taken coefficientwise.
    """
    f = monic(F, f)
    out = []
    if len(f) <= 1:
        return out
    c = gcd(F, f, derivative(F, f))
    w = divmod_(F, f, c)[0]
    i = 1
    while len(w) > 1:
        y = gcd(F, w, c)
        fac = divmod_(F, w, y)[0]
        if len(fac) > 1:
            out.append((monic(F, fac), i))
        w = y
        c = divmod_(F, c, y)[0]
        i += 1
    if len(c) > 1:
        p = F.p
        root = [F.pth_root(c[j]) for j in range(0, len(c), p)]
        for h, m in squarefree_decomposition(F, root):
            out.append((h, m * p))
    return out


def ddf_degrees(F, f) -> set:
    """Degrees of the irreducible factors of a monic square-free ``f``."""
    f = monic(F, f)
    degs = set()
    x = [0, 1]
    h = x
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = powmod(F, h, F.order, f)
        g = gcd(F, f, sub(F, h, x))
        if len(g) > 1:
            degs.add(i)
            f = divmod_(F, f, g)[0]
            h = mod(F, h, f)
    if len(f) > 1:
        degs.add(len(f) - 1)
    return degs


def split_roots(F, f, rng: random.Random):
    """Roots of a monic ``f`` that is a product of distinct linear factors over ``F``."""
    f = monic(F, f)
    if len(f) <= 1:
        return []
    if len(f) == 2:
        return [F.neg(f[0])]
    Q = F.order
    while True:
        delta = F.random_code(rng)
        if F.p == 2:
            a = mod(F, [0, delta], f)
            acc = a
            for _ in range(F.k - 1):
                a = mod(F, mul(F, a, a), f)
                acc = add(F, acc, a)
            g = gcd(F, f, acc)
        else:
            h = powmod(F, [delta, 1], (Q - 1) // 2, f)
            g = gcd(F, f, sub(F, h, [1]))
        if 1 < len(g) < len(f):
            other = divmod_(F, f, g)[0]
            return split_roots(F, g, rng) + split_roots(F, other, rng)


def find_roots(F, f, seed: int = 0):
    """All distinct roots of ``f`` in ``F``."""
    f = trim(f)
    if len(f) <= 1:
        return []
    x = [0, 1]
    lin = gcd(F, f, sub(F, powmod(F, x, F.order, f), x))
    return split_roots(F, lin, random.Random(seed))
