"""Graded linear algebra in k[x, y]: colengths, syzygy gaps, colon ideals,
Frobenius powers and ideal membership.

Everything reduces to row reduction of the matrix whose rows are the
products ``x^(s-d-k) y^k * F`` written in the monomial basis of degree s
(columns ``x^(s-i) y^i``, ascending in i).
"""

from __future__ import annotations

import logging

from .errors import DomainError, InfiniteColengthError, InternalConsistencyError
from .linalg import rank, reduce_vector, rref
from .poly import BinaryForm, form_gcd

__all__ = [
    "UNIT",
    "TwoGenIdeal",
    "TripleIdeal",
    "graded_kernel_dim",
    "colength",
    "syzygy_gap",
    "sg_quadratic",
    "colon",
    "frobenius_power",
    "member",
    "maximal_ideal",
]

log = logging.getLogger(__name__)

# full colength cross-check of syzygy_gap only below this degree sum
AUTO_VERIFY_DEGREE = 48


class _Unit:
    """The unit ideal k[x, y]."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "UNIT"

    def key(self):
        return ("UNIT",)


UNIT = _Unit()


def _multiples(f: BinaryForm, s: int):
    d = f.degree
    if s < d:
        return []
    c = list(f.coeffs)
    width = s + 1
    return [[0] * k + c + [0] * (width - d - 1 - k) for k in range(s - d + 1)]


def graded_kernel_dim(forms, s: int) -> int:
    """Dimension of the kernel of (A_i) -> sum A_i F_i in degree s."""
    forms = list(forms)
    if not forms:
        return 0
    F = forms[0].field
    rows = []
    for f in forms:
        rows.extend(_multiples(f, s))
    if not rows:
        return 0
    return len(rows) - rank(F, rows, s + 1)


def _generators(I):
    if isinstance(I, (TwoGenIdeal, TripleIdeal)):
        return list(I.generators)
    return list(I)


def _common_factor_degree(forms) -> int:
    g = forms[0]
    for f in forms[1:]:
        g = form_gcd(g, f)
        if g.degree == 0:
            return 0
    return g.degree


def colength(I) -> int:
    """dim_k k[x,y]/I for a homogeneous ideal with no common factor among its generators."""
    gens = _generators(I)
    if not gens:
        raise DomainError("ideal needs generators")
    if any(g.degree == 0 for g in gens):
        return 0
    if _common_factor_degree(gens) > 0:
        raise InfiniteColengthError("generators share a common factor; colength is infinite")
    F = gens[0].field
    D = sum(g.degree for g in gens)
    total = 0
    for d in range(D + 1):
        rows = []
        for g in gens:
            rows.extend(_multiples(g, d))
        quot = d + 1 - (rank(F, rows, d + 1) if rows else 0)
        if quot == 0:
            return total
        total += quot
    raise InfiniteColengthError("codimension did not reach zero by degree %d" % D)


def sg_quadratic(a: int, b: int, c: int) -> int:
    return 2 * a * b + 2 * a * c + 2 * b * c - a * a - b * b - c * c


def _min_syzygy_degree(forms) -> int:
    """Least degree m of a minimal syzygy of three forms without common factor."""
    S = sum(f.degree for f in forms)
    t = S // 2
    k = graded_kernel_dim(forms, t)
    if S % 2 == 0 and k == 2:
        return t if graded_kernel_dim(forms, t - 1) == 0 else t - 1
    if k == 0:
        raise InternalConsistencyError("no syzygy in degree %d for degree sum %d" % (t, S))
    return t - k + 1


class TripleIdeal:
    """The ideal <F, G, H>; operations require the three to have no common factor."""

    def __init__(self, F: BinaryForm, G: BinaryForm, H: BinaryForm):
        if not (F.field is G.field is H.field):
            raise DomainError("forms over different fields")
        self.generators = (F, G, H)
        self.field = F.field

    def __repr__(self):
        return "TripleIdeal(%s)" % ", ".join(g.to_string() for g in self.generators)


def syzygy_gap(F: BinaryForm, G: BinaryForm, H: BinaryForm, verify=None) -> int:
    """|m - n| for the resolution 0 -> R(-m) + R(-n) -> R^3 -> <F,G,H>.

    ``verify=None`` runs the colength identity 4*colength = Q + delta^2 only
    when the degree sum is small; True forces it, False skips it.
    """
    forms = (F, G, H)
    if not (F.field is G.field is H.field):
        raise DomainError("forms over different fields")
    if _common_factor_degree(list(forms)) > 0:
        raise DomainError("syzygy gap undefined: the three forms share a common factor")
    S = F.degree + G.degree + H.degree
    m = _min_syzygy_degree(forms)
    delta = S - 2 * m
    if delta < 0:
        raise InternalConsistencyError("negative syzygy gap")
    if verify or (verify is None and S <= AUTO_VERIFY_DEGREE):
        lhs = 4 * colength(forms)
        rhs = sg_quadratic(F.degree, G.degree, H.degree) + delta * delta
        if lhs != rhs:
            raise InternalConsistencyError("colength identity fails: 4*%d != %d" % (lhs // 4, rhs))
    return delta


class TwoGenIdeal:
    """<U, V> with U, V coprime non-constant forms (so the colength is deg U * deg V)."""

    def __init__(self, U: BinaryForm, V: BinaryForm, check: bool = True):
        if U.field is not V.field:
            raise DomainError("generators over different fields")
        if U.degree == 0 or V.degree == 0:
            raise DomainError("generators must be non-constant")
        self.U = U
        self.V = V
        self.field = U.field
        self._rref_cache: dict = {}
        self._key = None
        if check:
            if form_gcd(U, V).degree > 0:
                raise DomainError("generators are not coprime")
            c = colength((U, V))
            if c != U.degree * V.degree:
                raise InternalConsistencyError("colength %d != deg U * deg V = %d" % (c, U.degree * V.degree))

    @property
    def generators(self):
        return (self.U, self.V)

    @property
    def deg_uv(self) -> int:
        return self.U.degree + self.V.degree

    @property
    def colength(self) -> int:
        return self.U.degree * self.V.degree

    def is_maximal(self) -> bool:
        return self.U.degree == 1 and self.V.degree == 1

    def degree_space(self, s: int):
        """RREF basis of the degree-s part and its pivots (cached)."""
        hit = self._rref_cache.get(s)
        if hit is None:
            rows = _multiples(self.U, s) + _multiples(self.V, s)
            hit = rref(self.field, rows, s + 1) if rows else ([], [])
            if len(self._rref_cache) < 4096:
                self._rref_cache[s] = hit
        return hit

    def key(self):
        """Canonical description (equal keys iff equal ideals)."""
        if self._key is None:
            d1, d2 = sorted((self.U.degree, self.V.degree))
            b1 = tuple(map(tuple, self.degree_space(d1)[0]))
            b2 = tuple(map(tuple, self.degree_space(d2)[0]))
            self._key = (d1, d2, b1, b2)
        return self._key

    def __eq__(self, other):
        return isinstance(other, TwoGenIdeal) and other.field is self.field and other.key() == self.key()

    def __hash__(self):
        return hash(self.key())

    def embed(self, target) -> "TwoGenIdeal":
        if target is self.field:
            return self
        return TwoGenIdeal(self.U.embed(target), self.V.embed(target), check=False)

    def frobenius_power(self, q: int) -> "TwoGenIdeal":
        return TwoGenIdeal(self.U.frobenius_power(q), self.V.frobenius_power(q), check=False)

    def to_strings(self):
        return [self.U.to_string(), self.V.to_string()]

    def __repr__(self):
        return "TwoGenIdeal(%s, %s)" % (self.U.to_string(), self.V.to_string())


def maximal_ideal(field) -> TwoGenIdeal:
    return TwoGenIdeal(BinaryForm(field, (1, 0)), BinaryForm(field, (0, 1)), check=False)


def frobenius_power(I, p: int):
    if I is UNIT:
        return UNIT
    return I.frobenius_power(p)


def member(I, f) -> bool:
    """Is the form ``f`` (or None for zero) in the ideal ``I``?"""
    if I is UNIT or f is None:
        return True
    if f.field is not I.field:
        raise DomainError("form and ideal over different fields")
    s = f.degree
    if s >= I.U.degree + I.V.degree - 1:
        return True
    if s < min(I.U.degree, I.V.degree):
        return False
    basis, piv = I.degree_space(s)
    rem = reduce_vector(I.field, basis, piv, f.coeffs)
    return not any(rem)


def _colon_space(A: BinaryForm, B: BinaryForm, f: BinaryForm, t: int):
    """RREF basis (coefficient vectors of degree t) of {c : c*f in <A, B>}."""
    F = A.field
    if t < 0:
        return []
    s = t + f.degree
    if s >= A.degree + B.degree - 1:
        return [[1 if i == j else 0 for j in range(t + 1)] for i in range(t + 1)]
    n = t + 1
    zeros = [0] * n
    rows = [r + zeros for r in _multiples(A, s) + _multiples(B, s)]
    for k, r in enumerate(_multiples(f, s)):
        e = [0] * n
        e[k] = 1
        rows.append(r + e)
    red, piv = rref(F, rows, s + 1 + n)
    return [row[s + 1 :] for row, c in zip(red, piv) if c > s]


def colon(I, f: BinaryForm):
    """(I : f) for a two-generator ideal; returns UNIT or a TwoGenIdeal.

    The colon is the image of the syzygy module of (U, V, f) under the
    projection to the f-coordinate, so it is generated by two forms whose
    degrees add up to deg U + deg V - deg f.
    """
    if I is UNIT:
        return UNIT
    if f.field is not I.field:
        raise DomainError("form and ideal over different fields")
    if f.degree == 0:
        return I
    A, B = I.U, I.V
    S = A.degree + B.degree - f.degree
    if S <= 1:
        return UNIT
    t = S // 2
    J = _colon_space(A, B, f, t)
    k = len(J)
    if S % 2 == 0 and k == 2:
        t1 = t if not _colon_space(A, B, f, t - 1) else t - 1
    elif k == 0:
        raise InternalConsistencyError("empty colon space in degree %d" % t)
    else:
        t1 = t - k + 1
    if t1 <= 0:
        return UNIT
    t2 = S - t1
    F = A.field
    if t1 == t2:
        C1 = BinaryForm(F, J[0])
        C2 = BinaryForm(F, J[1])
    else:
        J1 = J if t1 == t else _colon_space(A, B, f, t1)
        if len(J1) != 1:
            raise InternalConsistencyError("expected a unique colon generator in degree %d" % t1)
        C1 = BinaryForm(F, J1[0])
        J2 = _colon_space(A, B, f, t2)
        span = _multiples(C1, t2)
        basis, piv = rref(F, span, t2 + 1)
        C2 = None
        for v in J2:
            rem = reduce_vector(F, basis, piv, v)
            if any(rem):
                C2 = BinaryForm(F, v)
                break
        if C2 is None:
            raise InternalConsistencyError("second colon generator not found")
    if form_gcd(C1, C2).degree > 0:
        raise InternalConsistencyError("colon generators share a factor")
    return TwoGenIdeal(C1.monic(), C2.monic(), check=False)
