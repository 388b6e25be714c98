"""Binary forms over a finite field and their factorization into linear forms.

A :class:`BinaryForm` of degree d stores d+1 field codes; entry i is the
coefficient of ``x**(d-i) * y**i``.  Products of linear forms are factored
over the smallest extension F_{p^L} in which every factor splits.
"""

from __future__ import annotations

import math
import random
from typing import Iterable, Sequence

from . import kernels, upoly
from .errors import DomainError
from .gf import Field, FieldElement, embedding_code_map, make_field

__all__ = [
    "BinaryForm",
    "LinearForm",
    "LinearFactorization",
    "factor_linear",
    "factor_product",
    "form_gcd",
    "DEFAULT_SEED",
]

DEFAULT_SEED = 20240611


def _mul_codes(F: Field, a, b):
    """Full-length product of coefficient sequences (keeps trailing zeros)."""
    if F.tabled:
        return kernels.polymul(a, b, F=F)
    return F.poly_mul(a, b)


class BinaryForm:
    """Nonzero homogeneous polynomial in x, y; ``coeffs[i]`` multiplies x^(d-i) y^i."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: Field, coeffs: Sequence[int]):
        coeffs = tuple(coeffs)
        if not coeffs or not any(coeffs):
            raise DomainError("the zero polynomial is not a binary form")
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def constant(cls, field: Field, c: int = 1):
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field: Field, i: int, j: int, c: int = 1):
        """``c * x**i * y**j``."""
        return cls(field, (0,) * j + (c,) + (0,) * i)

    @classmethod
    def linear(cls, field: Field, alpha: int, beta: int):
        return cls(field, (alpha, beta))

    @classmethod
    def from_univariate(cls, field: Field, f, degree: int | None = None):
        """Homogenize a univariate polynomial in t = x/y (low degree first)."""
        f = upoly.trim(f)
        d = len(f) - 1 if degree is None else degree
        if len(f) - 1 > d:
            raise DomainError("degree too small for homogenization")
        padded = list(f) + [0] * (d + 1 - len(f))
        return cls(field, tuple(reversed(padded)))

    # -- basic properties ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int, j: int) -> FieldElement:
        """Coefficient of x^i y^j."""
        if i + j != self.degree:
            return FieldElement(self.field, 0)
        return FieldElement(self.field, self.coeffs[j])

    def x_multiplicity(self) -> int:
        n = 0
        for c in reversed(self.coeffs):
            if c:
                break
            n += 1
        return n

    def y_multiplicity(self) -> int:
        n = 0
        for c in self.coeffs:
            if c:
                break
            n += 1
        return n

    def leading(self) -> int:
        """First nonzero coefficient in the x-descending order."""
        return next(c for c in self.coeffs if c)

    def is_constant(self) -> bool:
        return self.degree == 0

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "BinaryForm"):
        if not isinstance(other, BinaryForm):
            raise DomainError("expected a binary form")
        if other.field is not self.field:
            raise DomainError("forms over different fields")

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return self.scale(other.code)
        if isinstance(other, int):
            return self.scale(self.field.from_int(other))
        self._check(other)
        return BinaryForm(self.field, _mul_codes(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def scale(self, c: int) -> "BinaryForm":
        F = self.field
        return BinaryForm(F, tuple(F.mul(x, c) for x in self.coeffs))

    def __add__(self, other):
        self._check(other)
        if other.degree != self.degree:
            raise DomainError("sum of forms of degrees %d and %d is not homogeneous" % (self.degree, other.degree))
        F = self.field
        return BinaryForm(F, tuple(F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        F = self.field
        return BinaryForm(F, tuple(F.neg(a) for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("negative power of a form")
        F = self.field
        # strip the x/y powers first so squaring works on a shorter core
        yj = self.y_multiplicity()
        xi = self.x_multiplicity()
        core = list(self.coeffs[yj : len(self.coeffs) - xi])
        result = [1]
        base = core
        n = e
        while n:
            if n & 1:
                result = _mul_codes(F, result, base)
            n >>= 1
            if n:
                base = _mul_codes(F, base, base)
        return BinaryForm(F, (0,) * (yj * e) + tuple(result) + (0,) * (xi * e))

    def frobenius_power(self, q: int) -> "BinaryForm":
        """``self ** q`` for q a power of the characteristic, by spreading coefficients."""
        F = self.field
        out = [0] * (self.degree * q + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * q] = F.pow(c, q)
        return BinaryForm(F, out)

    def evaluate(self, x, y) -> FieldElement:
        F = self.field
        xc = x.code if isinstance(x, FieldElement) else F.from_int(x)
        yc = y.code if isinstance(y, FieldElement) else F.from_int(y)
        d = self.degree
        acc = 0
        for i, c in enumerate(self.coeffs):
            if c:
                term = F.mul(c, F.mul(F.pow(xc, d - i), F.pow(yc, i)))
                acc = F.add(acc, term)
        return FieldElement(F, acc)

    def dehomogenize(self):
        """Univariate polynomial G(t, 1), low degree first."""
        return upoly.trim(list(reversed(self.coeffs)))

    def monic(self) -> "BinaryForm":
        lead = self.leading()
        if lead == 1:
            return self
        return self.scale(self.field.inv(lead))

    def embed(self, target: Field) -> "BinaryForm":
        if target is self.field:
            return self
        m = embedding_code_map(self.field, target)
        return BinaryForm(target, tuple(m(c) for c in self.coeffs))

    def divides(self, other: "BinaryForm") -> bool:
        g = form_gcd(self, other)
        return g.degree == self.degree

    # -- comparison and display --------------------------------------------

    def __eq__(self, other):
        return isinstance(other, BinaryForm) and other.field is self.field and other.coeffs == self.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.field), self.coeffs))
        return self._hash

    def to_string(self, variables=("x", "y")) -> str:
        F = self.field
        d = self.degree
        xs, ys = variables
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mons = []
            for v, k in ((xs, d - i), (ys, i)):
                if k == 1:
                    mons.append(v)
                elif k > 1:
                    mons.append("%s^%d" % (v, k))
            cs = F.format(c)
            if "+" in cs:
                cs = "(%s)" % cs
            if mons:
                terms.append("*".join(mons) if c == 1 else cs + "*" + "*".join(mons))
            else:
                terms.append(cs)
        return "+".join(terms)

    def __repr__(self):
        return "BinaryForm(%s)" % self.to_string()

    __str__ = to_string


def form_gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Monic gcd: split off the y-power, run Euclid on G(t, 1), rehomogenize."""
    if f.field is not g.field:
        raise DomainError("forms over different fields")
    F = f.field
    yj = min(f.y_multiplicity(), g.y_multiplicity())
    u = upoly.gcd(F, f.dehomogenize(), g.dehomogenize())
    core = BinaryForm.from_univariate(F, u)
    if yj:
        core = core * BinaryForm.monomial(F, 0, yj)
    return core.monic()


class LinearForm:
    """``alpha*x + beta*y`` normalized so that alpha = 1, or alpha = 0 and beta = 1."""

    __slots__ = ("field", "alpha", "beta")

    def __init__(self, field: Field, alpha: int, beta: int):
        if alpha == 0 and beta == 0:
            raise DomainError("zero linear form")
        if alpha:
            if alpha != 1:
                beta = field.div(beta, alpha)
                alpha = 1
        else:
            beta = 1
        self.field = field
        self.alpha = alpha
        self.beta = beta

    @classmethod
    def from_form(cls, f: BinaryForm):
        if f.degree != 1:
            raise DomainError("not a linear form")
        return cls(f.field, f.coeffs[0], f.coeffs[1])

    def as_form(self) -> BinaryForm:
        return BinaryForm(self.field, (self.alpha, self.beta))

    def sort_key(self):
        F = self.field
        # x first, then y, then x + beta*y ordered by beta's coefficient vector
        if self.alpha == 1 and self.beta == 0:
            return (0, ())
        if self.alpha == 0:
            return (1, ())
        return (2, F.to_vector(self.beta))

    def embed(self, target: Field) -> "LinearForm":
        m = embedding_code_map(self.field, target)
        return LinearForm(target, m(self.alpha), m(self.beta))

    def __eq__(self, other):
        return (
            isinstance(other, LinearForm)
            and other.field is self.field
            and (other.alpha, other.beta) == (self.alpha, self.beta)
        )

    def __hash__(self):
        return hash((id(self.field), self.alpha, self.beta))

    def __repr__(self):
        return "LinearForm(%s)" % self.as_form().to_string()

    def to_json(self) -> dict:
        F = self.field
        return {"alpha": F.format(self.alpha), "beta": F.format(self.beta)}


class LinearFactorization:
    """``unit * prod(l_i ** a_i)`` over ``field``."""

    def __init__(self, field: Field, unit: int, factors: list):
        if unit == 0:
            raise DomainError("zero unit")
        self.field = field
        self.unit = unit
        self.factors = list(factors)

    @property
    def forms(self) -> list:
        return [l for l, _ in self.factors]

    @property
    def multiplicities(self) -> list:
        return [m for _, m in self.factors]

    @property
    def degree(self) -> int:
        return sum(self.multiplicities)

    def expand(self) -> BinaryForm:
        out = BinaryForm.constant(self.field, self.unit)
        for l, m in self.factors:
            out = out * (l.as_form() ** m)
        return out

    def to_json(self) -> dict:
        F = self.field
        return {
            "unit": F.format(self.unit),
            "factors": [dict(l.to_json(), mult=m) for l, m in self.factors],
            "field": F.describe(),
        }

    def __repr__(self):
        body = " * ".join("(%s)^%d" % (l.as_form().to_string(), m) for l, m in self.factors)
        return "LinearFactorization(%s * %s)" % (self.field.format(self.unit), body)


def factor_linear(G: BinaryForm, seed: int = DEFAULT_SEED) -> LinearFactorization:
    """Factor ``G`` into linear forms over its splitting field."""
    return factor_product([(G, 1)], seed=seed)


def factor_product(pieces: Iterable, seed: int = DEFAULT_SEED) -> LinearFactorization:
    """Factor ``prod(G_i ** e_i)`` without expanding the product.

    The splitting field is F_{p^(k L)} where F_{p^k} is the input field and
    L is the lcm of the degrees of the irreducible factors.  When L = 1 the
    input field itself is kept.
    """
    pieces = [(G, int(e)) for G, e in pieces if e]
    if not pieces:
        raise DomainError("empty product")
    F0 = pieces[0][0].field
    for G, e in pieces:
        if G.field is not F0:
            raise DomainError("factors over different fields")
        if e < 0:
            raise DomainError("negative exponent")
    if sum(G.degree * e for G, e in pieces) == 0:
        raise DomainError("constant input has no linear factorization")
    unit = 1
    xmult = ymult = 0
    parts = []  # (monic square-free univariate, multiplicity)
    L = 1
    for G, e in pieces:
        xi, yj = G.x_multiplicity(), G.y_multiplicity()
        xmult += xi * e
        ymult += yj * e
        core = list(G.coeffs[yj : len(G.coeffs) - xi])
        lead = core[0]
        unit = F0.mul(unit, F0.pow(lead, e))
        g = upoly.monic(F0, list(reversed(core)))
        if len(g) <= 1:
            continue
        for h, m in upoly.squarefree_decomposition(F0, g):
            for dg in upoly.ddf_degrees(F0, h):
                L = L * dg // math.gcd(L, dg)
            parts.append((h, m * e))
    K = F0 if L == 1 else make_field(F0.p, F0.k * L)
    emb = embedding_code_map(F0, K)
    rng = random.Random(seed)
    mults: dict = {}
    if xmult:
        mults[LinearForm(K, 1, 0)] = xmult
    if ymult:
        mults[LinearForm(K, 0, 1)] = ymult
    for h, m in parts:
        hk = [emb(c) for c in h]
        roots = upoly.split_roots(K, hk, rng)
        if len(roots) != len(h) - 1:
            raise DomainError("factor did not split over the computed field")
        for r in sorted(roots, key=K.sort_key):
            lf = LinearForm(K, 1, K.neg(r))
            mults[lf] = mults.get(lf, 0) + m
    factors = sorted(mults.items(), key=lambda it: it[0].sort_key())
    return LinearFactorization(K, emb(unit), factors)
