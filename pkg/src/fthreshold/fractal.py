"""The syzygy gap fractal Delta, the colength function Phi and the regions
they cut out of the positive orthant.

For a system of pairwise prime linear forms ``l = (l_1, ..., l_n)`` and an
ideal ``b = <U, V>``, a grid point ``a/q`` (q a power of p) is in the upper
region exactly when ``l^a`` lies in the Frobenius power ``b^[q]``.  Two
independent membership routes are provided:

* ``direct``: expand ``l^a`` and solve the graded linear system for ``b^[q]``;
* ``chain``: write ``a = q N + r`` and walk the base-p digits of ``r``,
  replacing the ideal by ``(J^[p] : l^d)`` at each digit.  The walk is
  memoized in a trie so that nearby points share work.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import as_rational, is_power_of
from .errors import DomainError, ResourceError
from .poly import BinaryForm, LinearForm
from .syzygy import UNIT, TwoGenIdeal, colength, colon, member, syzygy_gap

__all__ = [
    "LinearSystem",
    "GridPoint",
    "CriticalPoint",
    "Fractal",
    "ColonChain",
    "delta_at",
    "phi_at",
    "in_upper",
    "is_critical",
    "find_critical_below",
    "critical_points_in_box",
    "grid_sweep",
    "GridCell",
    "boundary_by_chain",
    "SliceCell",
    "staircase_sweep",
    "boundary_digit_predicate",
    "DEFAULT_CELL_CAP",
]

log = logging.getLogger(__name__)

DEFAULT_CELL_CAP = 200_000


class LinearSystem:
    """An ordered tuple of pairwise prime linear forms over one field."""

    def __init__(self, forms: Sequence[LinearForm]):
        forms = list(forms)
        if not forms:
            raise DomainError("a linear system needs at least one form")
        field = forms[0].field
        for l in forms:
            if l.field is not field:
                raise DomainError("linear forms over different fields")
        for i in range(len(forms)):
            for j in range(i):
                a, b = forms[i], forms[j]
                det = field.sub(field.mul(a.alpha, b.beta), field.mul(a.beta, b.alpha))
                if det == 0:
                    raise DomainError("linear forms %d and %d are proportional" % (j + 1, i + 1))
        self.forms = forms
        self.field = field
        self._pow_cache: dict = {}

    @classmethod
    def from_forms(cls, forms: Sequence[BinaryForm]):
        return cls([LinearForm.from_form(f) for f in forms])

    @property
    def n(self) -> int:
        return len(self.forms)

    def _single_power(self, i: int, k: int) -> BinaryForm:
        key = (i, k)
        f = self._pow_cache.get(key)
        if f is None:
            f = self.forms[i].as_form() ** k
            if len(self._pow_cache) < 10000:
                self._pow_cache[key] = f
        return f

    def power(self, a: Sequence[int]) -> BinaryForm:
        """The product l_1^a_1 ... l_n^a_n."""
        if len(a) != self.n:
            raise DomainError("exponent vector has length %d, expected %d" % (len(a), self.n))
        out = None
        for i, k in enumerate(a):
            if k < 0:
                raise DomainError("negative exponent")
            if k:
                f = self._single_power(i, k)
                out = f if out is None else out * f
        return out if out is not None else BinaryForm.constant(self.field)

    def __repr__(self):
        return "LinearSystem(%s)" % ", ".join(l.as_form().to_string() for l in self.forms)


@dataclass(frozen=True)
class GridPoint:
    """The point a/q, q a power of p."""

    p: int
    q: int
    a: tuple

    def __post_init__(self):
        if not is_power_of(self.q, self.p):
            raise DomainError("q = %d is not a power of p = %d" % (self.q, self.p))
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if any(x < 0 for x in self.a):
            raise DomainError("grid points live in the positive orthant")

    @classmethod
    def from_rationals(cls, t: Sequence, p: int) -> "GridPoint":
        t = [as_rational(x) for x in t]
        q = 1
        for x in t:
            d = x.denominator
            if not is_power_of(d, p):
                raise DomainError("%s does not have a power of %d as denominator" % (x, p))
            q = max(q, d)
        return cls(p, q, tuple(int(x * q) for x in t))

    @property
    def e(self) -> int:
        e, q = 0, self.q
        while q > 1:
            q //= self.p
            e += 1
        return e

    def rationals(self) -> tuple:
        return tuple(Fraction(x, self.q) for x in self.a)

    def norm(self) -> Fraction:
        return Fraction(sum(self.a), self.q)

    def reduced(self) -> "GridPoint":
        a, q = self.a, self.q
        while q > 1 and all(x % self.p == 0 for x in a):
            a = tuple(x // self.p for x in a)
            q //= self.p
        return GridPoint(self.p, q, a)

    def scaled(self, q: int) -> "GridPoint":
        """Same point written over the larger denominator q."""
        if q % self.q:
            raise DomainError("cannot rewrite over a smaller denominator")
        return GridPoint(self.p, q, tuple(x * (q // self.q) for x in self.a))

    def to_json(self) -> dict:
        return {"a": list(self.a), "q": self.q}


@dataclass(frozen=True)
class CriticalPoint:
    point: GridPoint
    delta_value: Fraction

    def to_json(self) -> dict:
        d = self.point.to_json()
        d["delta"] = "%d/%d" % (self.delta_value.numerator, self.delta_value.denominator)
        return d


class _Node:
    __slots__ = ("state", "children")

    def __init__(self, state):
        self.state = state
        self.children = {}


class ColonChain:
    """Memoized digit walk deciding l^a in b^[q] through colon ideals.

    With ``a = qN + r`` and ``r`` written in base p, ``l^a`` is in ``b^[q]``
    iff the ideal ``(b : l^N)`` followed by ``J -> (J^[p] : l^d)`` for each
    digit vector ``d`` of ``r`` (most significant first) ends at the unit
    ideal.  This rests on flatness of Frobenius: ``(I : f)^[p] = (I^[p] : f^p)``.
    """

    def __init__(self, system: LinearSystem, ideal: TwoGenIdeal):
        self.system = system
        self.ideal = ideal
        self.p = system.field.p
        self._roots: dict = {}
        self._digit_power: dict = {}

    def _lpow(self, d):
        f = self._digit_power.get(d)
        if f is None:
            f = self.system.power(d)
            self._digit_power[d] = f
        return f

    def root(self, N: tuple) -> _Node:
        node = self._roots.get(N)
        if node is None:
            b = self.ideal
            s = sum(N)
            if s == 0:
                state = b
            elif s >= b.deg_uv - 1:
                state = UNIT
            else:
                state = colon(b, self.system.power(N))
            node = _Node(state)
            self._roots[N] = node
        return node

    def child(self, node: _Node, d: tuple) -> _Node:
        st = node.state
        if st is UNIT:
            return node
        ch = node.children.get(d)
        if ch is None:
            fp = st.frobenius_power(self.p)
            s = sum(d)
            if s == 0:
                state = fp
            elif s >= fp.deg_uv - 1:
                state = UNIT
            else:
                state = colon(fp, self._lpow(d))
            ch = _Node(state)
            node.children[d] = ch
        return ch

    def node_for(self, a: Sequence[int], q: int) -> _Node:
        p = self.p
        N = tuple(x // q for x in a)
        r = [x % q for x in a]
        node = self.root(N)
        step = q // p
        while step >= 1 and node.state is not UNIT:
            d = tuple((x // step) % p for x in r)
            node = self.child(node, d)
            step //= p
        return node

    def member(self, a: Sequence[int], q: int) -> bool:
        return self.node_for(a, q).state is UNIT


class Fractal:
    """Delta, Phi and region queries for a fixed pair (l, b)."""

    def __init__(self, system: LinearSystem, ideal: TwoGenIdeal):
        if ideal.field is not system.field:
            ideal = ideal.embed(system.field)
        self.system = system
        self.ideal = ideal
        self.p = system.field.p
        self.n = system.n
        self.deg_uv = ideal.deg_uv
        self.chain = ColonChain(system, ideal)
        self._frob = {1: ideal}

    def frob(self, q: int) -> TwoGenIdeal:
        I = self._frob.get(q)
        if I is None:
            I = self.ideal.frobenius_power(q)
            self._frob[q] = I
        return I

    def _check(self, t: GridPoint):
        if t.p != self.p:
            raise DomainError("grid point base %d differs from the characteristic %d" % (t.p, self.p))
        if len(t.a) != self.n:
            raise DomainError("grid point has %d coordinates, expected %d" % (len(t.a), self.n))

    def delta(self, t: GridPoint) -> Fraction:
        self._check(t)
        q = t.q
        s = sum(t.a)
        if s >= q * self.deg_uv:
            return Fraction(s - q * self.deg_uv, q)
        I = self.frob(q)
        return Fraction(syzygy_gap(I.U, I.V, self.system.power(t.a), verify=False), q)

    def phi(self, t: GridPoint) -> Fraction:
        self._check(t)
        I = self.frob(t.q)
        return Fraction(colength((I.U, I.V, self.system.power(t.a))), t.q * t.q)

    def in_upper(self, t: GridPoint, method: str = "chain") -> bool:
        self._check(t)
        if sum(t.a) >= t.q * self.deg_uv:
            return True
        if method == "chain":
            return self.chain.member(t.a, t.q)
        if method == "direct":
            return member(self.frob(t.q), self.system.power(t.a))
        if method == "both":
            c = self.chain.member(t.a, t.q)
            d = member(self.frob(t.q), self.system.power(t.a))
            if c != d:
                from .errors import InternalConsistencyError

                raise InternalConsistencyError("membership routes disagree at %r" % (t,))
            return c
        raise DomainError("unknown membership method %r" % (method,))

    def is_critical(self, c: GridPoint, method: str = "chain") -> bool:
        if not self.in_upper(c, method):
            return False
        for i, x in enumerate(c.a):
            if x > 0:
                a = list(c.a)
                a[i] -= 1
                if self.in_upper(GridPoint(c.p, c.q, tuple(a)), method):
                    return False
        return True

    def find_critical_below(self, u: GridPoint, method: str = "chain"):
        """A critical point c <= u, or None when u is not in the upper region.

        Coordinates are lowered one at a time, last coordinate first, each to
        the least value that keeps the point in the upper region.  Since the
        upper region is an upper set, one pass ends at a point from which no
        single coordinate can be lowered, i.e. a critical point.
        """
        self._check(u)
        if not self.in_upper(u, method):
            return None
        a = list(u.a)
        q = u.q
        for i in range(self.n - 1, -1, -1):

            def test(v, i=i):
                b = list(a)
                b[i] = v
                return self.in_upper(GridPoint(self.p, q, tuple(b)), method)

            a[i] = _least_true(test, a[i])
        c = GridPoint(self.p, q, tuple(a))
        return CriticalPoint(c, self.deg_uv - c.norm())


def _least_true(test, hi: int) -> int:
    """Least v in [0, hi] with test(v), for a monotone test with test(hi) true."""
    lo = -1
    step = 1
    while True:
        cand = hi - step
        if cand <= lo:
            break
        if test(cand):
            hi = cand
            step *= 2
        else:
            lo = cand
            break
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if test(mid):
            hi = mid
        else:
            lo = mid
    return hi


_contexts: dict = {}


def _context(system: LinearSystem, ideal: TwoGenIdeal) -> Fractal:
    key = (id(system), id(ideal))
    hit = _contexts.get(key)
    if hit is not None and hit[0] is system and hit[1] is ideal:
        return hit[2]
    ctx = Fractal(system, ideal)
    if len(_contexts) >= 32:
        _contexts.pop(next(iter(_contexts)))
    _contexts[key] = (system, ideal, ctx)
    return ctx


def delta_at(system: LinearSystem, ideal: TwoGenIdeal, t: GridPoint) -> Fraction:
    return _context(system, ideal).delta(t)


def phi_at(system: LinearSystem, ideal: TwoGenIdeal, t: GridPoint) -> Fraction:
    return _context(system, ideal).phi(t)


def in_upper(system: LinearSystem, ideal: TwoGenIdeal, t: GridPoint, method: str = "chain") -> bool:
    return _context(system, ideal).in_upper(t, method)


def is_critical(system: LinearSystem, ideal: TwoGenIdeal, c: GridPoint, method: str = "chain") -> bool:
    return _context(system, ideal).is_critical(c, method)


def find_critical_below(system: LinearSystem, ideal: TwoGenIdeal, u: GridPoint, method: str = "chain"):
    return _context(system, ideal).find_critical_below(u, method)


def _box_ranges(box, q: int):
    ranges = []
    for lo, hi in box:
        lo, hi = as_rational(lo), as_rational(hi)
        if lo < 0 or hi < lo:
            raise DomainError("bad box side [%s, %s]" % (lo, hi))
        a0 = -((-lo.numerator * q) // lo.denominator)
        a1 = (hi.numerator * q) // hi.denominator
        ranges.append(range(a0, a1 + 1))
    return ranges


def _cell_count(ranges) -> int:
    n = 1
    for r in ranges:
        n *= len(r)
    return n


def critical_points_in_box(system, ideal, box, q: int, method: str = "chain", cell_cap: int = DEFAULT_CELL_CAP):
    """All critical points a/q with a/q inside the box."""

    ctx = _context(system, ideal)
    ranges = _box_ranges(box, q)
    if _cell_count(ranges) > cell_cap:
        raise ResourceError("box has %d cells, cap is %d" % (_cell_count(ranges), cell_cap))
    out = []
    for a in itertools.product(*ranges):
        c = GridPoint(ctx.p, q, a)
        if ctx.is_critical(c, method):
            out.append(CriticalPoint(c, ctx.deg_uv - c.norm()))
    return out


@dataclass(frozen=True)
class GridCell:
    a: tuple
    q: int
    delta: Fraction | None
    upper: bool

    @property
    def region(self) -> str:
        return "U" if self.upper else "L"


def grid_sweep(system, ideal, box, q: int, cell_cap: int = DEFAULT_CELL_CAP, with_delta: bool = True, norm=None):
    """Evaluate Delta and the region at every a/q in the box.

    ``norm`` restricts to the slice sum(a)/q == norm.  Cells come back in
    row-major order, the last coordinate varying fastest.
    """

    ctx = _context(system, ideal)
    ranges = _box_ranges(box, q)
    if len(ranges) != ctx.n:
        raise DomainError("box has %d sides, expected %d" % (len(ranges), ctx.n))
    total = _cell_count(ranges)
    if total > cell_cap:
        raise ResourceError("grid has %d cells, cap is %d" % (total, cell_cap))
    target = None if norm is None else as_rational(norm) * q
    out = []
    for a in itertools.product(*ranges):
        if target is not None and sum(a) != target:
            continue
        t = GridPoint(ctx.p, q, a)
        d = ctx.delta(t) if with_delta else None
        out.append(GridCell(a, q, d, ctx.in_upper(t)))
    return out


@dataclass(frozen=True)
class SliceCell:
    a: tuple
    q: int
    delta: Fraction | None
    region: str  # "B" on the boundary, "U" strictly inside the upper region


def staircase_sweep(system, ideal, q: int, box=None, cell_cap: int = DEFAULT_CELL_CAP):
    """Classify the grid points a/q of the hyperplane ||a/q|| = deg UV as
    boundary points or interior points of the upper region.

    The box defaults to [0, deg UV] on every side.
    """

    ctx = _context(system, ideal)
    if box is None:
        box = [(0, ctx.deg_uv)] * ctx.n
    ranges = _box_ranges(box, q)
    if len(ranges) != ctx.n:
        raise DomainError("box has %d sides, expected %d" % (len(ranges), ctx.n))
    total = _cell_count(ranges[:-1])
    if total > cell_cap:
        raise ResourceError("slice has up to %d cells, cap is %d" % (total, cell_cap))
    target = q * ctx.deg_uv
    last = ranges[-1]
    out = []
    for head in itertools.product(*ranges[:-1]):
        k = target - sum(head)
        if k not in last:
            continue
        a = head + (k,)
        u = [Fraction(x, q) for x in a]
        region = "B" if boundary_by_chain(system, ideal, u) else "U"
        out.append(SliceCell(a, q, Fraction(0), region))
    return out


def boundary_by_chain(system, ideal, u: Sequence, max_steps: int = 10_000) -> bool:
    """For u on the hyperplane ||u|| = deg UV, decide whether u is on the
    boundary between the upper and lower regions, i.e. whether every
    truncation <u>_e lies outside the upper region.

    Zero coordinates stay zero.  The colon chain along the truncations has
    finitely many states (the generator degree sum stays at most n), and the
    digits of u are eventually periodic, so a repeated (state, phase) pair
    proves that the unit ideal is never reached.
    """
    from .arith import digit_period, split

    ctx = _context(system, ideal)
    u = [as_rational(x) for x in u]
    if sum(u) != ctx.deg_uv:
        raise DomainError("point is not on the boundary hyperplane of the trivial region")
    p = ctx.p
    N = []
    betas = []
    pre, per = 0, 1
    for x in u:
        if x == 0:
            N.append(0)
            betas.append(None)
            continue
        n0, beta = split(x)
        N.append(n0)
        betas.append(beta)
        k, mu = digit_period(beta, p)
        pre = max(pre, k)
        per = per * mu // math.gcd(per, mu)
    node = ctx.chain.root(tuple(N))
    if node.state is UNIT:
        return False
    # digit state: remainders x in (0, 1] scaled by p each step
    rem = [b for b in betas]
    seen = set()
    for e in range(1, max_steps + 1):
        d = []
        for i, b in enumerate(rem):
            if b is None:
                d.append(0)
                continue
            v = b * p
            dig = -((-v.numerator) // v.denominator) - 1
            d.append(dig)
            rem[i] = v - dig
        node = ctx.chain.child(node, tuple(d))
        if node.state is UNIT:
            return False
        if e >= pre:
            key = (node.state.key(), (e - pre) % per)
            if key in seen:
                return True
            seen.add(key)
    raise ResourceError("no decision after %d digits" % max_steps)


def _expansions(x: Fraction, p: int, length: int):
    """Digit lists (positions 1..length) of the base-p expansions of x in [0, 1]."""
    out = []
    if x == 0:
        return [[0] * length]
    if x > 1:
        return []
    # non-terminating
    v, digs = x, []
    for _ in range(length):
        v *= p
        d = -((-v.numerator) // v.denominator) - 1
        digs.append(d)
        v -= d
    out.append(digs)
    if x < 1 and is_power_of(x.denominator, p):
        v, digs = x, []
        for _ in range(length):
            v *= p
            d = v.numerator // v.denominator
            digs.append(d)
            v -= d
        out.append(digs)
    return out


def boundary_digit_predicate(u: Sequence, p: int) -> bool:
    """For three coordinates with denominators powers of p: is there a choice
    of base-p expansions whose digits add up to 2p - 2 at every position?"""

    u = [as_rational(x) for x in u]
    e = 0
    for x in u:
        d = x.denominator
        k = 0
        while d > 1:
            d //= p
            k += 1
        e = max(e, k)
    length = e + 1
    choices = [_expansions(x, p, length) for x in u]
    for combo in itertools.product(*choices):
        if all(sum(c[s] for c in combo) == 2 * p - 2 for s in range(length)):
            return True
    return False
