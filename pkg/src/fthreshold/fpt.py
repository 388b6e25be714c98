"""F-thresholds and F-pure thresholds of binary forms and quasi-homogeneous
polynomials in two variables.

The central routine is :func:`ft_general`.  For ``l^a`` and ``b = <U, V>`` it
walks the truncations of ``lam * a`` (``lam = deg UV / |a|``) through the
colon chain.  The first truncation that lands in the upper region sits over a
unique critical point, which determines the threshold.  If no truncation ever
lands there, the threshold is ``lam`` itself.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import as_rational, digit_period, format_rational, mult_order, p_valuation, split, truncate
from .errors import DomainError, InternalConsistencyError, ResourceError
from .fractal import CriticalPoint, GridPoint, LinearSystem, _context
from .parse import Sparse
from .poly import DEFAULT_SEED, BinaryForm, LinearFactorization, factor_linear, factor_product
from .syzygy import UNIT, TwoGenIdeal, maximal_ideal, member

__all__ = [
    "FptConfig",
    "FptResult",
    "Degenerate",
    "CriticalPointProvenance",
    "TrivialRegion",
    "ClosedFormN3",
    "CertifiedOnly",
    "ft_general",
    "fpt_homogeneous",
    "fpt_n3_closed_form",
    "fpt_quasi_homogeneous",
    "nu_oracle",
    "lct_expected",
    "denominator_analysis",
]

log = logging.getLogger(__name__)

DEFAULT_E_MAX = 40
DEFAULT_NU_CAP = 20_000


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise DomainError("%s must be an integer, got %r" % (name, raw)) from None


@dataclass
class FptConfig:
    e_max: int = field(default_factory=lambda: _env_int("FTHRESHOLD_E_MAX", DEFAULT_E_MAX))
    seed: int = DEFAULT_SEED
    debug_oracle: bool = False
    keep_diagnostics: bool = True


# provenance records


@dataclass(frozen=True)
class Degenerate:
    index: int  # position of the offending factor (1-based)
    kind: str = "linear"

    def to_json(self):
        return {"kind": "Degenerate", "index": self.index, "factor": self.kind}


@dataclass(frozen=True)
class CriticalPointProvenance:
    critical: CriticalPoint
    e: int

    def to_json(self):
        return {"kind": "CriticalPoint", "e": self.e, "critical_point": self.critical.to_json()}


@dataclass(frozen=True)
class TrivialRegion:
    reason: str = ""

    def to_json(self):
        return {"kind": "TrivialRegion", "reason": self.reason}


@dataclass(frozen=True)
class ClosedFormN3:
    case: str
    critical: CriticalPoint | None = None

    def to_json(self):
        d = {"kind": "ClosedFormN3", "case": self.case}
        if self.critical is not None:
            d["critical_point"] = self.critical.to_json()
        return d


@dataclass(frozen=True)
class CertifiedOnly:
    e_max: int

    def to_json(self):
        return {"kind": "CertifiedOnly", "e_max": self.e_max}


@dataclass
class FptResult:
    value: Fraction | None
    provenance: object
    lam: Fraction
    p: int
    interval: tuple | None = None
    e_used: int = 0
    critical_point: GridPoint | None = None
    diagnostics: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.value is not None

    @property
    def denominator_analysis(self) -> dict | None:
        if self.value is None:
            return None
        den = self.value.denominator
        m = p_valuation(den, self.p)
        return {"k": den // self.p**m, "p_power": m}

    def to_json(self, diagnostics: bool = False) -> dict:
        if self.value is not None:
            val = format_rational(self.value)
        else:
            lo, hi = self.interval
            val = {"lo": format_rational(lo), "hi": format_rational(hi)}
        d = {
            "value": val,
            "provenance": self.provenance.to_json(),
            "lambda": format_rational(self.lam),
            "e_used": self.e_used,
            "critical_point": self.critical_point.to_json() if self.critical_point is not None else None,
            "denominator_analysis": self.denominator_analysis,
        }
        d.update(self.extra)
        if diagnostics:
            d["diagnostics"] = [
                {"e": e, "truncation": [format_rational(x) for x in t], "upper": flag} for e, t, flag in self.diagnostics
            ]
        return d


def denominator_analysis(value: Fraction, p: int) -> tuple[int, int]:
    """Split the minimal denominator of ``value`` as ``k * p**m`` with p not dividing k."""
    den = as_rational(value).denominator
    m = p_valuation(den, p)
    return den // p**m, m


# the main loop


class _DigitStreams:
    """Digits of the fractional parts of a vector, in lock step, non-terminating."""

    def __init__(self, betas, p):
        self.rem = list(betas)
        self.p = p

    def next(self):
        p = self.p
        out = []
        for i, b in enumerate(self.rem):
            v = b * p
            d = -((-v.numerator) // v.denominator) - 1
            out.append(d)
            self.rem[i] = v - d
        return tuple(out)


def _period_data(values, p):
    pre, per = 0, 1
    for x in values:
        k, mu = digit_period(x, p)
        pre = max(pre, k)
        per = per * mu // math.gcd(per, mu)
    return pre, per


def ft_general(system: LinearSystem, a: Sequence[int], ideal: TwoGenIdeal, cfg: FptConfig | None = None, fpt_context: bool = False) -> FptResult:
    """The F-threshold of ``l^a`` with respect to ``ideal``.

    ``fpt_context`` marks calls whose answer is the F-pure threshold of some
    polynomial (``ideal`` the maximal ideal, or the quasi-homogeneous
    reduction).  Only then may the search stop at the multiplicative order.
    """
    cfg = cfg or FptConfig()
    a = tuple(int(x) for x in a)
    if len(a) != system.n:
        raise DomainError("exponent vector has length %d, expected %d" % (len(a), system.n))
    if any(x <= 0 for x in a):
        raise DomainError("exponents must be positive")
    ctx = _context(system, ideal)
    p = ctx.p
    norm_a = sum(a)
    lam = Fraction(ctx.deg_uv, norm_a)
    target = [lam * x for x in a]
    N = []
    betas = []
    for x in target:
        n0, beta = split(x)
        N.append(n0)
        betas.append(beta)
    N = tuple(N)
    pre, per = _period_data(target, p)

    # The search bound.  ft < lam exactly when some
    # truncation <lam a>_e is in the upper region.  If mu is the order of p
    # modulo den(lam) (prime to p) and ft < lam, then ft <= <lam>_mu, because
    # no F-pure threshold lies strictly between <lam>_mu and lam; and ft is
    # attained at ft * a, which is in the upper region.  Since
    # <lam>_mu * a <= <lam a>_mu coordinatewise and the upper region is an
    # upper set, <lam a>_mu is in the upper region.  So exhausting e <= mu
    # proves ft = lam.  The forbidden interval only concerns F-pure
    # thresholds with lam <= 1, hence the fpt_context flag.
    den = lam.denominator
    mu = None
    if den % p:
        mu = mult_order(p, den)
    if fpt_context and mu is not None and lam <= 1:
        bound, exact_bound = mu, True
    elif mu is not None:
        bound, exact_bound = max(cfg.e_max, 4 * mu), False
    else:
        bound, exact_bound = cfg.e_max, False

    diags = []
    node = ctx.chain.root(N)
    streams = _DigitStreams(betas, p)
    seen = set()
    trunc = [Fraction(x) for x in N]
    e = 0
    q = 1
    while True:
        hit = node.state is UNIT
        if cfg.keep_diagnostics:
            diags.append((e, tuple(trunc), hit))
        if hit:
            return _from_truncation(ctx, system, a, lam, trunc, e, q, diags, cfg)
        # a repeated (ideal, digit phase) pair means the walk is periodic and
        # never reaches the unit ideal: every truncation is outside the upper
        # region, so the threshold is lam
        if e >= pre:
            key = (node.state.key(), (e - pre) % per)
            if key in seen:
                return FptResult(lam, TrivialRegion("cycle"), lam, p, e_used=e, diagnostics=diags)
            seen.add(key)
        if e >= bound:
            break
        d = streams.next()
        e += 1
        q *= p
        trunc = [t + Fraction(di, q) for t, di in zip(trunc, d)]
        node = ctx.chain.child(node, d)

    if exact_bound:
        return FptResult(lam, TrivialRegion("order"), lam, p, e_used=e, diagnostics=diags)
    width = Fraction(max(system.n - 2, 0), q * norm_a)
    if width == 0:
        return FptResult(lam, TrivialRegion("no fractional critical points"), lam, p, e_used=e, diagnostics=diags)
    log.info("search exhausted at e=%d without a decision; returning an interval", e)
    return FptResult(None, CertifiedOnly(e), lam, p, interval=(lam - width, lam), e_used=e, diagnostics=diags)


def _from_truncation(ctx, system, a, lam, trunc, e, q, diags, cfg):
    p = ctx.p
    u = GridPoint(p, q, tuple(int(t * q) for t in trunc))
    cp = ctx.find_critical_below(u)
    if cp is None:
        raise InternalConsistencyError("truncation in the upper region has no critical point below it")
    c = cp.point
    value = max(Fraction(ci, q * ai) for ci, ai in zip(c.a, a))
    if not value < lam:
        raise InternalConsistencyError("critical point value %s is not below lambda %s" % (value, lam))
    return FptResult(value, CriticalPointProvenance(cp, e), lam, p, e_used=e, critical_point=c.reduced(), diagnostics=diags)


# homogeneous forms


def _as_factorization(G, seed) -> LinearFactorization:
    if isinstance(G, LinearFactorization):
        return G
    if isinstance(G, BinaryForm):
        if G.degree == 0:
            raise DomainError("a constant has no F-pure threshold")
        return factor_linear(G, seed=seed)
    pieces = list(G)
    if sum(f.degree * k for f, k in pieces) == 0:
        raise DomainError("a constant has no F-pure threshold")
    return factor_product(pieces, seed=seed)


def _expand(G):
    if isinstance(G, BinaryForm):
        return G
    if isinstance(G, LinearFactorization):
        return G.expand()
    out = None
    for f, k in G:
        f = f**k
        out = f if out is None else out * f
    return out


def fpt_homogeneous(G, cfg: FptConfig | None = None) -> FptResult:
    """F-pure threshold of a binary form.

    ``G`` may be a :class:`BinaryForm`, a list of ``(form, exponent)``
    pieces whose product is the form (never expanded), or a ready
    :class:`LinearFactorization`.
    """
    cfg = cfg or FptConfig()
    fac = _as_factorization(G, cfg.seed)
    K = fac.field
    p = K.p
    mults = fac.multiplicities
    d = fac.degree
    lam = Fraction(2, d)
    for i, m in enumerate(mults):
        if 2 * m > d:
            res = FptResult(Fraction(1, m), Degenerate(i + 1), lam, p)
            res.extra["factorization"] = fac.to_json()
            return res
    system = LinearSystem(fac.forms)
    res = ft_general(system, mults, maximal_ideal(K), cfg, fpt_context=True)
    res.extra["factorization"] = fac.to_json()
    if isinstance(res.provenance, CriticalPointProvenance):
        k, m = denominator_analysis(res.value, p)
        if m < 1 or not any(x % k == 0 for x in mults):
            raise InternalConsistencyError("denominator %d*%d^%d does not have the expected shape" % (k, p, m))
        e = res.e_used
        if k == 1 and m <= e and res.value != truncate(lam, p, e):
            raise InternalConsistencyError("threshold %s in Q_{p^%d} differs from the truncation of lambda" % (res.value, e))
    if cfg.debug_oracle and res.value is not None:
        form = _expand(G)
        nu = nu_oracle(form, maximal_ideal(form.field), 1)
        expect = math.ceil(p * res.value) - 1
        if nu != expect:
            raise InternalConsistencyError("nu(p) = %d but the threshold predicts %d" % (nu, expect))
    return res


# the case n = 3


def fpt_n3_closed_form(t: Sequence, p: int | None = None, ideal: TwoGenIdeal | None = None, system: LinearSystem | None = None, cfg: FptConfig | None = None) -> FptResult:
    """F-threshold of a point t in the positive octant for three linear forms,
    read off from base-p digits.

    With ``ideal=None`` the ideal is <x, y> and (for that ideal only) the
    linear forms may be taken to be x, y, x + y.
    """
    t = tuple(as_rational(x) for x in t)
    if len(t) != 3:
        raise DomainError("the closed form needs exactly three coordinates, got %d" % len(t))
    if any(x <= 0 for x in t):
        raise DomainError("coordinates must be positive")
    if p is None:
        src = ideal if ideal is not None else system
        if src is None:
            raise DomainError("give the characteristic or an ideal")
        p = src.field.p
    if ideal is None:
        from .gf import make_field

        F = system.field if system is not None else make_field(p, 1)
        ideal = maximal_ideal(F)
    if ideal.field.p != p:
        raise DomainError("ideal lives in characteristic %d, not %d" % (ideal.field.p, p))
    deg_uv = ideal.deg_uv
    norm_t = sum(t)
    lam = Fraction(deg_uv, norm_t)
    u = [lam * x for x in t]
    floor_u = tuple(x.numerator // x.denominator for x in u)

    if ideal.is_maximal():
        # the only integral critical points for <x, y> are the unit vectors
        for i, x in enumerate(u):
            if x >= 1:
                e_i = tuple(1 if j == i else 0 for j in range(3))
                cp = CriticalPoint(GridPoint(p, 1, e_i), Fraction(deg_uv - 1))
                return FptResult(1 / t[i], ClosedFormN3("1", cp), lam, p, critical_point=cp.point)
    else:
        if system is None:
            raise DomainError("a general ideal needs explicit linear forms")
        ctx = _context(system, ideal)
        base = GridPoint(p, 1, floor_u)
        if ctx.in_upper(base):
            cp = ctx.find_critical_below(base)
            value = max(Fraction(ci) / ti for ci, ti in zip(cp.point.a, t))
            return FptResult(value, ClosedFormN3("1", cp), lam, p, critical_point=cp.point)

    fracs = [x - fl for x, fl in zip(u, floor_u)]
    if any(f == 0 for f in fracs):
        raise InternalConsistencyError("integral coordinate outside case (1)")
    pre, per = _period_data(fracs, p)
    streams = _DigitStreams(fracs, p)
    for s in range(1, pre + per + 1):
        digs = streams.next()
        tot = sum(digs)
        if tot == 2 * p - 2:
            continue
        if tot == 2 * p - 3:
            return FptResult(lam, TrivialRegion("closed form case 2b-i"), lam, p, e_used=s)
        if tot == 2 * p - 1:
            c = [truncate(x, p, s) for x in u]
            q = p**s
            pt = GridPoint(p, q, tuple(int(x * q) for x in c))
            cp = CriticalPoint(pt, Fraction(1, q))
            value = max(ci / ti for ci, ti in zip(c, t))
            return FptResult(value, ClosedFormN3("2b-ii", cp), lam, p, e_used=s, critical_point=pt.reduced())
        raise InternalConsistencyError("digit sum %d at position %d is impossible" % (tot, s))
    # digits from pre+1 on repeat with period per, so the sums stay 2p-2 forever
    return FptResult(lam, TrivialRegion("closed form case 2a"), lam, p, e_used=pre + per)


# quasi-homogeneous polynomials


def _p_part(n: int, p: int) -> int:
    return p ** p_valuation(n, p)


def _qth_root_coeffs(F, coeffs, q: int):
    out = list(coeffs)
    while q > 1:
        out = [F.pth_root(c) for c in out]
        q //= F.p
    return out


def fpt_quasi_homogeneous(g: Sparse, weights: Sequence[int], cfg: FptConfig | None = None) -> FptResult:
    """F-pure threshold of ``g`` homogeneous for deg X = u, deg Y = v.

    ``g`` becomes the form ``G = g(x^u, y^v)`` and the F-pure threshold of g
    is the F-threshold of G with respect to <x^u, y^v>.  Besides the powers of
    x and y, G has the factors ``x^(uv) - mu y^(uv)``; writing ``uv = W * qb``
    with qb the p-part, each of these is ``(x^W - mu^(1/qb) y^W)^qb`` and the
    inner binomial is separable.
    """
    cfg = cfg or FptConfig()
    if not g.terms:
        raise DomainError("the zero polynomial has no threshold")
    u, v = (int(x) for x in weights)
    if u <= 0 or v <= 0:
        raise DomainError("weights must be positive")
    gd = math.gcd(u, v)
    u, v = u // gd, v // gd
    degs = g.weighted_degrees(u, v)
    if len(degs) > 1:
        raise DomainError("not quasi-homogeneous for weights (%d,%d)" % (u, v))
    F = g.field
    p = F.p
    if degs[0] == 0:
        raise DomainError("a constant has no F-pure threshold")
    if u == v:
        res = fpt_homogeneous(g.to_form(), cfg)
        return res
    j1 = min(i for i, _ in g.terms)
    j2 = min(j for _, j in g.terms)
    if len(g.terms) == 1:
        vals = [(Fraction(1, j), idx) for idx, j in ((1, j1), (2, j2)) if j]
        value, idx = min(vals)
        res = FptResult(value, Degenerate(idx, "monomial"), Fraction(u + v, degs[0]), p)
        return res
    # h = g / (X^j1 Y^j2) = H(X^v, Y^u)
    D = None
    hcoef = {}
    for (i, j), c in g.terms.items():
        i2, j2_ = i - j1, j - j2
        if i2 % v or j2_ % u:
            raise InternalConsistencyError("residual term X^%dY^%d is not in k[X^v, Y^u]" % (i2, j2_))
        a_, b_ = i2 // v, j2_ // u
        if D is None:
            D = a_ + b_
        hcoef[b_] = c
    H = BinaryForm(F, [hcoef.get(k, 0) for k in range(D + 1)])
    deg_G = u * j1 + v * j2 + u * v * D
    lam = Fraction(u + v, deg_G)
    Hfac = factor_linear(H, seed=cfg.seed)
    ks = Hfac.multiplicities
    info = {"weights": [u, v], "j": [j1, j2], "k": ks}

    def _done(res):
        res.extra["quasi_homogeneous"] = info
        return res

    # fast paths
    for i, k in enumerate(ks):
        if lam * k > 1:
            return _done(FptResult(Fraction(1, k), Degenerate(i + 1, "binomial"), lam, p))
    for idx, j in ((1, j1), (2, j2)):
        if j and lam * j > 1:
            return _done(FptResult(Fraction(1, j), Degenerate(idx, "x" if idx == 1 else "y"), lam, p))

    qb = _p_part(u * v, p)
    W = u * v // qb
    root = _qth_root_coeffs(F, H.coeffs, qb)
    coeffs = [0] * (D * W + 1)
    for k, c in enumerate(root):
        coeffs[k * W] = c
    pieces = []
    if j1:
        pieces.append((BinaryForm(F, (1, 0)), u * j1))
    if j2:
        pieces.append((BinaryForm(F, (0, 1)), v * j2))
    pieces.append((BinaryForm(F, coeffs), qb))
    fac = factor_product(pieces, seed=cfg.seed)
    K = fac.field
    system = LinearSystem(fac.forms)
    b = TwoGenIdeal(BinaryForm.monomial(K, u, 0), BinaryForm.monomial(K, 0, v), check=False)
    info.update({"qbar": qb, "n": system.n, "field": K.describe()})
    res = ft_general(system, fac.multiplicities, b, cfg, fpt_context=True)
    if res.value is not None and res.value > 1:
        raise InternalConsistencyError("F-pure threshold %s exceeds 1" % res.value)
    if res.value is not None and isinstance(res.provenance, CriticalPointProvenance):
        k, m = denominator_analysis(res.value, p)
        cands = [u * j1, v * j2] + list(ks)
        info["k_divides_multiplicity"] = any(c and c % k == 0 for c in cands)
    return _done(res)


# oracles and reference values


def nu_oracle(G: BinaryForm, ideal: TwoGenIdeal, e: int, cap: int = DEFAULT_NU_CAP) -> int:
    """max{a : G^a not in ideal^[p^e]}, by binary search on a."""
    if G.degree == 0:
        raise DomainError("nu needs a non-constant form")
    if e < 0:
        raise DomainError("e must be >= 0")
    if ideal.field is not G.field:
        raise DomainError("form and ideal over different fields")
    q = G.field.p**e
    top = q * ideal.deg_uv
    if top > cap:
        raise ResourceError("nu oracle would handle degree %d, cap is %d" % (top, cap))
    I = ideal.frobenius_power(q)
    d = G.degree
    # G^a has degree a*d; everything of degree >= top - 1 lies in I
    hi = -(-(top - 1) // d)
    powers = {}

    def inside(a):
        if a == 0:
            return False
        f = powers.get(a)
        if f is None:
            f = G**a
            powers[a] = f
        return member(I, f)

    lo = 0  # G^0 = 1 is never in a proper ideal
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if inside(mid):
            hi = mid
        else:
            lo = mid
    return lo


def lct_expected(multiplicities: Sequence[int], degree: int | None = None, weights: Sequence[int] = (1, 1)) -> Fraction:
    """Log canonical threshold predicted from the shape of a factorization.

    ``multiplicities`` are those of the distinct irreducible factors and
    ``degree`` the (weighted) degree, by default the sum of multiplicities
    (a product of linear forms).
    """
    mults = [int(m) for m in multiplicities]
    if not mults or any(m <= 0 for m in mults):
        raise DomainError("need positive multiplicities")
    u, v = weights
    if degree is None:
        degree = sum(mults)
    m = max(mults)
    if m * (u + v) > degree:
        return Fraction(1, m)
    return Fraction(u + v, degree)
