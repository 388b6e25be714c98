"""Exact rationals and base-p expansions.

All values are :class:`fractions.Fraction`.  Expansions follow the
non-terminating convention throughout: a positive rational is split as
``alpha = N + beta`` with ``N`` an integer and ``0 < beta <= 1``, and ``beta``
is expanded so that no expansion ends in zeros.  Thus ``1 = (0.(p-1)(p-1)...)_p``
and the truncation of an integer ``N`` at level 0 is ``N - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import DomainError, ParseError

__all__ = [
    "Rational",
    "DigitVector",
    "as_rational",
    "split",
    "truncate",
    "truncate_vector",
    "digit_at",
    "digits",
    "digit_vector",
    "mult_order",
    "digit_period",
    "p_valuation",
    "is_power_of",
    "format_rational",
    "parse_rational",
]

Rational = Fraction


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise DomainError("expected an exact rational, got %r" % (x,))


def _check_prime_like(p: int) -> None:
    if not isinstance(p, int) or p < 2:
        raise DomainError("base must be an integer >= 2, got %r" % (p,))


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def split(alpha) -> tuple[int, Fraction]:
    """Return ``(N, beta)`` with ``alpha = N + beta`` and ``0 < beta <= 1``."""
    alpha = as_rational(alpha)
    if alpha <= 0:
        raise DomainError("expansion needs a positive rational, got %s" % alpha)
    n = _ceil(alpha) - 1
    return n, alpha - n


def truncate(alpha, p: int, e: int) -> Fraction:
    """The unique ``lam`` with denominator dividing ``p**e`` and ``lam < alpha <= lam + p**-e``."""
    alpha = as_rational(alpha)
    _check_prime_like(p)
    if e < 0:
        raise DomainError("truncation level must be >= 0")
    if alpha <= 0:
        raise DomainError("truncation needs a positive rational, got %s" % alpha)
    q = p**e
    return Fraction(_ceil(alpha * q) - 1, q)


def truncate_vector(t: Sequence, p: int, e: int) -> tuple[Fraction, ...]:
    return tuple(truncate(x, p, e) for x in t)


def digit_at(alpha, p: int, s: int) -> int:
    """The ``s``-th digit (``s >= 1``) of the fractional part of ``alpha``."""
    _check_prime_like(p)
    if s < 1:
        raise DomainError("digit positions start at 1")
    _, beta = split(alpha)
    hi = _ceil(beta * p**s) - 1
    lo = _ceil(beta * p ** (s - 1)) - 1
    return hi - p * lo


def digits(alpha, p: int) -> Iterator[int]:
    """Lazy stream of the digits of the fractional part of ``alpha``."""
    _check_prime_like(p)
    _, x = split(alpha)
    while True:
        x *= p
        d = _ceil(x) - 1
        x -= d
        yield d


@dataclass(frozen=True)
class DigitVector:
    """A finite run of base-p digits."""

    p: int
    digits: tuple[int, ...]

    def __post_init__(self):
        _check_prime_like(self.p)
        for d in self.digits:
            if not 0 <= d < self.p:
                raise DomainError("digit %r out of range for base %d" % (d, self.p))

    def value(self) -> Fraction:
        return sum((Fraction(d, self.p ** (s + 1)) for s, d in enumerate(self.digits)), Fraction(0))

    def __len__(self):
        return len(self.digits)


def digit_vector(alpha, p: int, e: int) -> DigitVector:
    out = []
    it = digits(alpha, p)
    for _ in range(e):
        out.append(next(it))
    return DigitVector(p, tuple(out))


def mult_order(p: int, b: int) -> int:
    """Least ``mu >= 1`` with ``p**mu == 1 (mod b)``."""
    if b < 1:
        raise DomainError("modulus must be positive")
    if math.gcd(p, b) != 1:
        raise DomainError("%d and %d are not coprime" % (p, b))
    if b == 1:
        return 1
    # the order divides Carmichael's lambda, which divides phi; walk the divisors of phi
    phi = _totient(b)
    best = phi
    for f in _prime_factors(phi):
        while best % f == 0 and pow(p, best // f, b) == 1:
            best //= f
    return best


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _totient(n: int) -> int:
    r = n
    for f in _prime_factors(n):
        r -= r // f
    return r


def p_valuation(n: int, p: int) -> int:
    if n == 0:
        raise DomainError("valuation of zero")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_power_of(q: int, p: int) -> bool:
    if q < 1:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def digit_period(alpha, p: int) -> tuple[int, int]:
    """``(preperiod, period)`` of the non-terminating digit stream of ``alpha``.

    Digits from position ``preperiod + 1`` on repeat with the given period.
    """
    _, beta = split(alpha)
    den = beta.denominator
    k = 0
    while den % p == 0:
        den //= p
        k += 1
    return k, mult_order(p, den)


def format_rational(x) -> str:
    x = as_rational(x)
    return "%d/%d" % (x.numerator, x.denominator)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError("not a rational: %r" % (text,)) from exc
