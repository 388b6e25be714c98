"""Finite fields F_p and F_p[a]/(m(a)).

A :class:`Field` works on small integer *codes*.  Code 0 is zero and code 1
is one in both internal representations:

* table fields (order up to ``TABLE_LIMIT``) use log codes, ``c >= 1``
  standing for ``g**(c-1)`` for a fixed primitive element ``g``.
  Multiplication adds exponents and addition goes through a Zech logarithm
  table, which is what the compiled kernels consume.
* larger fields use polynomial codes, the base-p integer whose digits are
  the coefficient vector (low degree first).

:class:`FieldElement` is the public value type.  It hides the codes and
exposes the coefficient vector.
"""

from __future__ import annotations

import itertools
import sys
import threading
from typing import Iterable, Sequence

import numpy as np

from . import upoly
from .errors import DomainError

__all__ = [
    "Field",
    "FieldElement",
    "make_field",
    "prime_field",
    "find_irreducible",
    "is_irreducible",
    "embed",
    "embedding_code_map",
]

TABLE_LIMIT = 1 << 17

_registry: dict = {}
_registry_lock = threading.RLock()


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Field:
    """The field F_p[a]/(modulus); construct through :func:`make_field`."""

    def __init__(self, p: int, modulus: Sequence[int], symbol: str = "a"):
        if not _is_prime(p):
            raise DomainError("characteristic must be prime, got %r" % (p,))
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) < 2 or modulus[-1] != 1:
            raise DomainError("modulus must be monic of degree >= 1")
        self.p = p
        self.k = len(modulus) - 1
        self.modulus = modulus
        self.symbol = symbol
        self.order = p**self.k
        self.tabled = self.order <= TABLE_LIMIT
        if self.k > 1 and not is_irreducible(p, modulus):
            raise DomainError("modulus %s is not irreducible over F_%d" % (self._vec_str(modulus, symbol), p))
        self._red_cache: dict = {}
        self._pack_tables: dict = {}
        self._b1 = self._slot_bits(1)
        if self.tabled:
            self._build_tables()
        self._prime_codes = [self._from_poly_code(r) for r in range(p)]

    # -- construction helpers ---------------------------------------------

    def _poly_mul_vec(self, u, v):
        """Multiply two coefficient vectors modulo the modulus (over F_p)."""
        p, k, m = self.p, self.k, self.modulus
        prod = [0] * (2 * k - 1)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        prod[i + j] = (prod[i + j] + a * b) % p
        for d in range(len(prod) - 1, k - 1, -1):
            c = prod[d]
            if c:
                for j in range(k + 1):
                    prod[d - k + j] = (prod[d - k + j] - c * m[j]) % p
        return prod[:k] + [0] * (k - len(prod[:k]))

    def _encode(self, vec) -> int:
        out = 0
        for c in reversed(vec):
            out = out * self.p + c
        return out

    def _decode(self, code: int):
        vec = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            vec.append(r)
        return vec

    def _build_tables(self):
        p, k, Q = self.p, self.k, self.order
        n = Q - 1
        if k == 1:
            g = next(c for c in range(1, p) if self._vec_order_is_full([c]))
            exp = [0] * n
            x = 1
            for i in range(n):
                exp[i] = x
                x = x * g % p
        else:
            gen = None
            if self._vec_order_is_full([0, 1] + [0] * (k - 2)):
                gen = "shift"
            else:
                for code in range(2, Q):
                    if self._vec_order_is_full(self._decode(code)):
                        gen = self._decode(code)
                        break
            exp = [0] * n
            vec = [1] + [0] * (k - 1)
            m = self.modulus
            for i in range(n):
                exp[i] = self._encode(vec)
                if gen == "shift":
                    top = vec[-1]
                    vec = [0] + vec[:-1]
                    if top:
                        vec = [(vec[j] - top * m[j]) % p for j in range(k)]
                else:
                    vec = self._poly_mul_vec(vec, gen)
        log = [0] * Q
        for i, pc in enumerate(exp):
            log[pc] = i
        zech = [0] * n
        for i, pc in enumerate(exp):
            c0 = pc % p
            shifted = pc - c0 + (c0 + 1) % p
            zech[i] = 0 if shifted == 0 else log[shifted] + 1
        self._exp = exp
        self._log = log
        self._zech_list = zech
        self.zech = np.asarray(zech, dtype=np.int64)
        self.half = 0 if p == 2 else n // 2

    # -- large fields: Kronecker substitution ----------------------------
    #
    # Without tables an element is packed into one integer, B bits per
    # coefficient of a, so that products of elements (and of whole coefficient
    # sequences) become single integer multiplications.

    def _slot_bits(self, terms: int) -> int:
        p, k = self.p, self.k
        bits = ((terms + 1) * k * (p - 1) ** 2 + p).bit_length()
        return 8 * -(-bits // 8)  # whole bytes, see _slots

    def _pack(self, c: int, B: int) -> int:
        hit = self._pack_tables.get(B)
        if hit is None:
            # r base-p digits at a time through a lookup table
            p = self.p
            r = max(1, min(self.k, 12 // max(1, (p - 1).bit_length())))
            table = [0] * p**r
            for v in range(p**r):
                x, out, shift = v, 0, 0
                while x:
                    x, d = divmod(x, p)
                    out |= d << shift
                    shift += B
                table[v] = out
            hit = (p**r, r * B, table)
            self._pack_tables[B] = hit
        base, step, table = hit
        out, shift = 0, 0
        while c:
            c, v = divmod(c, base)
            if v:
                out |= table[v] << shift
            shift += step
        return out

    def _reduction_rows(self, B: int):
        """Packed a^d mod modulus for d = k .. 2k-2."""
        rows = self._red_cache.get(B)
        if rows is None:
            p, k, m = self.p, self.k, self.modulus
            vec = [(-c) % p for c in m[:k]]  # a^k
            rows = []
            for _ in range(k - 1):
                rows.append(sum(c << (j * B) for j, c in enumerate(vec)))
                top = vec[-1]
                vec = [0] + vec[:-1]
                if top:
                    vec = [(vec[j] - top * m[j]) % p for j in range(k)]
            self._red_cache[B] = rows
        return rows

    def _unpack(self, v: int, B: int) -> int:
        """Code of the element whose unreduced packed form (2k-1 slots) is v."""
        p, k = self.p, self.k
        kb = k * B
        low = v & ((1 << kb) - 1)
        v >>= kb
        if v:
            rows = self._reduction_rows(B)
            for d, h in enumerate(_slots(v, B, k - 1)):
                h %= p
                if h:
                    low += h * rows[d]
        code = 0
        for s in reversed(_slots(low, B, k)):
            code = code * p + s % p
        return code

    def poly_mul(self, a: Sequence[int], b: Sequence[int]) -> list:
        """Full-length product of two code sequences, for fields without tables."""
        if not a or not b:
            return []
        B = self._slot_bits(min(len(a), len(b)))
        stride = (2 * self.k - 1) * B
        A = 0
        for c in reversed(a):
            A = (A << stride) | self._pack(c, B)
        Bv = 0
        for c in reversed(b):
            Bv = (Bv << stride) | self._pack(c, B)
        P = A * Bv
        smask = (1 << stride) - 1
        out = []
        for _ in range(len(a) + len(b) - 1):
            chunk = P & smask
            out.append(self._unpack(chunk, B) if chunk else 0)
            P >>= stride
        return out

    def _vec_order_is_full(self, vec) -> bool:
        n = self.order - 1
        for f in _prime_factors(n):
            if self._vec_pow(vec, n // f) == [1] + [0] * (self.k - 1):
                return False
        return True

    def _vec_pow(self, vec, e):
        result = [1] + [0] * (self.k - 1)
        base = list(vec) + [0] * (self.k - len(vec))
        while e:
            if e & 1:
                result = self._poly_mul_vec(result, base)
            base = self._poly_mul_vec(base, base)
            e >>= 1
        return result

    def _from_poly_code(self, pc: int) -> int:
        if not self.tabled or pc == 0:
            return pc
        return self._log[pc] + 1

    def _to_poly_code(self, c: int) -> int:
        if not self.tabled or c == 0:
            return c
        return self._exp[c - 1]

    # -- arithmetic on codes --------------------------------------------

    zero = 0
    one = 1

    def add(self, a: int, b: int) -> int:
        if self.tabled:
            if a == 0:
                return b
            if b == 0:
                return a
            n = self.order - 1
            z = self._zech_list[(b - a) % n]
            if z == 0:
                return 0
            return (a + z - 2) % n + 1
        return self._encode([(x + y) % self.p for x, y in zip(self._decode(a), self._decode(b))])

    def neg(self, a: int) -> int:
        if a == 0:
            return 0
        if self.tabled:
            return (a - 1 + self.half) % (self.order - 1) + 1
        return self._encode([(-x) % self.p for x in self._decode(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.tabled:
            return (a + b - 2) % (self.order - 1) + 1
        B = self._b1
        return self._unpack(self._pack(a, B) * self._pack(b, B), B)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.order)
        if self.tabled:
            return (1 - a) % (self.order - 1) + 1
        return self._encode(_inv_mod(self._decode(a), list(self.modulus), self.p) + [0] * self.k)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        n = self.order - 1
        if self.tabled:
            return ((a - 1) * e) % n + 1
        e %= n
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def pth_root(self, a: int) -> int:
        return self.pow(a, self.p ** (self.k - 1))

    def from_int(self, n: int) -> int:
        return self._prime_codes[n % self.p]

    def from_vector(self, vec: Sequence[int]) -> int:
        vec = [int(c) % self.p for c in vec]
        if len(vec) > self.k:
            raise DomainError("coefficient vector longer than extension degree")
        vec += [0] * (self.k - len(vec))
        return self._from_poly_code(self._encode(vec))

    def to_vector(self, c: int) -> tuple[int, ...]:
        return tuple(self._decode(self._to_poly_code(c)))

    def gen(self) -> int:
        """Code of the generator ``a`` (equal to the residue of ``-m_0`` when k = 1)."""
        if self.k == 1:
            return self.from_int(-self.modulus[0])
        return self.from_vector([0, 1])

    def codes(self) -> Iterable[int]:
        """All codes in increasing coefficient-vector order (low degree first)."""
        for vec in itertools.product(range(self.p), repeat=self.k):
            yield self.from_vector(vec)

    def sort_key(self, c: int):
        return self.to_vector(c)

    def is_prime_field_code(self, c: int) -> bool:
        return all(x == 0 for x in self.to_vector(c)[1:])

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise DomainError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        return FieldElement(self, self.from_vector(value))

    def random_code(self, rng) -> int:
        return self.from_vector([rng.randrange(self.p) for _ in range(self.k)])

    # -- display ----------------------------------------------------------

    def _vec_str(self, vec, sym=None) -> str:
        sym = sym or self.symbol
        terms = []
        for i in range(len(vec) - 1, -1, -1):
            c = vec[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mon = sym if i == 1 else "%s^%d" % (sym, i)
                terms.append(mon if c == 1 else "%d*%s" % (c, mon))
        return "+".join(terms) if terms else "0"

    def format(self, c: int) -> str:
        return self._vec_str(self.to_vector(c))

    def describe(self) -> dict:
        return {"p": self.p, "deg": self.k, "mod": self._vec_str(self.modulus)}

    def __repr__(self):
        if self.k == 1:
            return "Field(F_%d)" % self.p
        return "Field(F_%d[%s]/(%s))" % (self.p, self.symbol, self._vec_str(self.modulus))

    def __reduce__(self):
        return (make_field, (self.p, None, self.modulus, self.symbol))


def _trim_p(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _inv_mod(a, m, p):
    """Inverse of a modulo m in F_p[t] by the extended Euclidean algorithm (low degree first)."""
    r0, r1 = _trim_p(list(m)), _trim_p(list(a))
    s0, s1 = [], [1]
    while len(r1) > 1:
        # r0 = quo * r1 + rem
        rem = list(r0)
        inv_lead = pow(r1[-1], p - 2, p)
        quo = [0] * (len(rem) - len(r1) + 1)
        for i in range(len(rem) - len(r1), -1, -1):
            c = rem[i + len(r1) - 1] * inv_lead % p
            quo[i] = c
            if c:
                for j, b in enumerate(r1):
                    rem[i + j] = (rem[i + j] - c * b) % p
        _trim_p(rem)
        # s0 - quo * s1
        prod = [0] * (len(quo) + len(s1) - 1) if s1 else []
        for i, x in enumerate(quo):
            if x:
                for j, y in enumerate(s1):
                    prod[i + j] = (prod[i + j] + x * y) % p
        n = max(len(s0), len(prod))
        new = [((s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)) % p for i in range(n)]
        r0, r1 = r1, rem
        s0, s1 = s1, _trim_p(new)
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = pow(r1[0], p - 2, p)
    return [x * c % p for x in s1]


_SLOT_CODES = {8: "B", 16: "H", 32: "I", 64: "Q"}


def _slots(v: int, B: int, count: int):
    """The first ``count`` B-bit slots of a non-negative integer, low first."""
    raw = v.to_bytes(count * B // 8, "little")
    code = _SLOT_CODES.get(B)
    if code is not None and sys.byteorder == "little":
        return memoryview(raw).cast(code).tolist()
    w = B // 8
    return [int.from_bytes(raw[i : i + w], "little") for i in range(0, len(raw), w)]


def _prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def make_field(p: int, k: int | None = None, modulus: Sequence[int] | None = None, symbol: str = "a") -> Field:
    """Return the (cached) field with the given modulus, or the default one of degree k."""
    if modulus is None:
        if k is None:
            k = 1
        modulus = find_irreducible_modulus(p, k)
    modulus = tuple(int(c) % p for c in modulus)
    if k is not None and len(modulus) - 1 != k:
        raise DomainError("modulus degree %d does not match deg=%d" % (len(modulus) - 1, k))
    key = (p, modulus, symbol)
    with _registry_lock:
        F = _registry.get(key)
        if F is None:
            F = Field(p, modulus, symbol)
            _registry[key] = F
    return F


def prime_field(p: int) -> Field:
    return make_field(p, 1)


def is_irreducible(p: int, modulus: Sequence[int]) -> bool:
    """Rabin's test for a monic polynomial over F_p (coefficients low degree first)."""
    k = len(modulus) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    Fp = make_field(p, 1)
    f = upoly.trim([Fp.from_int(c) for c in modulus])
    x = [0, 1]
    for r in _prime_factors(k):
        h = upoly.powmod(Fp, x, p ** (k // r), f)
        g = upoly.gcd(Fp, upoly.sub(Fp, h, x), f)
        if len(g) > 1:
            return False
    h = upoly.powmod(Fp, x, p**k, f)
    return upoly.trim(upoly.sub(Fp, h, x)) == []


_irreducible_cache: dict = {}


def find_irreducible_modulus(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k, coefficient tuples compared low degree first."""
    key = (p, k)
    if key in _irreducible_cache:
        return _irreducible_cache[key]
    if k == 1:
        res = (0, 1)
    else:
        res = None
        # constant term first (it must be nonzero), the rest in lexicographic order
        cands = ((c0,) + rest + (1,) for c0 in range(1, p) for rest in itertools.product(range(p), repeat=k - 1))
        for cand in cands:
            if is_irreducible(p, cand):
                res = cand
                break
    _irreducible_cache[key] = res
    return res


def find_irreducible(p: int, k: int) -> Field:
    return make_field(p, k)


class FieldElement:
    """An element of a :class:`Field`."""

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.to_vector(self.code)

    def _other(self, y) -> int:
        if isinstance(y, FieldElement):
            if y.field is not self.field:
                raise DomainError("field mismatch: %r vs %r" % (self.field, y.field))
            return y.code
        if isinstance(y, int):
            return self.field.from_int(y)
        return NotImplemented

    def __add__(self, y):
        c = self._other(y)
        return NotImplemented if c is NotImplemented else FieldElement(self.field, self.field.add(self.code, c))

    __radd__ = __add__

    def __sub__(self, y):
        c = self._other(y)
        return NotImplemented if c is NotImplemented else FieldElement(self.field, self.field.sub(self.code, c))

    def __rsub__(self, y):
        c = self._other(y)
        return NotImplemented if c is NotImplemented else FieldElement(self.field, self.field.sub(c, self.code))

    def __mul__(self, y):
        c = self._other(y)
        return NotImplemented if c is NotImplemented else FieldElement(self.field, self.field.mul(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, y):
        c = self._other(y)
        return NotImplemented if c is NotImplemented else FieldElement(self.field, self.field.div(self.code, c))

    def __rtruediv__(self, y):
        c = self._other(y)
        return NotImplemented if c is NotImplemented else FieldElement(self.field, self.field.div(c, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.code))

    def frobenius(self):
        return FieldElement(self.field, self.field.frobenius(self.code))

    def pth_root(self):
        return FieldElement(self.field, self.field.pth_root(self.code))

    def is_zero(self) -> bool:
        return self.code == 0

    def __bool__(self):
        return self.code != 0

    def __eq__(self, y):
        if isinstance(y, FieldElement):
            return self.field is y.field and self.code == y.code
        if isinstance(y, int):
            return self.code == self.field.from_int(y)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.code))

    def __repr__(self):
        return "FieldElement(%s)" % self.field.format(self.code)

    def __str__(self):
        return self.field.format(self.code)


_embed_cache: dict = {}


def embedding_code_map(source: Field, target: Field):
    """Return a function mapping codes of ``source`` to codes of ``target``.

    The generator of ``source`` goes to the root of its modulus in ``target``
    with the smallest coefficient vector.
    """
    if source is target:
        return lambda c: c
    if source.p != target.p:
        raise DomainError("fields of different characteristic")
    if target.k % source.k:
        raise DomainError("F_%d does not embed in F_%d" % (source.order, target.order))
    key = (id(source), id(target))
    fn = _embed_cache.get(key)
    if fn is not None:
        return fn
    if source.k == 1:
        image = lambda c: target.from_int(source.to_vector(c)[0])
    else:
        mod = [target.from_int(c) for c in source.modulus]
        roots = upoly.find_roots(target, mod)
        if not roots:
            raise DomainError("no root of the source modulus in the target field")
        root = min(roots, key=target.sort_key)
        powers = [1]
        for _ in range(source.k - 1):
            powers.append(target.mul(powers[-1], root))

        def image(c):
            acc = 0
            for coef, pw in zip(source.to_vector(c), powers):
                if coef:
                    acc = target.add(acc, target.mul(target.from_int(coef), pw))
            return acc

    cache: dict = {}

    def fn(c):
        r = cache.get(c)
        if r is None:
            r = image(c)
            cache[c] = r
        return r

    _embed_cache[key] = fn
    return fn


def embed(x: FieldElement, target: Field) -> FieldElement:
    return FieldElement(target, embedding_code_map(x.field, target)(x.code))
