"""Text formats: polynomial expressions and field specifications.

Expression grammar (``^`` binds tightest, no implicit multiplication)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)?
    atom   := INTEGER | NAME | "(" expr ")"

NAME is one of the two variables or the field's generator symbol.  Field
specifications look like ``p=5`` or ``p=5;deg=3;mod=a^3+a+1``.
"""

from __future__ import annotations

import re

from .errors import DomainError, ParseError
from .gf import Field, make_field
from .poly import BinaryForm

__all__ = [
    "parse_field",
    "parse_polynomial",
    "parse_form",
    "parse_factored",
    "parse_forms_list",
    "parse_quasi_homogeneous",
    "Sparse",
]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character %r at position %d" % (text[pos:pos + 1], pos))
        num, name, op = m.groups()
        if num is not None:
            out.append(("int", int(num), m.start(1)))
        elif name is not None:
            out.append(("name", name, m.start(2)))
        else:
            out.append(("op", "^" if op == "**" else op, m.start(3)))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


# AST nodes are tuples: ("num", n) ("var", i) ("gen",) ("add", a, b) ("sub", a, b)
# ("mul", a, b) ("neg", a) ("pow", a, n)


class _Parser:
    def __init__(self, text, names, symbol):
        self.toks = _tokenize(text)
        self.i = 0
        self.names = names
        self.symbol = symbol
        self.text = text

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise ParseError("expected %r at position %d" % (op, t[2]))

    def parse(self):
        node = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError("unexpected token %r at position %d" % (t[1], t[2]))
        return node

    def expr(self):
        node = self.term()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                node = ("add" if t[1] == "+" else "sub", node, rhs)
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                node = ("mul", node, self.unary())
            elif t[0] in ("int", "name") or (t[0] == "op" and t[1] == "("):
                raise ParseError("implicit multiplication is not allowed (position %d)" % t[2])
            else:
                return node

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            inner = self.unary()
            return ("neg", inner) if t[1] == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "int":
                raise ParseError("exponent must be a non-negative integer literal (position %d)" % e[2])
            return ("pow", base, e[1])
        return base

    def atom(self):
        t = self.take()
        if t[0] == "int":
            return ("num", t[1])
        if t[0] == "name":
            if t[1] in self.names:
                return ("var", self.names.index(t[1]))
            if t[1] == self.symbol:
                return ("gen",)
            raise ParseError("unknown variable %r at position %d" % (t[1], t[2]))
        if t[0] == "op" and t[1] == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if t[0] == "end":
            raise ParseError("unexpected end of expression")
        raise ParseError("unexpected %r at position %d" % (t[1], t[2]))


class Sparse:
    """Sparse bivariate polynomial {(i, j): code} over a field."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms=None):
        self.field = field
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, F, c):
        return cls(F, {(0, 0): c})

    def __add__(self, o):
        F = self.field
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = F.add(out.get(k, 0), v)
        return Sparse(F, out)

    def __neg__(self):
        F = self.field
        return Sparse(F, {k: F.neg(v) for k, v in self.terms.items()})

    def __mul__(self, o):
        F = self.field
        out: dict = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in o.terms.items():
                key = (i + k, j + l)
                out[key] = F.add(out.get(key, 0), F.mul(a, b))
        return Sparse(F, out)

    def homogeneous_degree(self):
        degs = {i + j for i, j in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def weighted_degrees(self, u=1, v=1):
        return sorted({u * i + v * j for i, j in self.terms})

    def to_form(self) -> BinaryForm:
        if not self.terms:
            raise DomainError("the zero polynomial is not a binary form")
        degs = self.weighted_degrees()
        if len(degs) > 1:
            raise DomainError("inhomogeneous polynomial: monomials of degree %d and %d" % (degs[-1], degs[0]))
        d = degs[0]
        coeffs = [0] * (d + 1)
        for (i, j), c in self.terms.items():
            coeffs[j] = c
        return BinaryForm(self.field, coeffs)

    @classmethod
    def from_form(cls, f: BinaryForm):
        d = f.degree
        return cls(f.field, {(d - j, j): c for j, c in enumerate(f.coeffs) if c})

    def pow(self, e: int):
        if e == 0:
            return Sparse.const(self.field, 1)
        if self.terms and self.homogeneous_degree() is not None and len(self.terms) > 1:
            return Sparse.from_form(self.to_form() ** e)
        result = Sparse.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result


def _evaluate(node, F: Field) -> Sparse:
    kind = node[0]
    if kind == "num":
        return Sparse.const(F, F.from_int(node[1]))
    if kind == "gen":
        return Sparse.const(F, F.gen())
    if kind == "var":
        return Sparse(F, {(1, 0) if node[1] == 0 else (0, 1): 1})
    if kind == "add":
        return _evaluate(node[1], F) + _evaluate(node[2], F)
    if kind == "sub":
        return _evaluate(node[1], F) + (-_evaluate(node[2], F))
    if kind == "neg":
        return -_evaluate(node[1], F)
    if kind == "mul":
        return _evaluate(node[1], F) * _evaluate(node[2], F)
    if kind == "pow":
        return _evaluate(node[1], F).pow(node[2])
    raise ParseError("bad expression node %r" % (kind,))


def _ast(text: str, field: Field, variables=("x", "y")):
    if not text or not text.strip():
        raise ParseError("empty expression")
    return _Parser(text, tuple(variables), field.symbol).parse()


def parse_polynomial(text: str, field: Field, variables=("x", "y")) -> Sparse:
    return _evaluate(_ast(text, field, variables), field)


def parse_form(text: str, field: Field, variables=("x", "y")) -> BinaryForm:
    """Parse a homogeneous polynomial into a dense binary form."""
    return parse_polynomial(text, field, variables).to_form()


def _product_factors(node):
    if node[0] == "mul":
        return _product_factors(node[1]) + _product_factors(node[2])
    if node[0] == "pow":
        return [(node[1], node[2])]
    return [(node, 1)]


def parse_factored(text: str, field: Field, variables=("x", "y")):
    """Parse into ``[(BinaryForm, exponent), ...]`` along the top-level product.

    Large powers of small bases are never expanded, which keeps inputs such
    as ``x^420*(x+y)^417*...`` cheap to factor.
    """
    node = _ast(text, field, variables)
    pieces = []
    for base, e in _product_factors(node):
        sp = _evaluate(base, field)
        if not sp.terms:
            raise DomainError("the zero polynomial is not a binary form")
        degs = sp.weighted_degrees()
        if len(degs) > 1:
            raise DomainError("inhomogeneous polynomial: monomials of degree %d and %d" % (degs[-1], degs[0]))
        pieces.append((sp.to_form(), e))
    return pieces


def parse_forms_list(text: str, field: Field, variables=("x", "y")):
    """Comma-separated list of forms, e.g. ``x,y,x+y``."""
    return [parse_form(part, field, variables) for part in _split_top(text)]


def _split_top(text: str):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    parts = [p.strip() for p in parts]
    if any(not p for p in parts):
        raise ParseError("empty entry in list %r" % (text,))
    return parts


def parse_quasi_homogeneous(text: str, field: Field, weights, variables=("x", "y")) -> Sparse:
    """Parse and check homogeneity under deg x = u, deg y = v."""
    sp = parse_polynomial(text, field, variables)
    if not sp.terms:
        raise DomainError("the zero polynomial has no threshold")
    u, v = weights
    degs = sp.weighted_degrees(u, v)
    if len(degs) > 1:
        raise DomainError(
            "not quasi-homogeneous for weights (%d,%d): monomials of weighted degree %d and %d" % (u, v, degs[-1], degs[0])
        )
    return sp


_FIELD_KEYS = {"p", "deg", "mod", "sym"}


def parse_field(spec: str) -> Field:
    """``p=5`` or ``p=5;deg=3;mod=a^3+a+1`` (optionally ``sym=b``)."""
    items = {}
    for part in spec.replace(",", ";").split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ParseError("field spec entries look like key=value, got %r" % (part,))
        k, v = (s.strip() for s in part.split("=", 1))
        if k not in _FIELD_KEYS:
            raise ParseError("unknown field spec key %r" % (k,))
        items[k] = v
    if "p" not in items:
        raise ParseError("field spec needs p=<prime>")
    try:
        p = int(items["p"])
        k = int(items["deg"]) if "deg" in items else None
    except ValueError as exc:
        raise ParseError("p and deg must be integers") from exc
    sym = items.get("sym", "a")
    if "mod" not in items:
        return make_field(p, k or 1, symbol=sym)
    base = make_field(p, 1)
    node = _Parser(items["mod"], (sym,), None).parse()
    sp = _evaluate(node, base)
    if any(j for _, j in sp.terms):
        raise ParseError("modulus must be a polynomial in %s only" % sym)
    d = max(i for i, _ in sp.terms)
    coeffs = [0] * (d + 1)
    for (i, _), c in sp.terms.items():
        coeffs[i] = base.to_vector(c)[0]
    if coeffs[-1] != 1:
        inv = pow(coeffs[-1], -1, p)
        coeffs = [c * inv % p for c in coeffs]
    if k is not None and k != d:
        raise ParseError("deg=%d does not match the modulus degree %d" % (k, d))
    return make_field(p, d, modulus=coeffs, symbol=sym)
