"""Monomial orders and sparse multivariate polynomials over an exact field.

Polynomials are stored as ``dict`` mapping exponent tuples to nonzero field
elements.  The raw-dict helpers in this module are what the Groebner and
linear-algebra code uses; :class:`Polynomial` is the user-facing wrapper.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .field import FieldSpec


class ParseError(ValueError):
    """Raised on malformed polynomial text; ``position`` is a character offset."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at offset {position})")
        self.position = position


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``lex`` or ``weighted`` (weight vector, ties broken by grevlex)."""

    kind: str = "grevlex"
    weights: tuple = ()

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "weighted"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "weighted" and (not self.weights or min(self.weights) < 0):
            raise ValueError("weighted order needs a non-negative weight vector")

    def key(self, exp):
        """Sort key: larger key means larger monomial."""
        if self.kind == "lex":
            return exp
        rev = tuple(-e for e in reversed(exp))
        if self.kind == "grevlex":
            return (sum(exp), rev)
        return (sum(w * e for w, e in zip(self.weights, exp)), sum(exp), rev)

    def to_json(self):
        if self.kind == "weighted":
            return {"kind": "weighted", "weights": list(self.weights)}
        return self.kind

    @classmethod
    def from_json(cls, data):
        if data is None:
            return cls()
        if isinstance(data, str):
            return cls(data)
        return cls(data.get("kind", "grevlex"), tuple(data.get("weights", ())))


# ---------------------------------------------------------------------------
# raw dict arithmetic


def p_add(f, g, mod):
    h = dict(f)
    for m, c in g.items():
        v = h.get(m)
        if v is None:
            h[m] = c
        else:
            v = v + c
            if mod:
                v %= mod
            if v:
                h[m] = v
            else:
                del h[m]
    return h


def p_scale(f, c, mod):
    if not c:
        return {}
    if mod:
        return {m: v * c % mod for m, v in f.items()}
    return {m: v * c for m, v in f.items()}


def p_axpy(h, c, f, mod, shift=None):
    """In place ``h += c * (monomial shift) * f``."""
    for m, v in f.items():
        if shift is not None:
            m = tuple(a + b for a, b in zip(m, shift))
        w = h.get(m)
        t = c * v
        if w is None:
            if mod:
                t %= mod
            if t:
                h[m] = t
        else:
            w = w + t
            if mod:
                w %= mod
            if w:
                h[m] = w
            else:
                del h[m]
    return h


def p_mul(f, g, mod):
    h = {}
    if len(f) > len(g):
        f, g = g, f
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            v = h.get(m)
            t = c1 * c2
            h[m] = t if v is None else v + t
    if mod:
        return {m: v % mod for m, v in h.items() if v % mod}
    return {m: v for m, v in h.items() if v}


def p_monomial_mul(f, exp):
    return {tuple(a + b for a, b in zip(m, exp)): c for m, c in f.items()}


class PolyRing:
    """The ambient polynomial ring k[x_1..x_n] with a grading and a monomial order."""

    def __init__(self, field: FieldSpec, names: Sequence[str], order=None, weights=None):
        self.field = field
        self.names = tuple(names)
        self.nvars = len(self.names)
        if len(set(self.names)) != self.nvars:
            raise ValueError("variable names must be distinct")
        for nm in self.names:
            if not re.match(r"^[A-Za-z_][A-Za-z_0-9]*$", nm):
                raise ValueError(f"bad variable name {nm!r}")
        self.order = order if isinstance(order, MonomialOrder) else MonomialOrder.from_json(order)
        self.weights = tuple(weights) if weights else (1,) * self.nvars
        if len(self.weights) != self.nvars or min(self.weights, default=1) < 1:
            raise ValueError("grading weights must be positive, one per variable")
        self.mod = field.modulus
        self.zero_exp = (0,) * self.nvars
        self._key = self.order.key

    # -- monomials
    def deg(self, exp) -> int:
        return sum(w * e for w, e in zip(self.weights, exp))

    def var(self, i):
        e = [0] * self.nvars
        e[i] = 1
        return tuple(e)

    def monomials_of_degree(self, d):
        """All exponent vectors of weighted degree ``d``."""
        out = []
        w = self.weights
        n = self.nvars

        def rec(i, left, cur):
            if i == n - 1:
                if left % w[i] == 0:
                    out.append(tuple(cur + [left // w[i]]))
                return
            for e in range(left // w[i] + 1):
                rec(i + 1, left - e * w[i], cur + [e])

        if d < 0:
            return []
        if n == 0:
            return [()] if d == 0 else []
        rec(0, d, [])
        return out

    # -- polynomials
    def lead(self, f):
        return max(f, key=self._key)

    def sorted_terms(self, f):
        return sorted(f.items(), key=lambda t: self._key(t[0]), reverse=True)

    def degree_of(self, f):
        """Weighted degree of a homogeneous polynomial (``None`` for zero)."""
        if not f:
            return None
        return self.deg(next(iter(f)))

    def is_homogeneous(self, f):
        return len({self.deg(m) for m in f}) <= 1

    def constant(self, c):
        c = self.field(c)
        return {self.zero_exp: c} if c else {}

    def monic(self, f):
        if not f:
            return f
        c = f[self.lead(f)]
        return p_scale(f, self.field.inv(c), self.mod)

    # -- text
    def parse(self, text: str):
        return _Parser(self, text).parse()

    def format(self, f) -> str:
        if not f:
            return "0"
        parts = []
        for m, c in self.sorted_terms(f):
            s = self.field.format(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            mono = "*".join(
                nm if e == 1 else f"{nm}^{e}" for nm, e in zip(self.names, m) if e
            )
            if mono:
                body = mono if s == "1" else f"{s}*{mono}"
            else:
                body = s
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def to_json(self):
        return {
            "field": self.field.to_json(),
            "variables": list(self.names),
            "order": self.order.to_json(),
            "grading": list(self.weights),
        }

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.names == other.names
            and self.order == other.order
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.field, self.names, self.order, self.weights))

    def __repr__(self):
        return f"PolyRing({self.field}, {list(self.names)}, {self.order.kind})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _Parser:
    """Recursive-descent parser; ``/`` is only allowed between numeric factors."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            start = m.start(m.lastindex)
            if m.group(1):
                self.tokens.append(("num", int(m.group(1)), start))
            elif m.group(2):
                self.tokens.append(("name", m.group(2), start))
            else:
                op = m.group(3)
                self.tokens.append(("op", "^" if op == "**" else op, start))
            pos = m.end()
        self.i = 0
        self.index = {nm: k for k, nm in enumerate(ring.names)}

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", None, len(self.text))

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        if not self.tokens:
            raise ParseError("empty polynomial", 0)
        f = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected token {t[1]!r}", t[2])
        return f

    def expr(self):
        mod = self.ring.mod
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        f = self.term()
        if sign < 0:
            f = p_scale(f, self.ring.field(-1), mod)
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                g = self.term()
                if t[1] == "-":
                    g = p_scale(g, self.ring.field(-1), mod)
                f = p_add(f, g, mod)
            else:
                return f

    def term(self):
        f = self.power()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                f = p_mul(f, self.power(), self.ring.mod)
            elif t[0] == "op" and t[1] == "/":
                self.take()
                d = self.power()
                if not d or any(m != self.ring.zero_exp for m in d):
                    raise ParseError("division only by nonzero constants", t[2])
                f = p_scale(f, self.ring.field.inv(d[self.ring.zero_exp]), self.ring.mod)
            elif t[0] in ("name", "num") or (t[0] == "op" and t[1] == "("):
                # implicit multiplication, e.g. "2x" or "x(y+1)"
                f = p_mul(f, self.power(), self.ring.mod)
            else:
                return f

    def power(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                raise ParseError("exponent must be a non-negative integer", e[2])
            out = self.ring.constant(1)
            for _ in range(e[1]):
                out = p_mul(out, base, self.ring.mod)
            return out
        return base

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return self.ring.constant(t[1])
        if t[0] == "name":
            if t[1] not in self.index:
                raise ParseError(f"unknown variable {t[1]!r}", t[2])
            return {self.ring.var(self.index[t[1]]): self.ring.field.one}
        if t[0] == "op" and t[1] == "(":
            f = self.expr()
            c = self.take()
            if c[1] != ")":
                raise ParseError("missing ')'", c[2])
            return f
        raise ParseError(f"unexpected token {t[1]!r}", t[2])


class Polynomial:
    """An immutable polynomial bound to a :class:`PolyRing`.

    >>> from gradelink.field import QQ
    >>> S = PolyRing(QQ, ["x", "y"])
    >>> f = Polynomial.parse(S, "3*x^2*y - y")
    >>> str(f * Polynomial.parse(S, "x"))
    '3*x^3*y - x*y'
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms=None):
        self.ring = ring
        self.terms = dict(terms or {})

    @classmethod
    def parse(cls, ring, text):
        return cls(ring, ring.parse(text))

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other.terms
        return self.ring.constant(other)

    def __add__(self, other):
        return Polynomial(self.ring, p_add(self.terms, self._coerce(other), self.ring.mod))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, p_scale(self.terms, self.ring.field(-1), self.ring.mod))

    def __sub__(self, other):
        return self + (-Polynomial(self.ring, self._coerce(other)))

    def __rsub__(self, other):
        return Polynomial(self.ring, self._coerce(other)) - self

    def __mul__(self, other):
        return Polynomial(self.ring, p_mul(self.terms, self._coerce(other), self.ring.mod))

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Polynomial(self.ring, self.ring.constant(1))
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        return self.terms == self.ring.constant(other)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self):
        return max((self.ring.deg(m) for m in self.terms), default=None)

    def is_homogeneous(self):
        return self.ring.is_homogeneous(self.terms)

    def lead_monomial(self):
        return self.ring.lead(self.terms)

    def __str__(self):
        return self.ring.format(self.terms)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"
