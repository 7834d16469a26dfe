"""Exact coefficient fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from gmpy2 import mpq


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    """Deterministic primality test (exact; sympy uses BPSW plus trial division)."""
    from sympy import isprime

    return bool(isprime(p))


_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field.

    ``kind`` is ``"QQ"`` or ``"GF"``; for ``"GF"`` the characteristic ``p`` is
    stored and checked for primality at construction.  Field elements are
    ``gmpy2.mpq`` over QQ and plain ``int`` in ``range(p)`` over GF(p).
    """

    kind: str
    p: int = 0
    _one: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind == "QQ":
            object.__setattr__(self, "_one", mpq(1))
        elif self.kind == "GF":
            if self.p < 2 or not is_prime(self.p):
                raise FieldError(f"GF({self.p}): characteristic must be prime")
            object.__setattr__(self, "_one", 1)
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("QQ")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("GF", int(p))

    @property
    def modulus(self):
        """The characteristic for prime fields, ``None`` for QQ (used by hot loops)."""
        return self.p if self.kind == "GF" else None

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "GF" else 0

    @property
    def one(self):
        return self._one

    @property
    def zero(self):
        return mpq(0) if self.kind == "QQ" else 0

    def __call__(self, value):
        """Coerce an int, Fraction, mpq or ``"a/b"`` string into the field."""
        if isinstance(value, str):
            return self.parse(value)
        if self.kind == "QQ":
            return mpq(value)
        p = self.p
        if isinstance(value, int):
            return value % p
        q = mpq(value)
        num, den = int(q.numerator), int(q.denominator)
        if den % p == 0:
            raise FieldError(f"{value} has denominator divisible by {p}")
        return num * pow(den, -1, p) % p

    def parse(self, text: str):
        m = _RATIONAL.match(text)
        if not m:
            raise FieldError(f"not a rational number: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise FieldError("zero denominator")
        return self(mpq(num, den))

    def inv(self, a):
        if self.kind == "QQ":
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / a
        return pow(a, -1, self.p)

    def neg(self, a):
        return -a if self.kind == "QQ" else (-a) % self.p

    def add(self, a, b):
        return a + b if self.kind == "QQ" else (a + b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == "QQ" else (a * b) % self.p

    def format(self, a) -> str:
        if self.kind == "QQ":
            q = mpq(a)
            if q.denominator == 1:
                return str(q.numerator)
            return f"{q.numerator}/{q.denominator}"
        # symmetric representative keeps printed polynomials readable
        a = int(a) % self.p
        return str(a - self.p if a > self.p // 2 else a)

    def random_element(self, rng, spread: int = 7):
        """A small nonzero-biased random element, used for generic combinations."""
        return self(rng.randint(-spread, spread))

    def to_json(self) -> dict:
        return {"kind": "QQ"} if self.kind == "QQ" else {"kind": "GF", "p": self.p}

    @classmethod
    def from_json(cls, data) -> "FieldSpec":
        if isinstance(data, str):
            if data.upper() in ("QQ", "Q"):
                return cls.rationals()
            m = re.match(r"^\s*(?:GF|F|ZZ/)\(?(\d+)\)?\s*$", data)
            if m:
                return cls.prime(int(m.group(1)))
            raise FieldError(f"unknown field {data!r}")
        kind = data.get("kind", "QQ")
        if kind in ("QQ", "Q", "rationals"):
            return cls.rationals()
        if kind in ("GF", "prime", "prime-field"):
            return cls.prime(int(data["p"]))
        raise FieldError(f"unknown field kind {kind!r}")

    def __str__(self):
        return "QQ" if self.kind == "QQ" else f"GF({self.p})"


QQ = FieldSpec.rationals()

__all__ = ["FieldSpec", "FieldError", "QQ", "is_prime"]
