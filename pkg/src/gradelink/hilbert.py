"""Hilbert series of graded modules as rational functions N(t) / prod(1 - t^w)."""

from __future__ import annotations

from functools import lru_cache


def _padd(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        x = out.get(k, 0) + sign * v
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


def _pmul(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _one_minus(w):
    return {0: 1, w: -1}


def _divide_one_minus(num, w):
    """Exact quotient of ``num`` by ``1 - t^w`` or ``None``."""
    if not num:
        return {}
    num = dict(num)
    lo = min(num)
    hi = max(num)
    q = {}
    # num = (1 - t^w) q  =>  q_k = num_k + q_{k-w}
    for k in range(lo, hi - w + 1):
        v = num.get(k, 0) + q.get(k - w, 0)
        if v:
            q[k] = v
    check = _pmul(q, _one_minus(w))
    return q if check == {k: v for k, v in num.items() if v} else None


class HilbertSeries:
    """``numerator`` is a Laurent polynomial ``{exponent: coefficient}``;
    ``denominator`` is the tuple of weights ``w`` in ``prod (1 - t^w)``."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=()):
        num = {int(k): int(v) for k, v in dict(numerator).items() if v}
        den = list(sorted(denominator))
        # cancel factors that divide exactly, so finite modules get an empty denominator
        changed = True
        while changed and num:
            changed = False
            for w in sorted(set(den)):
                q = _divide_one_minus(num, w)
                if q is not None:
                    num = q
                    den.remove(w)
                    changed = True
                    break
        if not num:
            den = []
        self.numerator = num
        self.denominator = tuple(den)

    @classmethod
    def from_dims(cls, dims):
        return cls({d: n for d, n in dims.items() if n})

    @classmethod
    def zero(cls):
        return cls({})

    def _common(self, other):
        da, db = list(self.denominator), list(other.denominator)
        extra_a, extra_b = list(db), list(da)
        for w in da:
            if w in extra_a:
                extra_a.remove(w)
        for w in db:
            if w in extra_b:
                extra_b.remove(w)
        na, nb = self.numerator, other.numerator
        for w in extra_a:
            na = _pmul(na, _one_minus(w))
        for w in extra_b:
            nb = _pmul(nb, _one_minus(w))
        return na, nb, tuple(da + extra_a)

    def __add__(self, other):
        na, nb, den = self._common(other)
        return HilbertSeries(_padd(na, nb), den)

    def __sub__(self, other):
        na, nb, den = self._common(other)
        return HilbertSeries(_padd(na, nb, -1), den)

    def __neg__(self):
        return HilbertSeries({k: -v for k, v in self.numerator.items()}, self.denominator)

    def __mul__(self, other):
        if isinstance(other, int):
            return HilbertSeries({k: other * v for k, v in self.numerator.items()}, self.denominator)
        return HilbertSeries(_pmul(self.numerator, other.numerator), self.denominator + other.denominator)

    __rmul__ = __mul__

    def shift(self, a):
        """Multiply by ``t^a`` (the series of the module with generators moved up by ``a``)."""
        return HilbertSeries({k + a: v for k, v in self.numerator.items()}, self.denominator)

    def __eq__(self, other):
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        na, nb, _ = self._common(other)
        return na == nb

    def __hash__(self):
        return hash((tuple(sorted(self.numerator.items())), self.denominator))

    def is_zero(self):
        return not self.numerator

    @property
    def krull_dim(self):
        """Order of the pole at ``t = 1`` (``-1`` for the zero series)."""
        if not self.numerator:
            return -1
        num, mult = self.numerator, 0
        while True:
            q = _divide_one_minus(num, 1)
            if q is None:
                break
            num, mult = q, mult + 1
        return len(self.denominator) - mult

    @property
    def is_finite(self):
        return not self.denominator

    def total(self):
        """``dim_k`` for a finite-length module."""
        if self.denominator:
            raise ValueError("module is not finite-dimensional")
        return sum(self.numerator.values())

    @property
    def min_degree(self):
        return min(self.numerator) if self.numerator else None

    @property
    def max_degree(self):
        """Top nonzero degree (finite series only)."""
        if self.denominator:
            raise ValueError("infinite series has no top degree")
        return max(self.numerator) if self.numerator else None

    def coefficients(self, lo, hi):
        """``{d: dim M_d}`` for ``lo <= d <= hi`` by series expansion."""
        inv = {0: 1}
        span = hi - min(lo, self.min_degree if self.numerator else lo)
        for w in self.denominator:
            geo = {k * w: 1 for k in range(span // w + 1)}
            inv = {k: v for k, v in _pmul(inv, geo).items() if k <= span}
        full = _pmul(self.numerator, inv)
        return {d: full.get(d, 0) for d in range(lo, hi + 1)}

    def coefficient(self, d):
        return self.coefficients(d, d)[d]

    def format(self, var="t"):
        def term(k, v):
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                return str(v)
            if v == 1:
                return mono
            if v == -1:
                return "-" + mono
            return f"{v}*{mono}"

        if not self.numerator:
            return "0"
        num = " + ".join(term(k, v) for k, v in sorted(self.numerator.items())).replace("+ -", "- ")
        if not self.denominator:
            return num
        den = "*".join(f"(1-{var})" if w == 1 else f"(1-{var}^{w})" for w in self.denominator)
        return f"({num})/({den})"

    __str__ = format

    def __repr__(self):
        return f"HilbertSeries({self.format()!r})"

    def to_json(self):
        return {
            "numerator": {str(k): v for k, v in sorted(self.numerator.items())},
            "denominator": list(self.denominator),
            "text": self.format(),
        }


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


@lru_cache(maxsize=20000)
def _numerator(gens, weights):
    """Numerator of HS(S / (gens)) over ``prod (1 - t^w_i)``, monomial ideal."""
    if not gens:
        return ((0, 1),)
    if any(sum(g) == 0 for g in gens):
        return ()
    # split off generators in disjoint variable sets would be faster; the pivot
    # recursion on the last generator is enough at desk scale
    *rest, m = gens
    rest = _minimalize(rest)
    dm = sum(w * e for w, e in zip(weights, m))
    colon = _minimalize([tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest])
    a = dict(_numerator(rest, weights))
    b = dict(_numerator(colon, weights))
    out = _padd(a, {k + dm: v for k, v in b.items()}, -1)
    return tuple(sorted(out.items()))


def monomial_quotient_series(lead_monomials, weights, shift=0):
    """HS of ``S / (lead_monomials)`` with generator in degree ``shift``."""
    gens = _minimalize([tuple(m) for m in lead_monomials])
    # put high-degree generators last so the recursion peels them off first
    gens = tuple(sorted(gens, key=lambda g: (sum(g), g)))
    num = dict(_numerator(gens, tuple(weights)))
    return HilbertSeries({k + shift: v for k, v in num.items()}, tuple(weights))
