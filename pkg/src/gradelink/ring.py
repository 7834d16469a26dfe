"""Graded quotient rings k[x_1..x_n]/I and degree-wise models of free modules.

All graded linear algebra in the package runs through :class:`FreeModel`,
which indexes the k-basis ``(generator, standard monomial)`` of each degree
piece of a graded free module ``F = sum R(-a_i)``.
"""

from __future__ import annotations

from functools import cached_property

from . import groebner as gb
from .field import FieldSpec
from .hilbert import HilbertSeries, monomial_quotient_series
from .linalg import Echelon, kernel as lin_kernel
from .poly import MonomialOrder, PolyRing, p_add, p_axpy, p_mul


class QuotientRing:
    """A graded quotient ``k[x_1..x_n] / I`` with ``I`` homogeneous inside ``m``.

    >>> from gradelink.field import QQ
    >>> R = QuotientRing(QQ, ["X", "Y"], ["X^2", "X*Y", "Y^2"])
    >>> R.format(R.parse("X*Y + Y"))
    'Y'
    """

    def __init__(self, field: FieldSpec, names, ideal=(), order="grevlex", grading=None, degree_cap=None):
        self.poly = PolyRing(field, names, order, grading)
        self.field = field
        self.mod = field.modulus
        self.nvars = self.poly.nvars
        self.names = self.poly.names
        self.weights = self.poly.weights
        self.degree_cap = degree_cap
        gens = []
        for g in ideal:
            f = self.poly.parse(g) if isinstance(g, str) else dict(g)
            if not f:
                continue
            if not self.poly.is_homogeneous(f):
                raise ValueError(f"ideal generator {self.poly.format(f)} is not homogeneous")
            if self.poly.zero_exp in f:
                raise ValueError("ideal must lie in the irrelevant maximal ideal")
            gens.append(f)
        self.ideal_generators = gens
        self._nf_cache = {}
        self._std_cache = {}

    # -- construction helpers
    @classmethod
    def polynomial(cls, field, names, **kw):
        return cls(field, names, (), **kw)

    @cached_property
    def groebner_basis(self):
        return gb.groebner_basis(self.poly, self.ideal_generators, self.degree_cap)

    @cached_property
    def leads(self):
        return [self.poly.lead(g) for g in self.groebner_basis]

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.poly == other.poly and self.groebner_basis == other.groebner_basis

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        ideal = ", ".join(self.poly.format(g) for g in self.ideal_generators)
        return f"{self.field}[{','.join(self.names)}]/({ideal})"

    # -- normal forms
    def is_standard(self, exp):
        return not any(all(a <= b for a, b in zip(l, exp)) for l in self.leads)

    def monomial_nf(self, exp):
        """Normal form of a monomial, memoized; iterative to avoid deep recursion."""
        cache = self._nf_cache
        hit = cache.get(exp)
        if hit is not None:
            return hit
        mod = self.mod
        stack = [exp]
        while stack:
            m = stack[-1]
            if m in cache:
                stack.pop()
                continue
            for g, l in zip(self.groebner_basis, self.leads):
                if all(a <= b for a, b in zip(l, m)):
                    break
            else:
                cache[m] = {m: self.field.one}
                stack.pop()
                continue
            q = tuple(b - a for a, b in zip(l, m))
            tails = [tuple(x + y for x, y in zip(t, q)) for t in g if t != l]
            missing = [t for t in tails if t not in cache]
            if missing:
                stack.extend(missing)
                continue
            out = {}
            for t, tq in zip((t for t in g if t != l), tails):
                p_axpy(out, -g[t], cache[tq], mod)
            cache[m] = out
            stack.pop()
        return cache[exp]

    def nf(self, f):
        out = {}
        mod = self.mod
        for m, c in f.items():
            p_axpy(out, c, self.monomial_nf(m), mod)
        return out

    def mul(self, f, g):
        return self.nf(p_mul(f, g, self.mod))

    def add(self, f, g):
        return p_add(f, g, self.mod)

    def parse(self, text):
        return self.nf(self.poly.parse(text))

    def format(self, f):
        return self.poly.format(f)

    def deg(self, exp):
        return self.poly.deg(exp)

    def degree_of(self, f):
        return self.poly.degree_of(f)

    def var(self, i):
        return {self.poly.var(i): self.field.one}

    def one(self):
        return {self.poly.zero_exp: self.field.one}

    # -- graded structure
    def std_monomials(self, d):
        hit = self._std_cache.get(d)
        if hit is None:
            mons = [m for m in self.poly.monomials_of_degree(d) if self.is_standard(m)]
            mons.sort(key=self.poly.order.key, reverse=True)
            hit = self._std_cache[d] = mons
        return hit

    @cached_property
    def hilbert_series(self) -> HilbertSeries:
        return monomial_quotient_series(self.leads, self.weights)

    @cached_property
    def krull_dim(self):
        return self.hilbert_series.krull_dim

    @property
    def is_artinian(self):
        return self.krull_dim == 0

    @cached_property
    def top_degree(self):
        """Largest degree with ``R_d != 0`` (Artinian rings only)."""
        if not self.is_artinian:
            return None
        return self.hilbert_series.max_degree

    def is_regular_ring(self):
        return not self.groebner_basis

    def to_json(self):
        out = self.poly.to_json()
        out["ideal"] = [self.poly.format(g) for g in self.ideal_generators]
        return out

    @classmethod
    def from_json(cls, data):
        return cls(
            FieldSpec.from_json(data.get("field", "QQ")),
            data["variables"],
            data.get("ideal", []),
            MonomialOrder.from_json(data.get("order")),
            data.get("grading"),
        )


# ---------------------------------------------------------------------------
# degree pieces of free modules


class FreeModel:
    """Degree pieces of the graded free module with generators in ``degrees``."""

    def __init__(self, ring: QuotientRing, degrees):
        self.ring = ring
        self.degrees = tuple(degrees)
        self._pieces = {}

    def piece(self, d):
        """``(basis, index)``: basis is a list of ``(generator, monomial)``."""
        hit = self._pieces.get(d)
        if hit is None:
            basis = []
            for i, a in enumerate(self.degrees):
                for m in self.ring.std_monomials(d - a):
                    basis.append((i, m))
            hit = self._pieces[d] = (basis, {b: k for k, b in enumerate(basis)})
        return hit

    def dim(self, d):
        return len(self.piece(d)[0])

    def coords(self, vec, d):
        """Coordinates in ``F_d`` of a homogeneous vector ``{generator: poly}``."""
        _, index = self.piece(d)
        out = {}
        for i, p in vec.items():
            for m, c in p.items():
                out[index[(i, m)]] = c
        return out

    def vector(self, coords, d):
        basis, _ = self.piece(d)
        out = {}
        for k, c in coords.items():
            i, m = basis[k]
            out.setdefault(i, {})[m] = c
        return out

    def times_monomial(self, vec, exp, d):
        """Coordinates in ``F_d`` of ``x^exp * vec``."""
        ring = self.ring
        _, index = self.piece(d)
        out = {}
        mod = ring.mod
        for i, p in vec.items():
            for m, c in p.items():
                prod = tuple(a + b for a, b in zip(m, exp))
                for t, v in ring.monomial_nf(prod).items():
                    k = index[(i, t)]
                    x = out.get(k, 0) + c * v
                    if mod:
                        x %= mod
                    if x:
                        out[k] = x
                    else:
                        out.pop(k, None)
        return out

    def span_in_degree(self, vectors, vdegrees, d):
        """Spanning list (coordinates in ``F_d``) of ``sum R_{d - deg v} * v``."""
        out = []
        for v, c in zip(vectors, vdegrees):
            if v and d - c >= 0:
                for m in self.ring.std_monomials(d - c):
                    w = self.times_monomial(v, m, d)
                    if w:
                        out.append(w)
        return out


def vec_degree(ring, vec, row_degrees):
    """Degree of a homogeneous vector, ``None`` if zero; raises if inhomogeneous."""
    degs = {ring.deg(m) + row_degrees[i] for i, p in vec.items() for m in p}
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError("vector is not homogeneous")
    return degs.pop()


def _artinian_syzygies(ring, columns, row_degrees, col_degrees):
    src = FreeModel(ring, col_degrees)
    tgt = FreeModel(ring, row_degrees)
    mod = ring.mod
    if not columns:
        return []
    top = ring.top_degree
    lo, hi = min(col_degrees), max(col_degrees) + top
    kernels = {}
    gens = []
    var_exps = [ring.poly.var(v) for v in range(ring.nvars)]
    for d in range(lo, hi + 1):
        basis, _ = src.piece(d)
        if not basis:
            kernels[d] = []
            continue
        images = []
        for j, m in basis:
            images.append(tgt.times_monomial(columns[j], m, d))
        K = lin_kernel(images, mod)
        kernels[d] = K
        if not K:
            continue
        ech = Echelon(mod)
        for v, w in zip(var_exps, ring.weights):
            for k in kernels.get(d - w, []):
                vec = src.vector(k, d - w)
                ech.insert(src.times_monomial(vec, v, d))
        for k in K:
            piv, _ = ech.insert(k)
            if piv is not None:
                gens.append((d, src.vector(k, d)))
    return gens


def minimal_subset(ring, vectors, row_degrees):
    """Indices of a minimal generating subfamily of the submodule spanned by ``vectors``."""
    model = FreeModel(ring, row_degrees)
    degs = [vec_degree(ring, v, row_degrees) for v in vectors]
    order = sorted((d, i) for i, d in enumerate(degs) if d is not None)
    kept = []
    for d in sorted({d for d, _ in order}):
        below = [i for i in kept if degs[i] < d]
        ech = Echelon(ring.mod)
        for w in model.span_in_degree([vectors[i] for i in below], [degs[i] for i in below], d):
            ech.insert(w)
        for dd, i in order:
            if dd != d:
                continue
            piv, _ = ech.insert(model.coords(vectors[i], d))
            if piv is not None:
                kept.append(i)
    return sorted(kept, key=lambda i: (degs[i], i))


def syzygies(ring: QuotientRing, columns, row_degrees, col_degrees, degree_cap=None):
    """Minimal homogeneous generators of ``ker(R^cols -> R^rows)``.

    Returns ``(degrees, vectors)``; every vector is ``{column: polynomial}`` in
    normal form.  Artinian rings use exhaustive graded linear algebra; positive
    dimensional rings use a module Groebner basis.
    """
    columns = [{i: p for i, p in c.items() if p} for c in columns]
    if ring.is_artinian:
        found = _artinian_syzygies(ring, columns, row_degrees, col_degrees)
        return [d for d, _ in found], [v for _, v in found]
    # zero columns contribute their unit vector directly
    raw = gb.syzygy_generators(ring.poly, ring.groebner_basis, columns, row_degrees, col_degrees, degree_cap)
    vecs = []
    for v in raw:
        w = {j: ring.nf(p) for j, p in v.items()}
        w = {j: p for j, p in w.items() if p}
        if w:
            vecs.append(w)
    keep = minimal_subset(ring, vecs, col_degrees)
    vecs = [vecs[i] for i in keep]
    return [vec_degree(ring, v, col_degrees) for v in vecs], vecs
