"""Minimal free resolutions, Ext and Tor, grade, alpha and depth.

Ext is computed by resolving the first argument.  Over an Artinian ring the
package may instead resolve the k-dual of the second argument, using
``Ext^i(M, N) = Ext^i(N^v, M^v)``; which side is resolved is decided by
growing both resolutions in lockstep and stopping at the first that is long
enough, so a cheap side is never blocked by an expensive one.
"""

from __future__ import annotations

import copy
import threading
from dataclasses import dataclass, field
from functools import cached_property

from .errors import NotExact, ResolutionTruncated, Truncated, Undefined
from .fpmod import (
    FPModule,
    ModuleMap,
    direct_sum_module,
    hom_module,
    k_dual,
    submodule,
    tensor,
    vec_add,
    vec_mul,
)
from .hilbert import HilbertSeries
from .linalg import rank as lin_rank
from .poly import p_axpy
from .ring import syzygies


class FreeResolution:
    """Minimal graded free resolution, extended on demand.

    ``ranks[i]`` and ``degrees[i]`` describe ``F_i``; ``differentials[i]`` is
    the list of columns of ``d_{i+1}: F_{i+1} -> F_i``.  The resolution is
    ``complete`` once a zero syzygy module has been reached.
    """

    def __init__(self, module: FPModule):
        self.module = module
        self.minimal = module.minimal
        M = self.minimal.module
        self.ring = M.ring
        self.degrees = [tuple(M.degrees)]
        self.differentials = []
        if M.relations:
            self.degrees.append(tuple(M.rel_degrees))
            self.differentials.append(list(M.relations))
            self.complete = False
        else:
            self.complete = True
        self._lock = threading.Lock()

    @property
    def length(self):
        """Number of differentials known."""
        return len(self.differentials)

    @property
    def ranks(self):
        return [len(d) for d in self.degrees]

    def extend(self, length):
        """Make sure ``d_1..d_length`` are known (or the resolution is complete)."""
        with self._lock:
            while not self.complete and self.length < length:
                self._step()
        return self

    def _step(self):
        ring = self.ring
        cols = self.differentials[-1]
        try:
            degs, syz = syzygies(ring, cols, self.degrees[-2], self.degrees[-1], ring.degree_cap)
        except Truncated as exc:
            raise ResolutionTruncated(str(exc)) from exc
        if not syz:
            self.complete = True
            return
        self.degrees.append(tuple(degs))
        self.differentials.append(syz)

    def truncated(self, length):
        """A copy holding ``d_1..d_length`` only; the cache is left alone."""
        view = copy.copy(self)
        view.degrees = self.degrees[: length + 1]
        view.differentials = self.differentials[:length]
        view.complete = self.complete and self.length <= length
        view._lock = threading.Lock()
        return view

    def step_once(self):
        with self._lock:
            if not self.complete:
                self._step()

    def free_module(self, i):
        return FPModule.free(self.ring, self.degrees[i] if i < len(self.degrees) else ())

    def differential(self, i):
        """``d_i: F_i -> F_{i-1}`` as a map of free modules (``i >= 1``)."""
        self.extend(i)
        src = self.free_module(i)
        tgt = self.free_module(i - 1)
        if i > self.length:
            return ModuleMap.zero(src, tgt)
        return ModuleMap(src, tgt, self.differentials[i - 1])

    def is_minimal(self):
        zero = self.ring.poly.zero_exp
        return all(zero not in p for cols in self.differentials for v in cols for p in v.values())

    def composites_vanish(self):
        ring = self.ring
        for i in range(1, self.length):
            dn = self.differentials[i - 1]
            for v in self.differentials[i]:
                acc = {}
                for j, p in v.items():
                    for r, q in dn[j].items():
                        x = acc.setdefault(r, {})
                        p_axpy(x, 1, ring.mul(p, q), ring.mod)
                        if not x:
                            del acc[r]
                if acc:
                    return False
        return True

    def to_json(self):
        fmt = self.ring.format
        diffs = []
        for i, cols in enumerate(self.differentials):
            nrows = len(self.degrees[i])
            diffs.append([[fmt(c.get(r, {})) for c in cols] for r in range(nrows)])
        return {
            "ranks": self.ranks,
            "degrees": [list(d) for d in self.degrees],
            "differentials": diffs,
            "status": "complete" if self.complete else "truncated",
        }


def resolution(M: FPModule) -> FreeResolution:
    """The cached minimal resolution of ``M``."""
    res = M.__dict__.get("_resolution")
    if res is None:
        res = FreeResolution(M)
        M.__dict__["_resolution"] = res
    return res


def free_resolution(M: FPModule, length: int) -> FreeResolution:
    if length < 0:
        raise ValueError("length must be non-negative")
    return resolution(M).extend(length).truncated(length)


def cached_dual(M: FPModule) -> FPModule:
    D = M.__dict__.get("_kdual")
    if D is None:
        D = k_dual(M)
        M.__dict__["_kdual"] = D
        D.__dict__["_kdual"] = M
    return D


# ---------------------------------------------------------------------------
# cochain complexes Hom(F, N) and chain complexes F ⊗ N


def _hom_term(N, degrees):
    return direct_sum_module(*[N.shift(a) for a in degrees]) if degrees else FPModule.zero(N.ring)


def _dual_differential(N, src_degrees, tgt_degrees, columns):
    """``Hom(F_i, N) -> Hom(F_{i+1}, N)`` for ``d: F_{i+1} -> F_i`` with ``columns``."""
    n = N.ngens
    src = _hom_term(N, src_degrees)
    tgt = _hom_term(N, tgt_degrees)
    images = []
    for j in range(len(src_degrees)):
        for t in range(n):
            v = {}
            for l, col in enumerate(columns):
                p = col.get(j)
                if p:
                    v[l * n + t] = p
            images.append(v)
    return ModuleMap(src, tgt, images)


@dataclass
class Cohomology:
    """``H = ker(d_out) / im(d_in)`` at one spot of a complex, with the data
    needed to push classes through chain maps."""

    term: FPModule
    cycles: FPModule
    inclusion: ModuleMap
    value: FPModule

    def induced(self, other: "Cohomology", chain: ModuleMap) -> ModuleMap:
        """Map ``H(self) -> H(other)`` induced by ``chain: term -> other.term``."""
        images = []
        for g in self.inclusion.images:
            y = chain.apply(g)
            pre = other.inclusion.lift_element(y)
            if pre is None:
                raise NotExact("chain map does not send cycles to cycles")
            images.append(pre)
        return ModuleMap(self.value, other.value, images)


def cohomology(term: FPModule, d_out: ModuleMap, d_in: ModuleMap = None) -> Cohomology:
    K, inc = d_out.kernel() if d_out is not None else submodule(term, [{i: term.ring.one()} for i in range(term.ngens)])
    bounds = []
    if d_in is not None:
        for v in d_in.images:
            if term.is_zero_element(v):
                continue
            pre = inc.lift_element(v)
            if pre is None:
                raise NotExact("boundaries are not cycles")
            bounds.append(pre)
    return Cohomology(term, K, inc, K.quotient(bounds))


# ---------------------------------------------------------------------------


def _choose(i, M, N):
    """``(resolution, coefficient, swapped)`` with the resolution long enough for index ``i``."""
    ring = M.ring
    rM = resolution(M)
    if not ring.is_artinian or not N.is_artinian or not M.is_artinian:
        try:
            rM.extend(i + 1)
        except ResolutionTruncated:
            raise
        return rM, N, False
    D = cached_dual(N)
    rD = resolution(D)
    while True:
        if rM.complete or rM.length >= i + 1:
            return rM, N, False
        if rD.complete or rD.length >= i + 1:
            return rD, cached_dual(M), True
        a = rM.ranks[-1]
        b = rD.ranks[-1]
        if a <= b:
            rM.step_once()
        else:
            rD.step_once()


def _piece_block(N, poly, src_degree, tgt_degree):
    """Matrix (list of column dicts) of multiplication by ``poly`` on ``N``."""
    model = N.model
    return [model.act(poly, {n: N.ring.field.one}, src_degree) for n in range(model.dim(src_degree))]


def _hom_rank(N, e, src_degrees, tgt_degrees, columns, cache):
    """Rank in degree ``e`` of ``Hom(F_i, N) -> Hom(F_{i+1}, N)``."""
    model = N.model
    offs, tot = [], 0
    for b in tgt_degrees:
        offs.append(tot)
        tot += model.dim(b + e)
    if not tot:
        return 0
    cols = []
    for j, a in enumerate(src_degrees):
        n = model.dim(a + e)
        if not n:
            continue
        blocks = []
        for l, col in enumerate(columns):
            p = col.get(j)
            if p and model.dim(tgt_degrees[l] + e):
                key = (id(col), j, e)
                blk = cache.get(key)
                if blk is None:
                    blk = cache[key] = _piece_block(N, p, a + e, tgt_degrees[l] + e)
                blocks.append((offs[l], blk))
        for k in range(n):
            v = {}
            for off, blk in blocks:
                for kk, c in blk[k].items():
                    v[off + kk] = c
            cols.append(v)
    return lin_rank(cols, N.ring.mod)


def _ext_series(i, res: FreeResolution, N: FPModule) -> HilbertSeries:
    """Hilbert series of ``Ext^i`` from a resolution and a finite-length ``N``."""
    if N.is_zero():
        return HilbertSeries.zero()
    if i >= len(res.degrees):
        return HilbertSeries.zero()
    nlo, nhi = N.degree_range()
    Fi = res.degrees[i]
    if not Fi:
        return HilbertSeries.zero()
    lo, hi = nlo - max(Fi), nhi - min(Fi)
    model = N.model
    cache = {}
    dims = {}
    for e in range(lo, hi + 1):
        total = sum(model.dim(a + e) for a in Fi)
        if not total:
            continue
        r_out = 0
        if i + 1 < len(res.degrees):
            r_out = _hom_rank(N, e, Fi, res.degrees[i + 1], res.differentials[i], cache)
        r_in = 0
        if i >= 1:
            r_in = _hom_rank(N, e, res.degrees[i - 1], Fi, res.differentials[i - 1], cache)
        d = total - r_out - r_in
        if d:
            dims[e] = d
    return HilbertSeries.from_dims(dims)


@dataclass
class ExtModule:
    """``Ext^index(source, coefficient)``; ``value`` and ``hilbert_series`` are lazy."""

    index: int
    source: FPModule
    coefficient: FPModule

    @cached_property
    def _route(self):
        return _choose(self.index, self.source, self.coefficient)

    @property
    def swapped(self):
        return self._route[2]

    @cached_property
    def hilbert_series(self) -> HilbertSeries:
        res, N, _ = self._route
        if N.is_artinian:
            return _ext_series(self.index, res, N)
        return self.value.hilbert_series

    def is_zero(self):
        return self.hilbert_series.is_zero()

    @cached_property
    def cohomology(self) -> Cohomology:
        res, N, _ = self._route
        i = self.index
        if i >= len(res.degrees):
            Z = FPModule.zero(N.ring)
            return Cohomology(Z, Z, ModuleMap.zero(Z, Z), Z)
        Fi = res.degrees[i]
        Fo = res.degrees[i + 1] if i + 1 < len(res.degrees) else ()
        d_out = _dual_differential(N, Fi, Fo, res.differentials[i] if i < res.length else [])
        d_in = None
        if i >= 1:
            d_in = _dual_differential(N, res.degrees[i - 1], Fi, res.differentials[i - 1])
        return cohomology(d_out.source, d_out, d_in)

    @cached_property
    def value(self) -> FPModule:
        return self.cohomology.value.minimal.module

    def to_json(self):
        return {
            "index": self.index,
            "hilbert_series": self.hilbert_series.to_json(),
            "zero": self.is_zero(),
            "route": "dual" if self.swapped else "direct",
        }


def ext(i: int, M: FPModule, N: FPModule) -> ExtModule:
    if i < 0:
        raise ValueError("Ext index must be non-negative")
    cache = M.__dict__.setdefault("_ext_cache", {})
    key = (i, id(N))
    hit = cache.get(key)
    if hit is None or hit.coefficient is not N:
        hit = cache[key] = ExtModule(i, M, N)
    return hit


def ext_vanishes(i, M, N):
    return ext(i, M, N).is_zero()


def ext0_matches_hom(M, N):
    """Cross-check ``Ext^0(M, N)`` against :func:`hom_module` by Hilbert series."""
    return ext(0, M, N).hilbert_series == hom_module(M, N).hilbert_series


# ---------------------------------------------------------------------------
# Tor


def _tensor_term(N, degrees):
    return direct_sum_module(*[N.shift(-a) for a in degrees]) if degrees else FPModule.zero(N.ring)


def _tensor_differential(N, src_degrees, tgt_degrees, columns):
    """``F_{i} ⊗ N -> F_{i-1} ⊗ N`` for ``d_i`` with ``columns`` (one per source generator)."""
    n = N.ngens
    src = _tensor_term(N, src_degrees)
    tgt = _tensor_term(N, tgt_degrees)
    images = []
    for j, col in enumerate(columns):
        for t in range(n):
            images.append({k * n + t: p for k, p in col.items()})
    return ModuleMap(src, tgt, images)


@dataclass
class TorModule:
    index: int
    factors: tuple

    @cached_property
    def _res(self):
        M, _ = self.factors
        return resolution(M).extend(self.index + 1)

    @cached_property
    def hilbert_series(self) -> HilbertSeries:
        M, N = self.factors
        if N.is_artinian:
            return _tor_series(self.index, self._res, N)
        return self.value.hilbert_series

    def is_zero(self):
        return self.hilbert_series.is_zero()

    @cached_property
    def homology(self) -> Cohomology:
        res, (_, N), i = self._res, self.factors, self.index
        if i >= len(res.degrees):
            Z = FPModule.zero(N.ring)
            return Cohomology(Z, Z, ModuleMap.zero(Z, Z), Z)
        Fi = res.degrees[i]
        d_out = None
        if i >= 1:
            d_out = _tensor_differential(N, Fi, res.degrees[i - 1], res.differentials[i - 1])
        d_in = None
        if i + 1 < len(res.degrees):
            d_in = _tensor_differential(N, res.degrees[i + 1], Fi, res.differentials[i])
        term = _tensor_term(N, Fi)
        return cohomology(term, d_out, d_in)

    @cached_property
    def value(self) -> FPModule:
        return self.homology.value.minimal.module

    def to_json(self):
        return {"index": self.index, "hilbert_series": self.hilbert_series.to_json(), "zero": self.is_zero()}


def _tor_rank(N, e, src_degrees, tgt_degrees, columns, cache):
    """Rank in degree ``e`` of ``F_i ⊗ N -> F_{i-1} ⊗ N``."""
    model = N.model
    offs, tot = [], 0
    for b in tgt_degrees:
        offs.append(tot)
        tot += model.dim(e - b)
    if not tot:
        return 0
    cols = []
    for j, a in enumerate(src_degrees):
        n = model.dim(e - a)
        if not n:
            continue
        blocks = []
        for k, p in columns[j].items():
            if model.dim(e - tgt_degrees[k]):
                key = (id(columns[j]), k, e)
                blk = cache.get(key)
                if blk is None:
                    blk = cache[key] = _piece_block(N, p, e - a, e - tgt_degrees[k])
                blocks.append((offs[k], blk))
        for q in range(n):
            v = {}
            for off, blk in blocks:
                for kk, c in blk[q].items():
                    v[off + kk] = c
            cols.append(v)
    return lin_rank(cols, N.ring.mod)


def _tor_series(i, res, N):
    if N.is_zero() or i >= len(res.degrees) or not res.degrees[i]:
        return HilbertSeries.zero()
    nlo, nhi = N.degree_range()
    Fi = res.degrees[i]
    model = N.model
    cache = {}
    dims = {}
    for e in range(nlo + min(Fi), nhi + max(Fi) + 1):
        total = sum(model.dim(e - a) for a in Fi)
        if not total:
            continue
        r_out = _tor_rank(N, e, Fi, res.degrees[i - 1], res.differentials[i - 1], cache) if i >= 1 else 0
        r_in = 0
        if i + 1 < len(res.degrees):
            r_in = _tor_rank(N, e, res.degrees[i + 1], Fi, res.differentials[i], cache)
        d = total - r_out - r_in
        if d:
            dims[e] = d
    return HilbertSeries.from_dims(dims)


def tor(i: int, M: FPModule, N: FPModule) -> TorModule:
    if i < 0:
        raise ValueError("Tor index must be non-negative")
    return TorModule(i, (M, N))


def tor0_matches_tensor(M, N):
    return tor(0, M, N).hilbert_series == tensor(M, N).hilbert_series


# ---------------------------------------------------------------------------
# numerical invariants


def grade(M: FPModule, N: FPModule, limit=None) -> int:
    """``min{i : Ext^i(M, N) != 0}``."""
    if M.is_zero():
        raise Undefined("grade of the zero module is undefined")
    if N.is_zero():
        raise Undefined("grade into the zero module is infinite")
    if limit is None:
        limit = max(N.krull_dim, 0) + 1
    for i in range(limit + 1):
        if not ext_vanishes(i, M, N):
            return i
    raise Undefined(f"Ext^i vanishes for all i <= {limit}")


@dataclass
class AlphaResult:
    """``sup{i <= bound : Ext^i != 0}``.  ``status`` is ``exact`` when the
    resolution used was finite, ``unverified`` when ``Ext^bound != 0``, and
    ``bounded`` otherwise (vanishing checked only through ``bound``)."""

    value: int
    bound: int
    status: str
    nonzero: list = field(default_factory=list)

    @property
    def verified(self):
        return self.status != "unverified"

    def to_json(self):
        return {"value": self.value, "bound": self.bound, "status": self.status, "nonzero_indices": self.nonzero}


def alpha(M: FPModule, N: FPModule, bound: int = 6) -> AlphaResult:
    nonzero = [i for i in range(bound + 1) if not ext_vanishes(i, M, N)]
    if not nonzero:
        return AlphaResult(-1, bound, "bounded", nonzero)
    value = nonzero[-1]
    res, _, _ = _choose(bound, M, N)
    if res.complete and res.length <= bound:
        status = "exact"
    elif value == bound:
        status = "unverified"
    else:
        status = "bounded"
    return AlphaResult(value, bound, status, nonzero)


def depth(M: FPModule) -> int:
    """``grade(k, M)`` at the irrelevant maximal ideal."""
    if M.is_zero():
        raise Undefined("depth of the zero module is undefined")
    k = residue_field(M.ring)
    return grade(k, M, limit=max(M.krull_dim, 0) + 1)


def residue_field(ring) -> FPModule:
    k = ring.__dict__.get("_residue_field")
    if k is None:
        k = ring.__dict__["_residue_field"] = FPModule.residue_field(ring)
    return k


def ring_module(ring) -> FPModule:
    R = ring.__dict__.get("_free_rank_one")
    if R is None:
        R = ring.__dict__["_free_rank_one"] = FPModule.free(ring, (0,), name="R")
    return R


# ---------------------------------------------------------------------------
# long exact sequences


def certify_ses(f: ModuleMap, g: ModuleMap):
    """Raise :class:`NotExact` unless ``0 -> A --f--> B --g--> C -> 0`` is exact."""
    if f.target is not g.source:
        raise NotExact("maps are not composable")
    if not g.compose(f).is_zero():
        raise NotExact("g ∘ f is not zero")
    if not f.is_injective():
        raise NotExact("first map is not injective")
    if not g.is_surjective():
        raise NotExact("second map is not surjective")
    A, B, C = f.source, f.target, g.target
    if B.hilbert_series != A.hilbert_series + C.hilbert_series:
        raise NotExact("Hilbert series do not add up")


class Horseshoe:
    """Resolution of the middle term of ``0 -> A -> B -> C -> 0`` built from
    minimal resolutions of ``A`` and ``C``; ``theta[i]`` holds the columns of
    the off-diagonal block ``P^C_i -> P^A_{i-1}``."""

    def __init__(self, f: ModuleMap, g: ModuleMap, length: int):
        self.f, self.g = f, g
        A, B, C = f.source, f.target, g.target
        ring = A.ring
        self.ring = ring
        self.rA = resolution(A).extend(length)
        self.rC = resolution(C).extend(length)
        minA, minC = self.rA.minimal, self.rC.minimal
        # augmentations into B
        epsA = [f.apply(minA.to_original.images[i]) for i in range(minA.module.ngens)]
        epsC = []
        for v in minC.to_original.images:
            pre = g.lift_element(v)
            epsC.append(pre)
        self.eps = (epsA, epsC)
        self.theta = {}
        # theta_1: P^C_1 -> P^A_0 with eps_A theta_1 + eps_C d^C_1 = 0 in B
        if self.rC.length >= 1:
            amap = ModuleMap(self.rA.free_module(0), B, epsA)
            cols = []
            for col in self.rC.differentials[0]:
                y = {}
                for j, p in col.items():
                    y = vec_add(ring, y, vec_mul(ring, p, epsC[j]))
                pre = _lift_into(amap, y, negate=True)
                cols.append(pre)
            self.theta[1] = cols
        for i in range(2, length + 1):
            if self.rC.length < i:
                break
            dA = self.rA.differential(i - 1) if i - 1 <= self.rA.length else None
            cols = []
            for col in self.rC.differentials[i - 1]:
                # y = - theta_{i-1}(d^C_i u) in P^A_{i-2}
                y = {}
                for j, p in col.items():
                    y = vec_add(ring, y, vec_mul(ring, p, self.theta[i - 1][j]))
                if not y:
                    cols.append({})
                    continue
                if dA is None:
                    raise NotExact("horseshoe lift failed")
                pre = _lift_into(dA, y, negate=True)
                cols.append(pre)
            self.theta[i] = cols

    def degrees(self, i):
        a = self.rA.degrees[i] if i < len(self.rA.degrees) else ()
        c = self.rC.degrees[i] if i < len(self.rC.degrees) else ()
        return tuple(a) + tuple(c)

    def differential_columns(self, i):
        """Columns of ``d_i`` on ``P^A_i ⊕ P^C_i -> P^A_{i-1} ⊕ P^C_{i-1}``."""
        na_prev = len(self.rA.degrees[i - 1]) if i - 1 < len(self.rA.degrees) else 0
        cols = []
        if i - 1 < len(self.rA.differentials):
            cols.extend(dict(c) for c in self.rA.differentials[i - 1])
        elif i < len(self.rA.degrees):  # pragma: no cover
            cols.extend({} for _ in self.rA.degrees[i])
        if i - 1 < len(self.rC.differentials):
            for c, t in zip(self.rC.differentials[i - 1], self.theta.get(i, [])):
                col = dict(t)
                for k, p in c.items():
                    col[na_prev + k] = p
                cols.append(col)
        return cols


def _lift_into(fmap: ModuleMap, y, negate=False):
    if negate:
        y = vec_add(fmap.source.ring, {}, y, -1)
    pre = fmap.lift_element(y)
    if pre is None:
        raise NotExact("element does not lift; sequence is not exact")
    return pre


@dataclass
class LongExactSequence:
    """Nodes ``Hom(C,N), Hom(B,N), Hom(A,N), Ext^1(C,N), ...`` with the maps between them."""

    nodes: list  # (label, FPModule)
    maps: list  # ModuleMap from nodes[k] to nodes[k+1]
    exact: list  # per interior node, Hilbert-series certificate

    def to_json(self):
        return {
            "nodes": [{"label": l, "hilbert_series": M.hilbert_series.to_json()} for l, M in self.nodes],
            "exact_at": self.exact,
        }


def dualize_ses(f: ModuleMap, g: ModuleMap, N: FPModule, window: int) -> LongExactSequence:
    """The long exact Ext sequence of ``0 -> A -> B -> C -> 0`` into ``N``,
    for indices ``0..window``, with every map materialized."""
    certify_ses(f, g)
    H = Horseshoe(f, g, window + 1)
    rA, rC = H.rA, H.rC
    na = lambda i: len(rA.degrees[i]) if i < len(rA.degrees) else 0  # noqa: E731
    nc = lambda i: len(rC.degrees[i]) if i < len(rC.degrees) else 0  # noqa: E731
    n = N.ngens

    def term_and_maps(i, which):
        if which == "A":
            degs = rA.degrees[i] if i < len(rA.degrees) else ()
            out = (rA.degrees[i + 1] if i + 1 < len(rA.degrees) else (), rA.differentials[i] if i < rA.length else [])
            inn = (rA.degrees[i - 1], rA.differentials[i - 1]) if i >= 1 and i - 1 < rA.length else None
        elif which == "C":
            degs = rC.degrees[i] if i < len(rC.degrees) else ()
            out = (rC.degrees[i + 1] if i + 1 < len(rC.degrees) else (), rC.differentials[i] if i < rC.length else [])
            inn = (rC.degrees[i - 1], rC.differentials[i - 1]) if i >= 1 and i - 1 < rC.length else None
        else:
            degs = H.degrees(i)
            out = (H.degrees(i + 1), H.differential_columns(i + 1))
            inn = (H.degrees(i - 1), H.differential_columns(i)) if i >= 1 else None
        d_out = _dual_differential(N, degs, out[0], out[1])
        d_in = _dual_differential(N, inn[0], degs, inn[1]) if inn is not None and degs else None
        return cohomology(d_out.source, d_out, d_in)

    nodes, maps, exact = [], [], []
    prev_A = None
    for i in range(window + 1):
        HC, HB, HA = term_and_maps(i, "C"), term_and_maps(i, "B"), term_and_maps(i, "A")
        # Hom(P^C, N) -> Hom(P, N): psi'' |-> (0, psi'')
        inc = ModuleMap(HC.term, HB.term, [{na(i) * n + k: HB.term.ring.one()} for k in range(nc(i) * n)])
        # Hom(P, N) -> Hom(P^A, N): restriction
        res_imgs = [{k: HB.term.ring.one()} if k < na(i) * n else {} for k in range(HB.term.ngens)]
        res = ModuleMap(HB.term, HA.term, res_imgs)
        gstar = HC.induced(HB, inc)
        fstar = HB.induced(HA, res)
        if prev_A is not None:
            maps.append(_connecting(prev_A, HC, H, i - 1, N))
        nodes.extend([(f"Ext^{i}(C,N)", HC.value), (f"Ext^{i}(B,N)", HB.value), (f"Ext^{i}(A,N)", HA.value)])
        maps.extend([gstar, fstar])
        prev_A = HA
    # exactness at interior nodes by Hilbert-series rank accounting
    for k in range(len(nodes)):
        X = nodes[k][1]
        im_in = maps[k - 1].image()[0].hilbert_series if k >= 1 else HilbertSeries.zero()
        if k < len(maps):
            im_out = maps[k].image()[0].hilbert_series
            ok = X.hilbert_series - im_out == im_in
        else:
            ok = None  # last node: outgoing map not in the window
        exact.append(ok)
    if any(e is False for e in exact):
        raise NotExact("long exact sequence failed Hilbert-series accounting")
    return LongExactSequence(nodes, maps, exact)


def _connecting(HA: Cohomology, HC_next: Cohomology, H: Horseshoe, i: int, N: FPModule) -> ModuleMap:
    """``Ext^i(A, N) -> Ext^{i+1}(C, N)``, ``[psi] |-> [psi ∘ theta_{i+1}]``."""
    n = N.ngens
    theta = H.theta.get(i + 1, [])
    images = []
    ring = N.ring
    for g in HA.inclusion.images:
        v = {}
        for l, col in enumerate(theta):
            for j, p in col.items():
                for t in range(n):
                    q = g.get(j * n + t)
                    if q:
                        x = v.setdefault(l * n + t, {})
                        p_axpy(x, 1, ring.mul(p, q), ring.mod)
                        if not x:
                            del v[l * n + t]
        pre = HC_next.inclusion.lift_element(v) if v else {}
        if pre is None:
            raise NotExact("connecting map does not land in cycles")
        images.append(pre)
    return ModuleMap(HA.value, HC_next.value, images)
