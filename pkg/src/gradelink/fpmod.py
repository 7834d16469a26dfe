"""Finitely presented graded modules and degree-zero maps between them.

A module ``M = coker(F_1 -> F_0)`` is stored by its generator degrees and a
list of relation vectors ``{generator: polynomial}``.  Everything that only
needs k-linear information (membership, lifting, Hom in a fixed degree,
isomorphism checks) is done on degree pieces via :class:`ModuleModel`;
syzygies are only needed for kernels, images and presentations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from . import groebner as gb
from .errors import NotArtinian
from .hilbert import HilbertSeries, monomial_quotient_series
from .linalg import Echelon, kernel as lin_kernel, solve as lin_solve, v_axpy
from .poly import p_axpy, p_mul
from .ring import FreeModel, QuotientRing, minimal_subset, syzygies, vec_degree


# ---------------------------------------------------------------------------
# vectors over a free module: {generator index: polynomial dict}


def vec_add(ring, a, b, c=1):
    """``a + c*b`` for a scalar ``c``."""
    out = {i: dict(p) for i, p in a.items()}
    for i, p in b.items():
        q = out.setdefault(i, {})
        p_axpy(q, c, p, ring.mod)
        if not q:
            del out[i]
    return out


def vec_mul(ring, f, v):
    """Polynomial times vector, in normal form."""
    out = {}
    for i, p in v.items():
        q = ring.mul(f, p)
        if q:
            out[i] = q
    return out


def vec_combine(ring, coeffs, vectors):
    """``sum coeffs[j] * vectors[j]`` with polynomial coefficients ``{j: poly}``."""
    out = {}
    mod = ring.mod
    for j, f in coeffs.items():
        if not f:
            continue
        for i, p in vectors[j].items():
            q = out.setdefault(i, {})
            p_axpy(q, 1, ring.nf(p_mul(f, p, mod)), mod)
            if not q:
                del out[i]
    return out


def vec_nf(ring, v):
    out = {}
    for i, p in v.items():
        q = ring.nf(p)
        if q:
            out[i] = q
    return out


def vec_shift_index(v, offset):
    return {i + offset: p for i, p in v.items()}


# ---------------------------------------------------------------------------


class ModuleModel:
    """k-linear model of ``M_d = F_d / U_d`` with ``U`` the relation submodule.

    The quotient basis of ``M_d`` is the set of non-pivot coordinates of the
    semi-echelon basis of ``U_d``; reducing a vector of ``F_d`` gives its
    quotient coordinates directly.
    """

    def __init__(self, module: "FPModule"):
        self.module = module
        self.ring = module.ring
        self.free = FreeModel(module.ring, module.degrees)
        self._pieces = {}
        self._act = {}

    def _piece(self, d):
        hit = self._pieces.get(d)
        if hit is None:
            M = self.module
            ech = Echelon(self.ring.mod)
            for w in self.free.span_in_degree(M.relations, M.rel_degrees, d):
                ech.insert(w)
            nF = self.free.dim(d)
            qbasis = [k for k in range(nF) if k not in ech.rows]
            hit = (ech, qbasis, {k: n for n, k in enumerate(qbasis)})
            self._pieces[d] = hit
        return hit

    def dim(self, d):
        return len(self._piece(d)[1])

    def relation_space(self, d):
        return self._piece(d)[0]

    def reduce(self, coords, d):
        ech, _, qindex = self._piece(d)
        rem, _ = ech.reduce(coords)
        return {qindex[k]: v for k, v in rem.items()}

    def element(self, vec, d):
        """Quotient coordinates of a homogeneous vector of degree ``d``."""
        if not vec:
            return {}
        return self.reduce(self.free.coords(vec, d), d)

    def lift(self, q, d):
        _, qbasis, _ = self._piece(d)
        return {qbasis[n]: v for n, v in q.items()}

    def vector(self, q, d):
        return self.free.vector(self.lift(q, d), d)

    def basis_vectors(self, d):
        return [self.vector({n: self.ring.field.one}, d) for n in range(self.dim(d))]

    def act_monomial_basis(self, exp, n, d):
        key = (exp, n, d)
        hit = self._act.get(key)
        if hit is None:
            _, qbasis, _ = self._piece(d)
            i, m = self.free.piece(d)[0][qbasis[n]]
            e = self.ring.deg(exp)
            vec = {i: {m: self.ring.field.one}}
            hit = self.reduce(self.free.times_monomial(vec, exp, d + e), d + e)
            self._act[key] = hit
        return hit

    def act(self, poly, q, d):
        """``poly * element`` for ``element`` of degree ``d`` in quotient coordinates."""
        out = {}
        mod = self.ring.mod
        for t, c in poly.items():
            for n, x in q.items():
                v_axpy(out, c * x, self.act_monomial_basis(t, n, d), mod)
        return out

    def variable_matrix(self, v, d):
        """Images of the basis of ``M_d`` under ``x_v`` (a list of coordinate dicts)."""
        exp = self.ring.poly.var(v)
        return [self.act_monomial_basis(exp, n, d) for n in range(self.dim(d))]


class FPModule:
    """Graded module ``coker`` of the relation matrix.

    ``degrees[i]`` is the degree of generator ``e_i``; ``relations[j]`` is a
    homogeneous vector ``{i: polynomial}``.  The presentation matrix has the
    relations as columns.
    """

    def __init__(self, ring: QuotientRing, degrees, relations=(), name=None):
        self.ring = ring
        self.degrees = tuple(int(d) for d in degrees)
        rels, rdeg = [], []
        for r in relations:
            r = vec_nf(ring, r)
            if not r:
                continue
            if any(i < 0 or i >= len(self.degrees) for i in r):
                raise ValueError("relation refers to a missing generator")
            rels.append(r)
            rdeg.append(vec_degree(ring, r, self.degrees))
        self.relations = rels
        self.rel_degrees = tuple(rdeg)
        self.name = name

    # -- constructors
    @classmethod
    def free(cls, ring, degrees=(0,), name=None):
        return cls(ring, degrees, (), name)

    @classmethod
    def zero(cls, ring):
        return cls(ring, ())

    @classmethod
    def cyclic(cls, ring, ideal, degree=0, name=None):
        """``R/I`` with its generator in ``degree``; ``ideal`` is a list of polys or strings."""
        gens = [ring.parse(g) if isinstance(g, str) else ring.nf(g) for g in ideal]
        return cls(ring, (degree,), [{0: g} for g in gens if g], name)

    @classmethod
    def residue_field(cls, ring, degree=0):
        return cls.cyclic(ring, [ring.var(v) for v in range(ring.nvars)], degree, name="k")

    @classmethod
    def from_rows(cls, ring, rows, degrees, name=None):
        """Build from a row-major presentation matrix of polynomial strings."""
        rows = [list(r) for r in rows]
        if len(rows) != len(degrees):
            raise ValueError("presentation has %d rows but %d generator degrees" % (len(rows), len(degrees)))
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("presentation rows have unequal lengths")
        rels = []
        for j in range(ncols):
            col = {}
            for i in range(len(rows)):
                e = rows[i][j]
                p = ring.parse(e) if isinstance(e, str) else ring.nf(e)
                if p:
                    col[i] = p
            rels.append(col)
        return cls(ring, degrees, rels, name)

    # -- basic data
    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"<FPModule {label}{len(self.degrees)} gens, {len(self.relations)} relations>"

    @property
    def ngens(self):
        return len(self.degrees)

    def presentation_rows(self):
        return [[self.relations[j].get(i, {}) for j in range(len(self.relations))] for i in range(self.ngens)]

    def to_json(self):
        rows = [[self.ring.format(p) for p in row] for row in self.presentation_rows()]
        return {"degrees": list(self.degrees), "presentation": rows}

    @classmethod
    def from_json(cls, ring, data, name=None):
        degrees = data.get("degrees")
        rows = data.get("presentation", [])
        if degrees is None:
            degrees = [0] * len(rows)
        if not rows:
            rows = [[] for _ in degrees]
        return cls.from_rows(ring, rows, degrees, name)

    @cached_property
    def model(self) -> ModuleModel:
        return ModuleModel(self)

    def dim(self, d):
        return self.model.dim(d)

    def element(self, vec):
        d = vec_degree(self.ring, vec, self.degrees)
        return self.model.element(vec, d) if d is not None else {}

    def is_zero_element(self, vec):
        return not self.element(vec)

    def min_generator_degrees(self):
        return tuple(sorted(self.degrees[i] for i in self._minimal_generator_indices))

    @cached_property
    def _minimal_generator_indices(self):
        """Generators independent modulo the constant parts of the relations."""
        chosen = []
        by_degree = {}
        for i, a in enumerate(self.degrees):
            by_degree.setdefault(a, []).append(i)
        zero = self.ring.poly.zero_exp
        for a, idx in sorted(by_degree.items()):
            ech = Echelon(self.ring.mod)
            pos = {i: n for n, i in enumerate(idx)}
            for r, c in zip(self.relations, self.rel_degrees):
                if c != a:
                    continue
                const = {pos[i]: p[zero] for i, p in r.items() if zero in p and i in pos}
                if const:
                    ech.insert(const)
            chosen.extend(i for n, i in enumerate(idx) if n not in ech.rows)
        return tuple(sorted(chosen))

    @property
    def num_min_generators(self):
        return len(self._minimal_generator_indices)

    def is_zero(self):
        return self.num_min_generators == 0

    @cached_property
    def hilbert_series(self) -> HilbertSeries:
        ring = self.ring
        if self.is_zero():
            return HilbertSeries.zero()
        if ring.is_artinian:
            lo, hi = min(self.degrees), max(self.degrees) + ring.top_degree
            return HilbertSeries.from_dims({d: self.dim(d) for d in range(lo, hi + 1)})
        elems, tags = [], []
        for r in self.relations:
            elems.append({(i, m): c for i, p in r.items() for m, c in p.items()})
            tags.append(None)
        for i in range(self.ngens):
            for g in ring.groebner_basis:
                elems.append({(i, m): c for m, c in g.items()})
                tags.append(("ideal", i))
        _, leads = gb.module_groebner(ring.poly, elems, list(self.degrees), ring.degree_cap, tags)
        total = HilbertSeries.zero()
        for i, a in enumerate(self.degrees):
            mons = [m for c, m in leads if c == i]
            total = total + monomial_quotient_series(mons, ring.weights, a)
        return total

    @property
    def is_artinian(self):
        return self.hilbert_series.is_finite

    @property
    def krull_dim(self):
        return self.hilbert_series.krull_dim

    def degree_range(self):
        """``(lo, hi)`` covering every nonzero piece of a finite-length module."""
        if not self.is_artinian:
            raise NotArtinian("module has positive Krull dimension")
        hs = self.hilbert_series
        if hs.is_zero():
            return (0, -1)
        return (hs.min_degree, hs.max_degree)

    def total_dim(self):
        return self.hilbert_series.total()

    def shift(self, a):
        """``M(a)``: the same module with every degree lowered by ``a``."""
        return FPModule(self.ring, [d - a for d in self.degrees], self.relations, self.name and f"{self.name}({a})")

    def quotient(self, vectors, name=None):
        return FPModule(self.ring, self.degrees, list(self.relations) + list(vectors), name)

    @cached_property
    def minimal(self) -> "MinimalForm":
        return _minimize(self)

    def __eq__(self, other):
        return (
            isinstance(other, FPModule)
            and self.ring is other.ring
            and self.degrees == other.degrees
            and self.relations == other.relations
        )

    def __hash__(self):
        return hash((id(self.ring), self.degrees, len(self.relations)))


# ---------------------------------------------------------------------------


class ModuleMap:
    """A degree-0 homomorphism given by the images of the source generators."""

    def __init__(self, source: FPModule, target: FPModule, images, check=False):
        if len(images) != source.ngens:
            raise ValueError("need one image per source generator")
        ring = source.ring
        self.source = source
        self.target = target
        self.images = [vec_nf(ring, v) for v in images]
        for v, a in zip(self.images, source.degrees):
            d = vec_degree(ring, v, target.degrees)
            if d is not None and d != a:
                raise ValueError(f"image of a degree-{a} generator has degree {d}")
        if check and not self.is_well_defined():
            raise ValueError("map does not respect the source relations")

    def __repr__(self):
        return f"<ModuleMap {self.source!r} -> {self.target!r}>"

    @classmethod
    def identity(cls, M):
        one = M.ring.one()
        return cls(M, M, [{i: dict(one)} for i in range(M.ngens)])

    @classmethod
    def zero(cls, M, N):
        return cls(M, N, [{} for _ in range(M.ngens)])

    def apply(self, vec):
        """Image of a source vector, as a target vector."""
        return vec_combine(self.source.ring, vec, self.images)

    def compose(self, first: "ModuleMap") -> "ModuleMap":
        """``self ∘ first``."""
        return ModuleMap(first.source, self.target, [self.apply(v) for v in first.images])

    def __add__(self, other):
        ring = self.source.ring
        return ModuleMap(self.source, self.target, [vec_add(ring, a, b) for a, b in zip(self.images, other.images)])

    def __sub__(self, other):
        ring = self.source.ring
        return ModuleMap(self.source, self.target, [vec_add(ring, a, b, -1) for a, b in zip(self.images, other.images)])

    def scale(self, c):
        ring = self.source.ring
        return ModuleMap(self.source, self.target, [vec_add(ring, {}, v, c) for v in self.images])

    def matrix_rows(self):
        return [[self.images[j].get(i, {}) for j in range(self.source.ngens)] for i in range(self.target.ngens)]

    def to_json(self):
        fmt = self.source.ring.format
        return [[fmt(p) for p in row] for row in self.matrix_rows()]

    def is_well_defined(self):
        return all(self.target.is_zero_element(self.apply(r)) for r in self.source.relations)

    def is_zero(self):
        return all(self.target.is_zero_element(v) for v in self.images)

    def equals(self, other):
        return (self - other).is_zero()

    def on_piece(self, d):
        """Images of the basis of ``source_d`` in quotient coordinates of ``target_d``."""
        S, T = self.source.model, self.target.model
        tf = T.free
        out = []
        for q in range(S.dim(d)):
            i, m = S.free.piece(d)[0][S.lift({q: 1}, d).popitem()[0]]
            out.append(T.reduce(tf.times_monomial(self.images[i], m, d), d) if self.images[i] else {})
        return out

    def is_surjective(self):
        T = self.target
        model = T.model
        for i in T._minimal_generator_indices:
            a = T.degrees[i]
            span = model.free.span_in_degree(self.images, self.source.degrees, a)
            ech = Echelon(T.ring.mod)
            for w in span:
                q = model.reduce(w, a)
                if q:
                    ech.insert(q)
            target = model.element({i: T.ring.one()}, a)
            if target and not ech.contains(target):
                return False
        return True

    def lift_element(self, vec):
        """Some source vector mapping to ``vec`` modulo target relations, or ``None``."""
        T = self.target
        d = vec_degree(T.ring, vec, T.degrees)
        if d is None:
            return {}
        S = self.source
        sfree = S.model.free
        basis, _ = sfree.piece(d)
        images = []
        for i, m in basis:
            img = self.images[i]
            images.append(T.model.reduce(T.model.free.times_monomial(img, m, d), d) if img else {})
        sol = lin_solve(images, T.model.element(vec, d), T.ring.mod)
        if sol is None:
            return None
        return sfree.vector(sol, d)

    def kernel(self):
        """``(K, inclusion)`` with ``K = ker(self)``."""
        S, T = self.source, self.target
        ring = S.ring
        cols = list(self.images) + list(T.relations)
        cdeg = list(S.degrees) + list(T.rel_degrees)
        _, syz = syzygies(ring, cols, T.degrees, cdeg, ring.degree_cap)
        pre = []
        for v in syz:
            w = {j: p for j, p in v.items() if j < S.ngens}
            if w:
                pre.append(w)
        return submodule(S, pre)

    def image(self):
        return submodule(self.target, self.images)

    def cokernel(self):
        """``(coker, projection)`` from the target."""
        T = self.target
        C = T.quotient(self.images)
        return C, ModuleMap(T, C, [{i: T.ring.one()} for i in range(T.ngens)])

    def is_injective(self):
        K, _ = self.kernel()
        return K.is_zero()

    def is_isomorphism(self):
        return self.is_surjective() and self.is_injective()


@dataclass
class MinimalForm:
    """A minimal presentation with the comparison isomorphisms to the original."""

    module: FPModule
    to_original: ModuleMap
    from_original: ModuleMap


def _independent_mod_relations(M: FPModule, vectors):
    """Minimal subfamily of ``vectors`` generating ``(vectors) + U`` modulo ``U``."""
    ring = M.ring
    model = M.model
    degs = [vec_degree(ring, v, M.degrees) for v in vectors]
    kept = []
    order = sorted((d, i) for i, d in enumerate(degs) if d is not None)
    for d in sorted({d for d, _ in order}):
        ech = Echelon(ring.mod)
        below = [i for i in kept if degs[i] < d]
        for w in model.free.span_in_degree([vectors[i] for i in below], [degs[i] for i in below], d):
            q = model.reduce(w, d)
            if q:
                ech.insert(q)
        for dd, i in order:
            if dd != d:
                continue
            q = model.element(vectors[i], d)
            if q:
                piv, _ = ech.insert(q)
                if piv is not None:
                    kept.append(i)
    return sorted(kept, key=lambda i: (degs[i], i))


def submodule(M: FPModule, vectors, name=None):
    """``(N, inclusion)`` for the submodule of ``M`` generated by ``vectors``,
    with a minimal presentation."""
    ring = M.ring
    keep = _independent_mod_relations(M, [vec_nf(ring, v) for v in vectors])
    gens = [vec_nf(ring, vectors[i]) for i in keep]
    gdeg = [vec_degree(ring, v, M.degrees) for v in gens]
    cols = gens + list(M.relations)
    cdeg = gdeg + list(M.rel_degrees)
    _, syz = syzygies(ring, cols, M.degrees, cdeg, ring.degree_cap)
    rels = []
    for v in syz:
        w = {j: p for j, p in v.items() if j < len(gens)}
        if w:
            rels.append(w)
    if rels:
        rels = [rels[i] for i in minimal_subset(ring, rels, gdeg)]
    N = FPModule(ring, gdeg, rels, name)
    return N, ModuleMap(N, M, gens)


def _minimize(M: FPModule) -> MinimalForm:
    ring = M.ring
    S = list(M._minimal_generator_indices)
    one = ring.one()
    if len(S) == M.ngens and _relations_minimal(M):
        ident = ModuleMap.identity(M)
        return MinimalForm(M, ident, ident)
    N, inc = submodule(M, [{i: dict(one)} for i in S], name=M.name)
    back = []
    for i in range(M.ngens):
        pre = inc.lift_element({i: dict(one)})
        if pre is None:  # pragma: no cover - generators always lift
            raise ArithmeticError("generator not in span of minimal generators")
        back.append(pre)
    return MinimalForm(N, inc, ModuleMap(M, N, back))


def _relations_minimal(M):
    zero = M.ring.poly.zero_exp
    if any(zero in p for r in M.relations for p in r.values()):
        return False
    if not M.relations:
        return True
    return len(minimal_subset(M.ring, M.relations, M.degrees)) == len(M.relations)


def minimal_presentation(M: FPModule) -> FPModule:
    return M.minimal.module


# ---------------------------------------------------------------------------
# constructions


@dataclass
class DirectSum:
    module: FPModule
    injections: list
    projections: list


def direct_sum(*modules, name=None, ring=None) -> DirectSum:
    ring = modules[0].ring if modules else ring
    if ring is None:
        raise ValueError("an empty direct sum needs the ring")
    degrees, rels, offsets = [], [], []
    for M in modules:
        offsets.append(len(degrees))
        degrees.extend(M.degrees)
    for M, off in zip(modules, offsets):
        rels.extend(vec_shift_index(r, off) for r in M.relations)
    S = FPModule(ring, degrees, rels, name)
    one = ring.one()
    inj, proj = [], []
    for M, off in zip(modules, offsets):
        inj.append(ModuleMap(M, S, [{off + i: dict(one)} for i in range(M.ngens)]))
        imgs = []
        for k in range(S.ngens):
            imgs.append({k - off: dict(one)} if off <= k < off + M.ngens else {})
        proj.append(ModuleMap(S, M, imgs))
    return DirectSum(S, inj, proj)


def direct_sum_module(*modules, name=None, ring=None) -> FPModule:
    return direct_sum(*modules, name=name, ring=ring).module


def tensor(M: FPModule, N: FPModule, name=None) -> FPModule:
    """``M ⊗ N`` with generators ``e_i ⊗ f_k`` at index ``i * N.ngens + k``."""
    ring = M.ring
    n = N.ngens
    degrees = [a + b for a in M.degrees for b in N.degrees]
    rels = []
    for r in M.relations:
        for k in range(n):
            rels.append({i * n + k: p for i, p in r.items()})
    for s in N.relations:
        for i in range(M.ngens):
            rels.append({i * n + k: p for k, p in s.items()})
    return FPModule(ring, degrees, rels, name)


def hom_degree_basis(M: FPModule, N: FPModule, e=0):
    """k-basis of ``Hom(M, N)_e`` as degree-0 maps ``M -> N(e)``.

    Solves the linear conditions ``sum_j A_jl y_j = 0`` degree-wise, with no
    syzygy computation.
    """
    ring = M.ring
    Nm = N.model
    Ne = N.shift(e)
    var_offsets, total = [], 0
    for a in M.degrees:
        var_offsets.append(total)
        total += Nm.dim(a + e)
    cons_offsets, ctotal = [], 0
    for c in M.rel_degrees:
        cons_offsets.append(ctotal)
        ctotal += Nm.dim(c + e)
    columns = []
    for j, a in enumerate(M.degrees):
        for n in range(Nm.dim(a + e)):
            img = {}
            for l, r in enumerate(M.relations):
                p = r.get(j)
                if p:
                    for k, v in Nm.act(p, {n: ring.field.one}, a + e).items():
                        img[cons_offsets[l] + k] = v
            columns.append(img)
    out = []
    for kv in lin_kernel(columns, ring.mod):
        images = []
        for j, a in enumerate(M.degrees):
            off = var_offsets[j]
            q = {k - off: v for k, v in kv.items() if off <= k < off + Nm.dim(a + e)}
            images.append(Nm.vector(q, a + e) if q else {})
        out.append(ModuleMap(M, Ne, images))
    return out


class HomModule(FPModule):
    """``Hom(M, N)`` presented as a submodule of ``sum_j N(a_j)``.

    Generator ``t`` of degree ``e`` corresponds to the map ``M -> N(e)``
    returned by :meth:`as_map`.
    """

    def __init__(self, M, N, gens, degrees, relations, name=None):
        super().__init__(M.ring, degrees, relations, name)
        self.hom_source = M
        self.hom_target = N
        self.hom_vectors = gens

    def as_map(self, vec):
        """The homomorphism represented by a vector over this module's generators."""
        M, N = self.hom_source, self.hom_target
        ring = M.ring
        big = vec_combine(ring, vec, self.hom_vectors)
        d = vec_degree(ring, vec, self.degrees)
        n = N.ngens
        images = []
        for j in range(M.ngens):
            images.append({i - j * n: p for i, p in big.items() if j * n <= i < (j + 1) * n})
        return ModuleMap(M, N.shift(d or 0), images)

    def from_map(self, f: ModuleMap, e=0):
        """Vector over the generators representing a degree-``e`` map ``M -> N(e)``."""
        n = self.hom_target.ngens
        big = {}
        for j, v in enumerate(f.images):
            for i, p in v.items():
                big[j * n + i] = p
        amb = self._ambient_inclusion
        pre = amb.lift_element(big)
        if pre is None:
            raise ValueError("map is not a homomorphism")
        return pre

    @cached_property
    def _ambient_inclusion(self):
        M, N = self.hom_source, self.hom_target
        amb = direct_sum_module(*[N.shift(a) for a in M.degrees], ring=M.ring)
        return ModuleMap(self, amb, self.hom_vectors)


def hom_module(M: FPModule, N: FPModule, name=None) -> HomModule:
    """Presentation of ``Hom(M, N)`` as ``ker(sum_j N(a_j) -> sum_l N(c_l))``."""
    n = N.ngens
    src = direct_sum_module(*[N.shift(a) for a in M.degrees], ring=M.ring)
    tgt = direct_sum_module(*[N.shift(c) for c in M.rel_degrees], ring=M.ring)
    images = []
    for j in range(M.ngens):
        for i in range(n):
            v = {}
            for l, r in enumerate(M.relations):
                p = r.get(j)
                if p:
                    v[l * n + i] = p
            images.append(v)
    Phi = ModuleMap(src, tgt, images)
    K, inc = Phi.kernel()
    return HomModule(M, N, inc.images, K.degrees, K.relations, name)


def annihilator(M: FPModule) -> "Ideal":
    """``Ann(M)`` as the kernel of ``R -> sum_i M(a_i)``, ``1 -> (e_i)``."""
    ring = M.ring
    if M.is_zero():
        return Ideal(ring, [ring.one()])
    R = FPModule.free(ring, (0,))
    amb = direct_sum_module(*[M.shift(a) for a in M.degrees])
    one = ring.one()
    f = ModuleMap(R, amb, [{i * M.ngens + i: dict(one) for i in range(M.ngens)}])
    K, inc = f.kernel()
    return Ideal(ring, [v.get(0, {}) for v in inc.images])


class Ideal:
    """A homogeneous ideal of a quotient ring, compared through its preimage's Groebner basis."""

    def __init__(self, ring: QuotientRing, gens):
        self.ring = ring
        self.gens = [ring.nf(ring.parse(g) if isinstance(g, str) else g) for g in gens]
        self.gens = [g for g in self.gens if g]

    @cached_property
    def groebner_basis(self):
        return gb.groebner_basis(self.ring.poly, self.gens + list(self.ring.groebner_basis))

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.groebner_basis == other.groebner_basis

    def __hash__(self):
        return hash(len(self.groebner_basis))

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        return any(g == self.ring.one() for g in self.groebner_basis)

    def contains(self, f):
        return not gb.reduce_by(self.ring.poly, f, self.groebner_basis)

    def quotient_module(self, degree=0):
        return FPModule.cyclic(self.ring, self.gens, degree)

    def by_degree(self):
        out = {}
        for g in self.gens:
            out.setdefault(self.ring.degree_of(g), []).append(g)
        return out

    def format(self):
        return [self.ring.format(g) for g in self.gens]

    def __repr__(self):
        return f"Ideal({', '.join(self.format())})"


# ---------------------------------------------------------------------------
# finite-length modules from explicit linear actions


def module_from_action(ring: QuotientRing, dims, action, name=None):
    """Build the module whose k-structure is given by ``dims[d]`` and
    ``action[(v, d)]`` (images of the basis of degree ``d`` under ``x_v``,
    as coordinate dicts in degree ``d + w_v``).

    Returns ``(module, generator_coordinates)``.
    """
    mod = ring.mod
    degs = sorted(d for d, n in dims.items() if n)
    if not degs:
        return FPModule.zero(ring), []
    lo, hi = degs[0], degs[-1]
    W = ring.weights

    def apply_var(v, vec, d):
        out = {}
        mats = action[(v, d)]
        for k, c in vec.items():
            v_axpy(out, c, mats[k], mod)
        return out

    gens = []  # (degree, coordinate vector)
    for d in range(lo, hi + 1):
        n = dims.get(d, 0)
        if not n:
            continue
        ech = Echelon(mod)
        for v in range(ring.nvars):
            dd = d - W[v]
            for k in range(dims.get(dd, 0)):
                img = action[(v, dd)][k]
                if img:
                    ech.insert(img)
        for k in range(n):
            if k not in ech.rows:
                gens.append((d, {k: ring.field.one}))
    gdeg = [d for d, _ in gens]
    free = FreeModel(ring, gdeg)
    cache = {}

    def image_of(i, m):
        key = (i, m)
        if key in cache:
            return cache[key]
        d0, vec = gens[i]
        if sum(m) == 0:
            res = dict(vec)
        else:
            v = next(k for k, e in enumerate(m) if e)
            prev = tuple(e - (k == v) for k, e in enumerate(m))
            base = image_of(i, prev)
            res = apply_var(v, base, d0 + ring.deg(prev)) if base else {}
        cache[key] = res
        return res

    top = min(hi + 1, max(gdeg) + ring.top_degree) if ring.is_artinian else hi + 1
    kernels = {}
    rels = []
    var_exps = [ring.poly.var(v) for v in range(ring.nvars)]
    for d in range(min(gdeg), top + 1):
        basis, _ = free.piece(d)
        if not basis:
            continue
        imgs = [image_of(i, m) if d <= hi else {} for i, m in basis]
        K = lin_kernel(imgs, mod)
        kernels[d] = K
        if not K:
            continue
        ech = Echelon(mod)
        for v, w in zip(var_exps, W):
            for k in kernels.get(d - w, []):
                ech.insert(free.times_monomial(free.vector(k, d - w), v, d))
        for k in K:
            piv, _ = ech.insert(k)
            if piv is not None:
                rels.append(free.vector(k, d))
    return FPModule(ring, gdeg, rels, name), gens


def vector_model(M: FPModule):
    """``(dims, action)`` of a finite-length module in its quotient coordinates."""
    lo, hi = M.degree_range()
    model = M.model
    dims = {d: model.dim(d) for d in range(lo, hi + 1)}
    action = {}
    for d in range(lo, hi + 1):
        for v in range(M.ring.nvars):
            action[(v, d)] = model.variable_matrix(v, d) if dims[d] else []
    return dims, action


def k_dual(M: FPModule, name=None) -> FPModule:
    """Graded k-dual ``Hom_k(M, k)`` with the contragredient action."""
    if not M.is_artinian:
        raise NotArtinian("k_dual needs a finite-length module")
    if M.is_zero():
        return FPModule.zero(M.ring)
    dims, action = vector_model(M)
    W = M.ring.weights
    ddims = {-d: n for d, n in dims.items()}
    daction = {}
    for v in range(M.ring.nvars):
        for dd in ddims:
            # x_v : M^v_{dd} -> M^v_{dd + w} is the transpose of x_v : M_{-dd-w} -> M_{-dd}
            src = -dd - W[v]
            n_out = ddims.get(dd + W[v], 0)
            cols = [dict() for _ in range(ddims[dd])]
            if n_out:
                for k, img in enumerate(action.get((v, src), [])):
                    for kk, c in img.items():
                        cols[kk][k] = c
            daction[(v, dd)] = cols
    D, _ = module_from_action(M.ring, ddims, daction, name)
    return D


# ---------------------------------------------------------------------------
# isomorphism testing


@dataclass
class IsoCertificate:
    status: str  # "verified" | "refuted" | "inconclusive"
    map: ModuleMap = None
    inverse: ModuleMap = None
    obstruction: str = None
    tried: int = 0

    @property
    def verified(self):
        return self.status == "verified"

    @property
    def refuted(self):
        return self.status == "refuted"

    def to_json(self):
        out = {"status": self.status}
        if self.obstruction:
            out["obstruction"] = self.obstruction
        if self.map is not None:
            out["map"] = self.map.to_json()
            out["inverse"] = self.inverse.to_json()
        out["candidates_tried"] = self.tried
        return out


def socle_dims(M: FPModule):
    """``{d: dim soc(M)_d}`` for a finite-length module."""
    lo, hi = M.degree_range()
    model = M.model
    out = {}
    for d in range(lo, hi + 1):
        maps = []
        for v, w in enumerate(M.ring.weights):
            maps.append((w, model.variable_matrix(v, d)))
        n = model.dim(d)
        cols = []
        for k in range(n):
            img, off = {}, 0
            for w, mat in maps:
                for kk, c in mat[k].items():
                    img[off + kk] = c
                off += model.dim(d + w)
            cols.append(img)
        s = len(lin_kernel(cols, M.ring.mod))
        if s:
            out[d] = s
    return out


def _invariants(M: FPModule):
    ring = M.ring
    yield "hilbert series", lambda X: X.hilbert_series
    yield "minimal generator degrees", lambda X: X.min_generator_degrees()
    yield "annihilator", lambda X: annihilator(X)
    for v in range(ring.nvars):
        xv = ring.var(v)
        nm = ring.names[v]
        yield (
            f"hilbert series of M/{nm}M",
            lambda X, xv=xv: X.quotient([{i: xv} for i in range(X.ngens)]).hilbert_series,
        )
    if M.is_artinian:
        yield "socle dimensions", socle_dims


def refute_isomorphism(M: FPModule, N: FPModule):
    """Name of the first invariant distinguishing ``M`` and ``N``, or ``None``."""
    for name, inv in _invariants(M):
        a, b = inv(M), inv(N)
        if a != b:
            return f"{name}: {_show(a)} vs {_show(b)}"
    return None


def _show(x):
    if isinstance(x, Ideal):
        return "(" + ", ".join(x.format()) + ")"
    return str(x)


def _inverse(f: ModuleMap):
    images = []
    for i in range(f.target.ngens):
        pre = f.lift_element({i: f.target.ring.one()})
        if pre is None:
            return None
        images.append(pre)
    return ModuleMap(f.target, f.source, images)


def certify_isomorphism(f: ModuleMap):
    """Inverse of ``f`` with both composites checked, or ``None``."""
    if not f.is_surjective():
        return None
    if f.source.hilbert_series != f.target.hilbert_series:
        return None
    g = _inverse(f)
    if g is None:
        return None
    if not g.compose(f).equals(ModuleMap.identity(f.source)):
        return None
    if not f.compose(g).equals(ModuleMap.identity(f.target)):
        return None
    return g


def iso_search(M: FPModule, N: FPModule, budget=64, seed=0, twist=0, seed_maps=()) -> IsoCertificate:
    """Look for a degree-0 isomorphism ``M -> N(twist)``.

    Candidates: ``seed_maps`` first, then the k-basis of ``Hom(M, N(twist))_0``,
    then seeded random combinations of that basis, ``budget`` candidates total.
    """
    Nt = N.shift(twist) if twist else N
    obstruction = refute_isomorphism(M, Nt)
    if obstruction:
        return IsoCertificate("refuted", obstruction=obstruction)
    if M.is_zero():
        z = ModuleMap.zero(M, Nt)
        return IsoCertificate("verified", z, ModuleMap.zero(Nt, M))
    basis = hom_degree_basis(M, N, twist)
    if not basis:
        return IsoCertificate("refuted", obstruction="no nonzero degree-0 homomorphisms")
    rng = random.Random(seed)
    field = M.ring.field
    tried = 0

    def candidates():
        yield from seed_maps
        yield from basis
        while True:
            f = None
            for b in basis:
                c = field.random_element(rng)
                if c:
                    f = b.scale(c) if f is None else f + b.scale(c)
            if f is not None:
                yield f

    for f in candidates():
        if tried >= budget:
            break
        tried += 1
        f = ModuleMap(M, Nt, f.images)
        g = certify_isomorphism(f)
        if g is not None:
            return IsoCertificate("verified", f, g, tried=tried)
    return IsoCertificate("inconclusive", tried=tried)
