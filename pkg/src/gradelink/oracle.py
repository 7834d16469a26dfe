"""Dense linear-algebra models of finite-length graded modules.

Everything here is computed degree by degree from the ideal generators and
the presentation matrices by Gaussian elimination (sympy ``DomainMatrix``).
No Groebner basis, no module normal forms and none of the engine's Hom, Ext
or Tor code is used, so the numbers are an independent check of the engine
on Artinian rings.
"""

from __future__ import annotations

from sympy.polys.matrices import DomainMatrix

from .errors import NotArtinian
from .poly import PolyRing
from .summands import sympy_domain, to_domain


def _rank(rows, ncols, K):
    if not rows or not ncols:
        return 0
    return DomainMatrix(rows, (len(rows), ncols), K).rank()


def _rref(rows, ncols, K):
    """``(reduced rows, pivots)`` with zero rows dropped."""
    if not rows or not ncols:
        return [], ()
    r, piv = DomainMatrix(rows, (len(rows), ncols), K).rref()
    return r.to_list()[: len(piv)], piv


def _nullspace(cols, nrows, K):
    """Basis of ``{c : sum_j c_j cols[j] = 0}``; ``cols`` are column vectors."""
    n = len(cols)
    if not n:
        return []
    if not nrows:
        return [[K.one if i == j else K.zero for i in range(n)] for j in range(n)]
    rows = [[cols[j][i] for j in range(n)] for i in range(nrows)]
    return DomainMatrix(rows, (nrows, n), K).nullspace().to_list()


class _Reducer:
    """Quotient of ``K^n`` by a subspace, with coordinates on the non-pivot columns."""

    def __init__(self, n, rows, K):
        self.K = K
        self.n = n
        self.rows, self.pivots = _rref(rows, n, K)
        piv = set(self.pivots)
        self.free = [c for c in range(n) if c not in piv]
        self.position = {c: i for i, c in enumerate(self.free)}

    @property
    def dim(self):
        return len(self.free)

    def coords(self, v):
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                for j, a in enumerate(row):
                    if a:
                        v[j] -= c * a
        return [v[c] for c in self.free]


class DenseRing:
    """``k[x]/I`` degree by degree; ``I`` is given by generator strings."""

    def __init__(self, field, names, ideal=(), weights=None, max_degree=64):
        self.field = field
        self.K = sympy_domain(field)
        self.poly = PolyRing(field, names, weights=weights)
        self.weights = self.poly.weights
        self.nvars = self.poly.nvars
        self.gens = [g for g in (self.poly.parse(s) if isinstance(s, str) else s for s in ideal) if g]
        self._pieces = {}
        top, zeros, d = None, 0, 0
        while zeros < max(self.weights):
            if d > max_degree:
                raise NotArtinian("ring is not Artinian within the degree limit")
            if self.piece(d)[2].dim:
                top, zeros = d, 0
            else:
                zeros += 1
            d += 1
        self.top = top

    @classmethod
    def of(cls, ring):
        """Dense model of a :class:`QuotientRing` built from its ideal generators alone."""
        return cls(ring.field, ring.names, list(ring.ideal_generators), ring.weights)

    def piece(self, d):
        """``(monomials, index, reducer)`` for ``R_d``."""
        if d in self._pieces:
            return self._pieces[d]
        K = self.K
        mons = self.poly.monomials_of_degree(d) if d >= 0 else []
        index = {m: i for i, m in enumerate(mons)}
        rows = []
        for g in self.gens:
            e = self.poly.degree_of(g)
            for m in self.poly.monomials_of_degree(d - e) if d >= e else []:
                row = [K.zero] * len(mons)
                for mm, c in g.items():
                    row[index[tuple(a + b for a, b in zip(mm, m))]] += to_domain(K, self.field, c)
                rows.append(row)
        out = (mons, index, _Reducer(len(mons), rows, K))
        self._pieces[d] = out
        return out

    def basis(self, d):
        """Standard monomials of ``R_d`` (the non-pivot columns)."""
        mons, _, red = self.piece(d)
        return [mons[c] for c in red.free]

    def reduce_monomial(self, m, c=None):
        """Coordinates of ``c * m`` in ``R_{deg m}``."""
        d = self.poly.deg(m)
        mons, index, red = self.piece(d)
        v = [self.K.zero] * len(mons)
        v[index[m]] = self.K.one if c is None else c
        return red.coords(v)

    def reduce_poly(self, p):
        d = self.poly.degree_of(p)
        mons, index, red = self.piece(d)
        v = [self.K.zero] * len(mons)
        for m, c in p.items():
            v[index[m]] += to_domain(self.K, self.field, c)
        return red.coords(v)


class DenseModule:
    """Finite-length graded module as ``dims`` and variable action matrices.

    ``action[(v, d)]`` lists, for each basis vector of degree ``d``, its image
    under ``x_v`` as a coordinate list in degree ``d + w_v``.
    """

    def __init__(self, ring: DenseRing, dims, action):
        self.ring = ring
        self.dims = {d: n for d, n in dims.items() if n}
        self.action = action

    def dim(self, d):
        return self.dims.get(d, 0)

    @property
    def degrees(self):
        return sorted(self.dims)

    def act(self, v, d, vec):
        """``x_v * vec`` for ``vec`` of degree ``d``."""
        K = self.ring.K
        n = self.dim(d + self.ring.weights[v])
        out = [K.zero] * n
        if not n:
            return out
        for k, c in enumerate(vec):
            if c:
                for j, a in enumerate(self.action[(v, d)][k]):
                    if a:
                        out[j] += c * a
        return out

    def act_monomial(self, m, d, vec):
        for v, e in enumerate(m):
            for _ in range(e):
                vec = self.act(v, d, vec)
                d += self.ring.weights[v]
        return vec

    def hilbert(self):
        return dict(self.dims)


def presented(ring: DenseRing, degrees, relations) -> DenseModule:
    """``F / span(relations)`` for ``F = (+) R(-a_i)``.

    ``relations`` are column dicts ``{i: poly}`` in the ambient polynomial ring.
    """
    K = ring.K
    degrees = list(degrees)
    if not degrees:
        return DenseModule(ring, {}, {})
    lo, hi = min(degrees), max(degrees) + ring.top

    def free_basis(d):
        out = []
        for i, a in enumerate(degrees):
            if 0 <= d - a <= ring.top:
                out.extend((i, m) for m in ring.basis(d - a))
        return out

    def free_vector(d, i, coords):
        """Embed ring coordinates of degree ``d - a_i`` into ``F_d``."""
        pos = 0
        out = [K.zero] * len(free_basis(d))
        for ii, a in enumerate(degrees):
            if not 0 <= d - a <= ring.top:
                continue
            n = ring.piece(d - a)[2].dim
            if ii == i:
                for j, c in enumerate(coords):
                    out[pos + j] += c
            pos += n
        return out

    relations = [r for r in relations if any(r.values())]
    rel_deg = []
    for r in relations:
        i, p = next((i, p) for i, p in r.items() if p)
        rel_deg.append(degrees[i] + ring.poly.degree_of(p))

    quotients = {}
    for d in range(lo, hi + 1):
        n = len(free_basis(d))
        rows = []
        for r, c in zip(relations, rel_deg):
            if d < c:
                continue
            for m in ring.poly.monomials_of_degree(d - c):
                vec = [K.zero] * n
                for i, p in r.items():
                    if not p or not 0 <= d - degrees[i] <= ring.top:
                        continue
                    mp = {tuple(a + b for a, b in zip(mm, m)): cc for mm, cc in p.items()}
                    vec = [x + y for x, y in zip(vec, free_vector(d, i, ring.reduce_poly(mp)))]
                rows.append(vec)
        quotients[d] = (free_basis(d), _Reducer(n, rows, K))

    dims = {d: q[1].dim for d, q in quotients.items()}
    action = {}
    for d, (fb, red) in quotients.items():
        for v in range(ring.nvars):
            dd = d + ring.weights[v]
            cols = []
            for c in red.free:
                i, m = fb[c]
                mv = tuple(e + (k == v) for k, e in enumerate(m))
                if dd not in quotients or not 0 <= dd - degrees[i] <= ring.top:
                    cols.append([K.zero] * dims.get(dd, 0))
                    continue
                vec = free_vector(dd, i, ring.reduce_monomial(mv))
                cols.append(quotients[dd][1].coords(vec))
            action[(v, d)] = cols
    return DenseModule(ring, dims, action)


def from_fpmodule(ring: DenseRing, M) -> DenseModule:
    """Dense model of an engine module, read off its presentation matrix only."""
    return presented(ring, M.degrees, M.relations)


# ---------------------------------------------------------------------------
# Hom


def hom_dims(M: DenseModule, N: DenseModule, e):
    """``dim Hom_R(M, N)_e``: k-linear maps ``M_d -> N_{d+e}`` commuting with every ``x_v``."""
    K = M.ring.K
    W = M.ring.weights
    blocks, off = {}, 0
    for d in M.degrees:
        blocks[d] = off
        off += M.dim(d) * N.dim(d + e)
    nvar = off
    if not nvar:
        return 0

    def var(d, row, col):  # entry (row, col) of the block for degree d
        return blocks[d] + col * N.dim(d + e) + row

    eqs = []
    for d in M.degrees:
        for v in range(M.ring.nvars):
            dd = d + W[v]
            nt = N.dim(dd + e)
            if not nt:
                continue
            for k in range(M.dim(d)):
                # x_v phi_d(b_k) - phi_{dd}(x_v b_k) = 0, one equation per output row
                for r in range(nt):
                    eq = [K.zero] * nvar
                    for j in range(N.dim(d + e)):
                        a = N.action[(v, d + e)][j][r]
                        if a:
                            eq[var(d, j, k)] += a
                    if M.dim(dd):
                        for j, a in enumerate(M.action[(v, d)][k]):
                            if a:
                                eq[var(dd, r, j)] -= a
                    if any(eq):
                        eqs.append(eq)
    return nvar - _rank(eqs, nvar, K)


# ---------------------------------------------------------------------------
# resolutions


class _Free:
    """Free module with generator degrees and its dense model."""

    def __init__(self, ring, degrees):
        self.degrees = list(degrees)
        self.model = presented(ring, self.degrees, [])
        self._offsets = {}

    def slot(self, d, i):
        """Offset of the ``R_{d-a_i}`` block inside ``F_d``."""
        key = (d, i)
        if key not in self._offsets:
            pos = 0
            ring = self.model.ring
            for ii, a in enumerate(self.degrees):
                if ii == i:
                    break
                if 0 <= d - a <= ring.top:
                    pos += ring.piece(d - a)[2].dim
            self._offsets[key] = pos
        return self._offsets[key]

    def terms(self, d, vec):
        """``[(i, monomial, coefficient)]`` of a vector in ``F_d``."""
        ring = self.model.ring
        out = []
        for i, a in enumerate(self.degrees):
            if not 0 <= d - a <= ring.top:
                continue
            base = self.slot(d, i)
            for j, m in enumerate(ring.basis(d - a)):
                c = vec[base + j]
                if c:
                    out.append((i, m, c))
        return out


def _minimal_generators(M: DenseModule):
    """``[(d, vector)]`` spanning ``M`` modulo ``m M``."""
    K = M.ring.K
    W = M.ring.weights
    out = []
    for d in M.degrees:
        n = M.dim(d)
        rows = []
        for v in range(M.ring.nvars):
            dd = d - W[v]
            for k in range(M.dim(dd)):
                rows.append(list(M.action[(v, dd)][k]))
        red = _Reducer(n, rows, K)
        for c in red.free:
            out.append((d, [K.one if j == c else K.zero for j in range(n)]))
    return out


def _cover_map(F: _Free, gens, M: DenseModule, d):
    """Columns of ``F_d -> M_d`` sending generator ``i`` to ``gens[i]``."""
    ring = M.ring
    cols = []
    for i, a in enumerate(F.degrees):
        if not 0 <= d - a <= ring.top:
            continue
        for m in ring.basis(d - a):
            cols.append(M.act_monomial(m, a, list(gens[i][1])))
    return cols


def _submodule(F: _Free, bases):
    """Dense model of the subspace family ``bases[d]`` of ``F`` (assumed a submodule)."""
    ring = F.model.ring
    K = ring.K
    dims = {d: len(b) for d, b in bases.items() if b}
    action = {}
    for d, b in bases.items():
        for v in range(ring.nvars):
            dd = d + ring.weights[v]
            target = bases.get(dd, [])
            cols = []
            for vec in b:
                img = F.model.act(v, d, vec)
                if not target:
                    cols.append([])
                    continue
                n = len(target)
                sol = DomainMatrix([[target[j][r] for j in range(n)] for r in range(len(img))], (len(img), n), K)
                rhs = DomainMatrix([[x] for x in img], (len(img), 1), K)
                aug = sol.hstack(rhs)
                r, piv = aug.rref()
                if n in piv:  # pragma: no cover - kernels are submodules
                    raise ArithmeticError("subspace is not closed under the action")
                rows = r.to_list()
                coords = [K.zero] * n
                for row, p in zip(rows, piv):
                    coords[p] = row[n]
                cols.append(coords)
            action[(v, d)] = cols
    return DenseModule(ring, dims, action)


class DenseResolution:
    """Minimal free resolution by dense kernels; ``differentials[i]`` maps
    generator ``k`` of ``F_{i+1}`` to ``[(j, monomial, c)]`` in ``F_i``."""

    def __init__(self, M: DenseModule, length):
        self.frees = []
        self.differentials = []
        current = M
        to_ambient = None  # current is a submodule of the previous free module
        for i in range(length + 1):
            gens = _minimal_generators(current)
            F = _Free(M.ring, [d for d, _ in gens])
            self.frees.append(F)
            if to_ambient is not None:
                prev, bases = to_ambient
                col = []
                for d, vec in gens:
                    amb = [sum((c * b[r] for c, b in zip(vec, bases[d])), M.ring.K.zero) for r in range(prev.model.dim(d))]
                    col.append(prev.terms(d, amb))
                self.differentials.append(col)
            if not gens or i == length:
                break
            bases = {}
            for d in F.model.degrees:
                cols = _cover_map(F, gens, current, d)
                bases[d] = _nullspace(cols, current.dim(d), M.ring.K)
            current = _submodule(F, bases)
            to_ambient = (F, bases)

    def rank(self, i):
        return len(self.frees[i].degrees) if i < len(self.frees) else 0


def _hom_space(F: _Free, N: DenseModule, e):
    out, off = [], 0
    for a in F.degrees:
        out.append(off)
        off += N.dim(e + a)
    return out, off


def _dual_matrix(res, i, N, e):
    """``Hom(F_i, N)_e -> Hom(F_{i+1}, N)_e`` as a row list."""
    K = N.ring.K
    src, ns = _hom_space(res.frees[i], N, e)
    if i + 1 >= len(res.frees):
        return [], ns, 0
    tgt_free = res.frees[i + 1]
    tgt, nt = _hom_space(tgt_free, N, e)
    mat = [[K.zero] * ns for _ in range(nt)]  # one row per target coordinate
    for k, terms in enumerate(res.differentials[i]):
        for j, m, c in terms:
            aj = res.frees[i].degrees[j]
            for s in range(N.dim(e + aj)):
                unit = [K.one if t == s else K.zero for t in range(N.dim(e + aj))]
                img = N.act_monomial(m, e + aj, unit)
                for r, x in enumerate(img):
                    if x:
                        mat[tgt[k] + r][src[j] + s] += c * x
    return mat, ns, nt


def ext_dims(M: DenseModule, N: DenseModule, i, e, res=None):
    """``dim Ext^i_R(M, N)_e`` from a dense resolution of ``M``."""
    res = res or DenseResolution(M, i + 1)
    K = M.ring.K
    if i >= len(res.frees):
        return 0
    out_rows, ns, _ = _dual_matrix(res, i, N, e)
    kernel = ns - _rank(out_rows, ns, K)
    if i == 0:
        return kernel
    in_rows, n_prev, _ = _dual_matrix(res, i - 1, N, e)
    return kernel - _rank(in_rows, n_prev, K)


def _tensor_matrix(res, i, N, d):
    """``F_{i+1} (x) N -> F_i (x) N`` in degree ``d`` as a row list."""
    K = N.ring.K
    src, ns = _tensor_space(res.frees[i + 1], N, d)
    tgt, nt = _tensor_space(res.frees[i], N, d)
    mat = [[K.zero] * ns for _ in range(nt)]
    for k, terms in enumerate(res.differentials[i]):
        bk = res.frees[i + 1].degrees[k]
        for s in range(N.dim(d - bk)):
            for j, m, c in terms:
                unit = [K.one if t == s else K.zero for t in range(N.dim(d - bk))]
                img = N.act_monomial(m, d - bk, unit)
                for r, x in enumerate(img):
                    if x:
                        mat[tgt[j] + r][src[k] + s] += c * x
    return mat, ns, nt


def _tensor_space(F: _Free, N: DenseModule, d):
    out, off = [], 0
    for a in F.degrees:
        out.append(off)
        off += N.dim(d - a)
    return out, off


def tor_dims(M: DenseModule, N: DenseModule, i, d, res=None):
    """``dim Tor_i^R(M, N)_d``."""
    res = res or DenseResolution(M, i + 1)
    K = M.ring.K
    if i >= len(res.frees):
        return 0
    _, n_i = _tensor_space(res.frees[i], N, d)
    if i == 0:
        out_rank = 0
    else:
        rows, ns, _ = _tensor_matrix(res, i - 1, N, d)
        out_rank = _rank(rows, ns, K)
    if i + 1 < len(res.frees):
        rows, ns, _ = _tensor_matrix(res, i, N, d)
        in_rank = _rank(rows, ns, K)
    else:
        in_rank = 0
    return n_i - out_rank - in_rank


# ---------------------------------------------------------------------------
# tables


def ext_range(res, i, N):
    F = res.frees[i] if i < len(res.frees) else None
    if F is None or not F.degrees or not N.dims:
        return range(0)
    return range(min(N.degrees) - max(F.degrees), max(N.degrees) - min(F.degrees) + 1)


def tor_range(res, i, N):
    F = res.frees[i] if i < len(res.frees) else None
    if F is None or not F.degrees or not N.dims:
        return range(0)
    return range(min(F.degrees) + min(N.degrees), max(F.degrees) + max(N.degrees) + 1)


def ext_table(M: DenseModule, N: DenseModule, i):
    """``{e: dim Ext^i(M, N)_e}`` over every degree where it can be nonzero."""
    res = DenseResolution(M, i + 1)
    out = {}
    for e in ext_range(res, i, N):
        n = ext_dims(M, N, i, e, res)
        if n:
            out[e] = n
    return out


def tor_table(M: DenseModule, N: DenseModule, i):
    res = DenseResolution(M, i + 1)
    out = {}
    for d in tor_range(res, i, N):
        n = tor_dims(M, N, i, d, res)
        if n:
            out[d] = n
    return out


def hom_table(M: DenseModule, N: DenseModule):
    if not M.dims or not N.dims:
        return {}
    out = {}
    for e in range(min(N.degrees) - max(M.degrees), max(N.degrees) - min(M.degrees) + 1):
        n = hom_dims(M, N, e)
        if n:
            out[e] = n
    return out


def grade(M: DenseModule, N: DenseModule, limit=8):
    """Least ``i`` with ``Ext^i(M, N) != 0``, or ``None`` within ``limit``."""
    for i in range(limit + 1):
        # resolve only as far as needed; ranks can grow exponentially
        res = DenseResolution(M, i + 1)
        if any(ext_dims(M, N, i, e, res) for e in ext_range(res, i, N)):
            return i
    return None


__all__ = [
    "DenseModule",
    "DenseResolution",
    "DenseRing",
    "ext_dims",
    "ext_table",
    "from_fpmodule",
    "grade",
    "hom_dims",
    "hom_table",
    "presented",
    "tor_dims",
    "tor_table",
]
