"""Direct-sum decompositions of graded modules through degree-0 endomorphisms.

A degree-0 endomorphism ``f`` is determined by its action on the pieces of
``M`` up to the top generator degree; on that finite-dimensional space the
characteristic polynomial splits ``f`` (Fitting) into generalized eigenspaces,
and the projection onto one of them is a polynomial in ``f``.  That
projection is an idempotent endomorphism of all of ``M``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from sympy import Poly, symbols
from sympy.polys.domains import GF, QQ as SQQ
from sympy.polys.matrices import DomainMatrix

from .fpmod import FPModule, ModuleMap, hom_degree_basis
from .linalg import rank as lin_rank, solve as lin_solve

_t = symbols("t")


def sympy_domain(field):
    return SQQ if field.kind == "QQ" else GF(field.p)


def to_domain(K, field, c):
    if field.kind == "QQ":
        q = Fraction(int(c.numerator), int(c.denominator))
        return K(q.numerator, q.denominator)
    return K(int(c))


def from_domain(K, field, c):
    v = K.to_sympy(c)
    if field.kind == "QQ":
        return field(Fraction(int(v.p), int(v.q)))
    return field(int(v) % field.p)


def _generator_window(M: FPModule):
    if not M.degrees:
        return []
    lo = min(M.degrees)
    hi = max(M.degrees)
    return [d for d in range(lo, hi + 1) if M.dim(d)]


def endo_coordinates(f: ModuleMap):
    """Coordinates of an endomorphism in the pieces up to the top generator degree."""
    M = f.source
    out, off = {}, 0
    for d in _generator_window(M):
        n = M.dim(d)
        for k, col in enumerate(f.on_piece(d)):
            for kk, c in col.items():
                out[off + k * n + kk] = c
        off += n * n
    return out


def charpoly(f: ModuleMap) -> Poly:
    """Characteristic polynomial of ``f`` on the pieces up to the top generator degree."""
    M = f.source
    field = M.ring.field
    K = sympy_domain(field)
    total = Poly(1, _t, domain=K)
    for d in _generator_window(M):
        n = M.dim(d)
        cols = f.on_piece(d)
        rows = [[K.zero] * n for _ in range(n)]
        for k, col in enumerate(cols):
            for kk, c in col.items():
                rows[kk][k] = to_domain(K, field, c)
        coeffs = DomainMatrix(rows, (n, n), K).charpoly()
        total = total * Poly(list(coeffs), _t, domain=K)
    return total


def evaluate(p: Poly, f: ModuleMap) -> ModuleMap:
    """``p(f)`` by Horner's rule."""
    M = f.source
    field = M.ring.field
    K = p.get_domain()
    ident = ModuleMap.identity(M)
    out = ModuleMap.zero(M, M)
    for c in p.all_coeffs():
        out = out.compose(f) + ident.scale(from_domain(K, field, c))
    return out


def fitting_idempotent(f: ModuleMap):
    """A nontrivial idempotent polynomial in ``f``, or ``None``."""
    cp = charpoly(f)
    if cp.degree() <= 0:
        return None
    _, factors = cp.factor_list()
    if len(factors) < 2:
        return None
    q, a = factors[0]
    A = q**a
    B = cp.quo(A)
    s, _, h = B.gcdex(A)
    p = (s * B).rem(cp)
    p = p.quo(Poly(h.LC(), _t, domain=p.get_domain())) if h.degree() == 0 else p
    e = evaluate(p, f)
    M = f.source
    if e.is_zero() or (ModuleMap.identity(M) - e).is_zero():
        return None
    return e


@dataclass
class Summand:
    """``module`` is a direct summand of the ambient module; ``idempotent``
    projects the ambient module onto it, ``inclusion`` and ``projection``
    factor that idempotent."""

    module: FPModule
    inclusion: ModuleMap
    projection: ModuleMap
    idempotent: ModuleMap
    certified_indecomposable: bool


def _split(M: FPModule, e: ModuleMap):
    """``(X, inclusion, projection)`` for the image of the idempotent ``e``."""
    X0, inc0 = e.image()
    mf = X0.minimal
    X = mf.module
    inc = inc0.compose(mf.to_original)
    images = []
    for v in e.images:
        pre = inc.lift_element(v)
        if pre is None:  # pragma: no cover - the image of e lifts by construction
            raise ArithmeticError("idempotent image does not lift")
        images.append(pre)
    return X, inc, ModuleMap(M, X, images)


def _is_local(M: FPModule, basis):
    """Certify ``End_0(M)`` local: its trace form has rank one.

    Over a field of characteristic 0 (or larger than the algebra's
    dimension) the radical of the trace form of the regular representation
    is the Jacobson radical, so rank one means ``End/J = k``.
    """
    n = len(basis)
    if n == 1:
        return True
    field = M.ring.field
    if field.kind == "GF" and field.p <= n:
        return False
    mod = M.ring.mod
    coords = [endo_coordinates(b) for b in basis]

    def express(f):
        return lin_solve(coords, endo_coordinates(f), mod)

    # structure constants: b_i b_j = sum_k c_ijk b_k
    table = {}
    for i in range(n):
        for j in range(n):
            sol = express(basis[i].compose(basis[j]))
            if sol is None:  # pragma: no cover - End_0 is closed under composition
                return False
            table[(i, j)] = sol
    # trace of left multiplication by b_i b_j, via the table twice
    gram = []
    for i in range(n):
        row = {}
        for j in range(n):
            tr = 0
            prod = table[(i, j)]
            for k, c in prod.items():
                for l in range(n):
                    tr += c * table[(k, l)].get(l, 0)
            if mod:
                tr %= mod
            if tr:
                row[j] = tr
        gram.append(row)
    return lin_rank(gram, mod) == 1


def decompose(M: FPModule, budget=64, seed=0):
    """Split ``M`` into summands.

    Returns ``(summands, exhaustive)``.  ``exhaustive`` is ``True`` when every
    summand returned has a local degree-0 endomorphism ring, so the
    decomposition is into indecomposables.
    """
    rng = random.Random(seed)
    field = M.ring.field
    ident = ModuleMap.identity(M)
    todo = [Summand(M, ident, ident, ident, False)]
    done = []
    exhaustive = True
    while todo:
        S = todo.pop()
        X = S.module
        if X.is_zero():
            continue
        basis = hom_degree_basis(X, X, 0)
        basis = [ModuleMap(X, X, b.images) for b in basis]
        if _is_local(X, basis):
            S.certified_indecomposable = True
            done.append(S)
            continue
        e = None
        for n in range(budget):
            if n < len(basis):
                f = basis[n]
            else:
                f = ModuleMap.zero(X, X)
                for b in basis:
                    c = field.random_element(rng)
                    if c:
                        f = f + b.scale(c)
            e = fitting_idempotent(f)
            if e is not None:
                break
        if e is None:
            exhaustive = False
            done.append(S)
            continue
        for part in (e, ModuleMap.identity(X) - e):
            Y, inc, proj = _split(X, part)
            inc_M = S.inclusion.compose(inc)
            proj_M = proj.compose(S.projection)
            todo.append(Summand(Y, inc_M, proj_M, inc_M.compose(proj_M), False))
    done.sort(key=lambda s: (s.module.degrees, s.module.hilbert_series.format()))
    return done, exhaustive


__all__ = ["Summand", "charpoly", "decompose", "evaluate", "fitting_idempotent", "endo_coordinates"]
