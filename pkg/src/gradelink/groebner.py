"""Buchberger's algorithm for homogeneous ideals and submodules of free modules.

Both cases share one engine.  Ideal elements are polynomial dicts keyed by
exponent tuples; module elements are dicts keyed by ``(component, exponent)``
and use a position-over-term order in which *smaller* component indices
dominate.  Inputs are homogeneous so pairs are processed degree by degree,
which makes the optional degree cap sound: everything below the cap is final.
"""

from __future__ import annotations

import heapq
from itertools import combinations

from .poly import PolyRing, p_scale


class Truncated(RuntimeError):
    """A degree cap was hit before the computation finished.

    ``partial`` holds whatever is valid below ``degree``.
    """

    def __init__(self, message, degree=None, partial=None):
        super().__init__(message)
        self.degree = degree
        self.partial = partial


class _IdealTerms:
    def __init__(self, ring: PolyRing):
        self.key = ring.order.key
        self.deg = ring.deg

    @staticmethod
    def divides(a, b):
        return all(x <= y for x, y in zip(a, b))

    @staticmethod
    def quotient(b, a):
        return tuple(y - x for x, y in zip(a, b))

    @staticmethod
    def lcm(a, b):
        return tuple(max(x, y) for x, y in zip(a, b))

    @staticmethod
    def coprime(a, b):
        return all(not (x and y) for x, y in zip(a, b))

    @staticmethod
    def shift(f, e):
        return {tuple(x + y for x, y in zip(m, e)): c for m, c in f.items()}


class _ModuleTerms:
    def __init__(self, ring: PolyRing, comp_degrees):
        okey = ring.order.key
        self.key = lambda t: (-t[0], okey(t[1]))
        rdeg = ring.deg
        self.deg = lambda t: comp_degrees[t[0]] + rdeg(t[1])

    @staticmethod
    def divides(a, b):
        return a[0] == b[0] and all(x <= y for x, y in zip(a[1], b[1]))

    @staticmethod
    def quotient(b, a):
        return tuple(y - x for x, y in zip(a[1], b[1]))

    @staticmethod
    def lcm(a, b):
        if a[0] != b[0]:
            return None
        return (a[0], tuple(max(x, y) for x, y in zip(a[1], b[1])))

    @staticmethod
    def coprime(a, b):
        return False

    @staticmethod
    def shift(f, e):
        return {(c, tuple(x + y for x, y in zip(m, e))): v for (c, m), v in f.items()}


def _lead(f, key):
    return max(f, key=key)


def _reduce(f, basis, leads, ops, mod, tail=True):
    """Reduce ``f`` by a monic basis; full reduction when ``tail`` is set."""
    key = ops.key
    f = dict(f)
    rem = {}
    while f:
        t = _lead(f, key)
        c = f[t]
        for g, lt in zip(basis, leads):
            if ops.divides(lt, t):
                q = ops.quotient(t, lt)
                for m, v in ops.shift(g, q).items():
                    w = f.get(m)
                    x = (-c * v) if w is None else w - c * v
                    if mod:
                        x %= mod
                    if x:
                        f[m] = x
                    elif w is not None:
                        del f[m]
                break
        else:
            rem[t] = c
            del f[t]
            if not tail:
                rem.update(f)
                return rem
    return rem


def _monic(f, lt, mod):
    c = f[lt]
    inv = pow(int(c), -1, mod) if mod else 1 / c
    return p_scale(f, inv, mod)


def _spoly(f, g, lf, lg, ops, mod):
    l = ops.lcm(lf, lg)
    a = ops.shift(f, ops.quotient(l, lf))
    b = ops.shift(g, ops.quotient(l, lg))
    for m, v in b.items():
        w = a.get(m)
        x = -v if w is None else w - v
        if mod:
            x %= mod
        if x:
            a[m] = x
        elif w is not None:
            del a[m]
    return a


def _engine(gens, ops, mod, degree_cap=None, tags=None):
    """Homogeneous Buchberger.  ``tags[i]`` marks generators whose mutual pairs
    are known to reduce to zero (e.g. copies of an ideal basis in one slot)."""
    key, deg = ops.key, ops.deg
    todo = []  # heap of (degree, seq, kind, payload)
    seq = 0
    for i, f in enumerate(gens):
        if f:
            lt = _lead(f, key)
            heapq.heappush(todo, (deg(lt), seq, "gen", (f, tags[i] if tags else None)))
            seq += 1
    basis, leads, btags = [], [], []
    pending = set()

    while todo:
        d = todo[0][0]
        if degree_cap is not None and d > degree_cap:
            raise Truncated(
                f"Groebner computation needs degree {d} > cap {degree_cap}",
                degree=d,
                partial=list(basis),
            )
        _, _, kind, payload = heapq.heappop(todo)
        if kind == "pair":
            i, j = payload
            pending.discard((i, j))
            l = ops.lcm(leads[i], leads[j])
            # Buchberger's chain criterion
            skip = False
            for k in range(len(basis)):
                if k in (i, j) or not ops.divides(leads[k], l):
                    continue
                if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                    skip = True
                    break
            if skip:
                continue
            f = _spoly(basis[i], basis[j], leads[i], leads[j], ops, mod)
            tag = None
        else:
            f, tag = payload
        h = _reduce(f, basis, leads, ops, mod)
        if not h:
            continue
        lt = _lead(h, key)
        h = _monic(h, lt, mod)
        n = len(basis)
        basis.append(h)
        leads.append(lt)
        btags.append(tag)
        for i in range(n):
            l = ops.lcm(leads[i], lt)
            if l is None:
                continue
            if tag is not None and btags[i] == tag:
                continue
            if ops.coprime(leads[i], lt):
                continue
            pending.add((i, n))
            heapq.heappush(todo, (deg(l), seq, "pair", (i, n)))
            seq += 1
    return basis, leads


def _interreduce(basis, leads, ops, mod):
    keep = [
        i
        for i, lt in enumerate(leads)
        if not any(j != i and ops.divides(leads[j], lt) and (leads[j] != lt or j < i) for j in range(len(leads)))
    ]
    B = [basis[i] for i in keep]
    L = [leads[i] for i in keep]
    out = []
    for idx, (g, lt) in enumerate(zip(B, L)):
        others = [b for k, b in enumerate(B) if k != idx]
        olds = [x for k, x in enumerate(L) if k != idx]
        tail = {m: c for m, c in g.items() if m != lt}
        r = _reduce(tail, others, olds, ops, mod)
        r[lt] = g[lt]
        out.append((lt, r))
    out.sort(key=lambda t: ops.key(t[0]))
    return [g for _, g in out], [lt for lt, _ in out]


def groebner_basis(ring: PolyRing, generators, degree_cap=None):
    """Reduced Groebner basis of the homogeneous ideal spanned by ``generators``.

    Returns monic polynomial dicts sorted by increasing leading monomial.
    Raises :class:`Truncated` if ``degree_cap`` is exceeded.
    """
    gens = [dict(g) for g in generators if g]
    for g in gens:
        if not ring.is_homogeneous(g):
            raise ValueError(f"generator {ring.format(g)} is not homogeneous")
    if not gens:
        return []
    ops = _IdealTerms(ring)
    basis, leads = _engine(gens, ops, ring.mod, degree_cap)
    basis, _ = _interreduce(basis, leads, ops, ring.mod)
    return basis


def reduce_by(ring: PolyRing, f, basis):
    """Full reduction of ``f`` by a monic Groebner basis."""
    ops = _IdealTerms(ring)
    leads = [_lead(g, ops.key) for g in basis]
    return _reduce(f, basis, leads, ops, ring.mod)


def module_groebner(ring: PolyRing, elements, comp_degrees, degree_cap=None, tags=None):
    """Groebner basis of a graded submodule given as ``(component, exponent)`` dicts."""
    ops = _ModuleTerms(ring, comp_degrees)
    basis, leads = _engine(elements, ops, ring.mod, degree_cap, tags)
    return _interreduce(basis, leads, ops, ring.mod)


def module_leads(ring, elements, comp_degrees):
    ops = _ModuleTerms(ring, comp_degrees)
    return [_lead(f, ops.key) for f in elements]


def syzygy_generators(ring: PolyRing, ideal_gb, columns, row_degrees, col_degrees, degree_cap=None):
    """Generators (not necessarily minimal) of the kernel of ``R^cols -> R^rows``
    over ``R = ring / ideal``, for homogeneous columns.

    ``columns[j]`` is a dict ``row -> polynomial dict``.  Each result is a dict
    ``column -> polynomial dict`` whose entries are *not* yet normal forms.
    Uses position-over-term elimination: the rows dominate the tracking slots.
    """
    r = len(row_degrees)
    comp_degrees = list(row_degrees) + list(col_degrees)
    elems, tags = [], []
    for j, col in enumerate(columns):
        e = {}
        for i, p in col.items():
            for m, c in p.items():
                e[(i, m)] = c
        e[(r + j, ring.zero_exp)] = ring.field.one
        elems.append(e)
        tags.append(None)
    for i in range(r):
        for g in ideal_gb:
            elems.append({(i, m): c for m, c in g.items()})
            tags.append(("ideal", i))
    basis, leads = module_groebner(ring, elems, comp_degrees, degree_cap, tags)
    out = []
    for g, lt in zip(basis, leads):
        if lt[0] < r:
            continue
        v = {}
        for (c, m), x in g.items():
            v.setdefault(c - r, {})[m] = x
        out.append(v)
    return out


def naive_buchberger(ring: PolyRing, generators):
    """Textbook Buchberger with no criteria, used only as an independent check."""
    ops = _IdealTerms(ring)
    mod = ring.mod
    G = [_monic(g, _lead(g, ops.key), mod) for g in generators if g]
    changed = True
    while changed:
        changed = False
        leads = [_lead(g, ops.key) for g in G]
        for i, j in combinations(range(len(G)), 2):
            s = _spoly(G[i], G[j], leads[i], leads[j], ops, mod)
            h = _reduce(s, G, leads, ops, mod)
            if h:
                G.append(_monic(h, _lead(h, ops.key), mod))
                changed = True
                break
    leads = [_lead(g, ops.key) for g in G]
    G, _ = _interreduce(G, leads, ops, mod)
    return G
