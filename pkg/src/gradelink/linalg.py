"""Sparse exact linear algebra over QQ or GF(p).

Vectors are ``dict`` mapping integer coordinates to nonzero field elements.
:class:`Echelon` keeps a semi-echelon basis in which every stored row has a
distinct pivot equal to its *smallest* coordinate and pivot coefficient 1.
Reducing a vector against it clears every pivot coordinate, so the remainder
lives on non-pivot coordinates; this doubles as a quotient-space map.
"""

from __future__ import annotations

import heapq


def v_axpy(v, c, w, mod):
    """In place ``v += c * w``."""
    for k, x in w.items():
        y = v.get(k)
        t = c * x if y is None else y + c * x
        if mod:
            t %= mod
        if t:
            v[k] = t
        elif y is not None:
            del v[k]
    return v


def v_scale(v, c, mod):
    if not c:
        return {}
    if mod:
        return {k: x * c % mod for k, x in v.items()}
    return {k: x * c for k, x in v.items()}


def _inv(c, mod):
    return pow(int(c), -1, mod) if mod else 1 / c


class Echelon:
    """Incremental semi-echelon basis with optional combination tracking.

    With ``track=True`` every stored row remembers the combination of the
    inserted vectors (indexed by insertion label) that produced it, which is
    what kernels and linear solves need.
    """

    def __init__(self, mod=None, track=False):
        self.mod = mod
        self.track = track
        self.rows = {}

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self):
        return self.rows.keys()

    def reduce(self, v, comb=None):
        """Return ``(remainder, comb')`` where ``v = remainder + sum comb'[l] * input_l``
        (the second entry is only meaningful when tracking)."""
        mod = self.mod
        rows = self.rows
        v = dict(v)
        comb = dict(comb) if comb else {}
        heap = [k for k in v if k in rows]
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap)
            c = v.get(k)
            if c is None or k not in rows:
                continue
            row, rcomb = rows[k]
            for kk in row:
                if kk not in v and kk in rows and kk != k:
                    heapq.heappush(heap, kk)
            v_axpy(v, -c, row, mod)
            if self.track:
                v_axpy(comb, c, rcomb, mod)
        return v, comb

    def insert(self, v, comb=None):
        """Insert ``v``; returns the new pivot or ``None`` if ``v`` was dependent.

        ``comb`` is the combination ``v`` represents (tracking only).  When the
        remainder is zero the dependency ``comb - comb'`` is returned as the
        second element so callers can harvest kernel vectors.
        """
        rem, sub = self.reduce(v)
        if self.track:
            base = dict(comb or {})
            v_axpy(base, -1, sub, self.mod)
        else:
            base = None
        if not rem:
            return None, base
        p = min(rem)
        c = _inv(rem[p], self.mod)
        row = v_scale(rem, c, self.mod)
        self.rows[p] = (row, v_scale(base, c, self.mod) if self.track else None)
        return p, base

    def contains(self, v):
        return not self.reduce(v)[0]


def rank(vectors, mod=None):
    e = Echelon(mod)
    for v in vectors:
        e.insert(v)
    return len(e)


def kernel(images, mod=None):
    """Basis of ``{c : sum_j c_j images[j] = 0}`` as sparse vectors over column indices."""
    e = Echelon(mod, track=True)
    out = []
    for j, img in enumerate(images):
        piv, dep = e.insert(img, {j: 1})
        if piv is None:
            out.append(dep)
    return out


def solve(images, target, mod=None):
    """Some ``c`` with ``sum_j c_j images[j] = target``, or ``None``."""
    e = Echelon(mod, track=True)
    for j, img in enumerate(images):
        e.insert(img, {j: 1})
    rem, comb = e.reduce(target)
    if rem:
        return None
    return comb


def independent_subset(vectors, mod=None, start=None):
    """Indices of a maximal independent subfamily, scanning left to right.

    ``start`` may be an :class:`Echelon` that is extended in place, so the
    chosen vectors are independent modulo its span.
    """
    e = start if start is not None else Echelon(mod)
    chosen = []
    for i, v in enumerate(vectors):
        piv, _ = e.insert(v)
        if piv is not None:
            chosen.append(i)
    return chosen


def to_dense(vectors, ncols, zero=0):
    out = []
    for v in vectors:
        row = [zero] * ncols
        for k, x in v.items():
            row[k] = x
        out.append(row)
    return out
