"""Quasi-Gorenstein modules, links, horizontal linkage, stability and local duality.

Graded modules are self-dual only up to a shift, so the isomorphism
``alpha: Q -> Ext^q(Q, C)(twist)`` carries its twist and links are taken
with the same twist.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .errors import GradeMismatch, NoAlpha, NoCanonical, NotEpi
from .fpmod import (
    FPModule,
    IsoCertificate,
    ModuleMap,
    certify_isomorphism,
    direct_sum,
    hom_degree_basis,
    iso_search,
    k_dual,
    module_from_action,
    tensor,
)
from .field import QQ
from .ring import QuotientRing
from .gcdim import (
    DEFAULT_BOUND,
    GCZeroVerdict,
    GradeDual,
    grade_dual,
    is_gc_zero,
    is_semidualizing,
    serre_check,
    torsionless_check,
    transpose,
)
from .hilbert import HilbertSeries
from .homology import depth, ext, grade, residue_field, ring_module
from .summands import decompose


def _twist(M: FPModule, N: FPModule):
    """Shift ``t`` lining up the lowest generator degrees of ``M`` and ``N(t)``."""
    a, b = M.min_generator_degrees(), N.min_generator_degrees()
    if not a or not b:
        return 0
    return b[0] - a[0]


def iso_up_to_shift(M: FPModule, N: FPModule, budget=64, seed=0) -> IsoCertificate:
    """iso_search against ``N(t)`` for the shift ``t`` matching generator degrees."""
    return iso_search(M, N, budget=budget, seed=seed, twist=_twist(M, N))


# ---------------------------------------------------------------------------
# quasi-Gorenstein modules


@dataclass
class QuasiGorensteinReport:
    candidate: FPModule
    C: FPModule
    q: Optional[int]
    membership: Optional[GCZeroVerdict]
    self_duality: IsoCertificate
    dual: Optional[GradeDual] = None
    twist: int = 0
    reason: str = None

    @property
    def verified(self):
        return bool(self.membership) and self.self_duality.verified

    @property
    def alpha(self) -> Optional[ModuleMap]:
        return self.self_duality.map if self.self_duality.verified else None

    def to_json(self):
        out = {
            "verified": self.verified,
            "grade": self.q,
            "membership": self.membership.to_json() if self.membership else None,
            "self_duality": self.self_duality.to_json(),
            "twist": self.twist,
        }
        if self.reason:
            out["reason"] = self.reason
        return out


def is_quasi_gorenstein(Q: FPModule, C: FPModule, bound=DEFAULT_BOUND, budget=64, seed=0) -> QuasiGorensteinReport:
    if Q.is_zero():
        return QuasiGorensteinReport(Q, C, None, None, IsoCertificate("refuted", obstruction="zero module"), reason="zero module")
    q = grade(Q, C)
    dual = grade_dual(Q, C, q, seed)
    membership = is_gc_zero(Q, C, q, bound, seed, dual)
    E = dual.dual(Q)
    t = _twist(Q, E)
    cert = iso_search(Q, E, budget=budget, seed=seed, twist=t)
    reason = None
    if not membership:
        reason = f"not in G_C^{q}: {membership.reason}"
    elif not cert.verified:
        reason = f"self-duality {cert.status}: {cert.obstruction or 'budget exhausted'}"
    return QuasiGorensteinReport(Q, C, q, membership, cert, dual, t, reason)


# ---------------------------------------------------------------------------
# links


@dataclass
class LinkResult:
    Q: FPModule
    phi: ModuleMap
    g: int
    kernel: FPModule
    dual_inclusion: ModuleMap  # Ext^g(M, C) -> Q
    projection: ModuleMap  # Q -> L_Q(M)
    link: FPModule
    exact: bool
    grade_preserved: Optional[bool]

    def to_json(self):
        return {
            "g": self.g,
            "link": self.link.minimal.module.to_json(),
            "link_hilbert_series": self.link.hilbert_series.to_json(),
            "kernel_hilbert_series": self.kernel.hilbert_series.to_json(),
            "dual_sequence_exact": self.exact,
            "grade_preserved": self.grade_preserved,
        }


def _require_alpha(report: QuasiGorensteinReport):
    if not report.verified:
        raise NoAlpha(report.reason or "linking module is not C-quasi-Gorenstein")


def link(report: QuasiGorensteinReport, phi: ModuleMap) -> LinkResult:
    """``L_Q(M) = coker(Ext^g(M, C) -> Ext^g(Q, C) -> Q)`` for a surjection ``phi: Q -> M``."""
    _require_alpha(report)
    Q, dual, g = report.candidate, report.dual, report.q
    if phi.source is not Q and phi.source != Q:
        raise ValueError("phi must start at the linking module")
    M = phi.target
    if M.is_zero():
        raise NotEpi("image of phi is zero")
    if not phi.is_surjective():
        raise NotEpi("phi is not surjective")
    try:
        gM = grade(M, report.C)
    except Exception as exc:  # pragma: no cover - grade of a nonzero module is finite here
        raise NotEpi(str(exc)) from exc
    if gM != g:
        raise NotEpi(f"image has grade {gM}, linking module has grade {g}")
    phi = ModuleMap(Q, M, phi.images)
    t = report.twist
    inv = report.self_duality.inverse  # Ext^g(Q,C)(t) -> Q
    phistar = dual.dual_map(phi)  # Ext^g(M,C) -> Ext^g(Q,C)
    EM = phistar.source.shift(t)
    j = inv.compose(ModuleMap(EM, inv.source, phistar.images))
    L, proj = j.cokernel()
    K, _ = phi.kernel()
    jk, _ = j.kernel()
    exact = jk.is_zero() and Q.hilbert_series == EM.hilbert_series + L.hilbert_series
    preserved = None
    if not L.is_zero():
        preserved = grade(L, report.C) == g
    return LinkResult(Q, phi, g, K, j, proj, L, exact, preserved)


def link_twice(report: QuasiGorensteinReport, phi: ModuleMap):
    first = link(report, phi)
    if first.link.is_zero():
        return first, None
    return first, link(report, first.projection)


def kernel_identity(result: LinkResult, report: QuasiGorensteinReport, budget=64, seed=0) -> IsoCertificate:
    """``L_Q(M) ~ Ext^g(ker phi, C)``, expected when ``M`` is in ``G_C^g``."""
    E = report.dual.dual(result.kernel)
    return iso_up_to_shift(result.link.minimal.module, E, budget, seed)


# ---------------------------------------------------------------------------
# stability


@dataclass
class StabilityVerdict:
    status: str  # "stable" | "unstable" | "inconclusive"
    witness: Optional[ModuleMap] = None
    summands: list = field(default_factory=list)
    budget: int = 0

    def to_json(self):
        out = {"status": self.status, "budget": self.budget}
        out["summands"] = [
            {"degrees": list(s.module.degrees), "hilbert_series": s.module.hilbert_series.to_json(), "in_G": m, "indecomposable": s.certified_indecomposable}
            for s, m in self.summands
        ]
        if self.witness is not None:
            out["witness_idempotent"] = self.witness.to_json()
        return out


def _member_at(X, C, g, bound, seed):
    try:
        return bool(is_gc_zero(X, C, g, bound, seed))
    except GradeMismatch:
        return False


def stability_check(M: FPModule, C: FPModule, g: int, budget=64, bound=DEFAULT_BOUND, seed=0) -> StabilityVerdict:
    """``M`` has no direct summand in ``G_C^g``.

    Summands come from Fitting idempotents of degree-0 endomorphisms; each
    is tested with :func:`is_gc_zero`.  The verdict ``stable`` requires every
    summand to be certified indecomposable (local endomorphism ring).
    """
    if M.is_zero():
        return StabilityVerdict("stable", budget=budget)
    parts, exhaustive = decompose(M, budget, seed)
    tested = []
    for s in parts:
        m = _member_at(s.module, C, g, bound, seed)
        tested.append((s, m))
        if m:
            return StabilityVerdict("unstable", s.idempotent, tested, budget)
    ok = exhaustive and all(s.certified_indecomposable for s in parts)
    return StabilityVerdict("stable" if ok else "inconclusive", None, tested, budget)


# ---------------------------------------------------------------------------
# horizontal linkage


@dataclass
class HorizontalReport:
    by_definition: str  # "linked" | "not-linked" | "inconclusive"
    by_criterion: str  # "linked" | "not-linked" | "inconclusive"
    stability: StabilityVerdict
    torsionless_1: bool
    iso: Optional[IsoCertificate]
    first: LinkResult
    second: Optional[LinkResult]
    sequence_exact: Optional[bool]
    dual_reading: Optional[list] = None

    @property
    def agree(self):
        if "inconclusive" in (self.by_definition, self.by_criterion):
            return None
        return self.by_definition == self.by_criterion

    def to_json(self):
        return {
            "by_definition": self.by_definition,
            "by_criterion": self.by_criterion,
            "agree": self.agree,
            "stability": self.stability.to_json(),
            "torsionless_index_1": self.torsionless_1,
            "torsionless_printed_index": self.dual_reading,
            "second_link_iso": self.iso.to_json() if self.iso else None,
            "first_link": self.first.to_json(),
            "second_link": self.second.to_json() if self.second else None,
            "evaluation_sequence_exact": self.sequence_exact,
        }


def horizontal_link_check(report: QuasiGorensteinReport, phi: ModuleMap, bound=DEFAULT_BOUND, budget=64, seed=0) -> HorizontalReport:
    M, C, g = phi.target, report.C, report.q
    first, second = link_twice(report, phi)
    L2 = second.link if second else FPModule.zero(M.ring)
    iso = iso_up_to_shift(M, L2.minimal.module, budget, seed) if not L2.is_zero() else IsoCertificate("refuted", obstruction="second link is zero")
    if iso.verified:
        by_def = "linked"
    elif iso.refuted:
        by_def = "not-linked"
    else:
        by_def = "inconclusive"
    stab = stability_check(M, C, g, budget, bound, seed)
    datum = transpose(M, C, g, seed)
    tl = torsionless_check(M, C, g, g + 1, seed, datum)
    t1 = tl[0][1]
    if stab.status == "inconclusive":
        by_crit = "not-linked" if not t1 else "inconclusive"
    else:
        by_crit = "linked" if (stab.status == "stable" and t1) else "not-linked"
    # 0 -> Ext^{g+1}(D, C) -> M -> L^2(M) -> 0 by Hilbert series
    seq = None
    D = datum.transpose
    e1 = ext(g + 1, D, C).hilbert_series if not D.is_zero() else None
    if stab.status == "stable":
        e1hs = e1 if e1 is not None else HilbertSeries.zero()
        seq = M.hilbert_series == e1hs + L2.hilbert_series
    return HorizontalReport(by_def, by_crit, stab, t1, iso, first, second, seq, [z for _, z in tl])


# ---------------------------------------------------------------------------
# direct links


def find_surjection(Q: FPModule, M: FPModule, budget=64, seed=0) -> Optional[ModuleMap]:
    """A degree-0 surjection ``Q -> M`` from the Hom basis and seeded combinations."""
    basis = hom_degree_basis(Q, M, 0)
    if not basis:
        return None
    rng = random.Random(seed)
    field_ = Q.ring.field
    for n in range(budget):
        if n < len(basis):
            f = basis[n]
        else:
            f = ModuleMap.zero(Q, M)
            for b in basis:
                c = field_.random_element(rng)
                if c:
                    f = f + b.scale(c)
        f = ModuleMap(Q, M, f.images)
        if f.is_surjective():
            return f
    return None


@dataclass
class LinkedPairVerdict:
    linked: bool
    reason: str = None
    quasi_gorenstein: Optional[QuasiGorensteinReport] = None
    phi: Optional[ModuleMap] = None
    psi: Optional[ModuleMap] = None
    iso_M: Optional[IsoCertificate] = None
    iso_N: Optional[IsoCertificate] = None

    def to_json(self):
        out = {"linked": self.linked}
        if self.reason:
            out["reason"] = self.reason
        if self.quasi_gorenstein:
            out["quasi_gorenstein"] = self.quasi_gorenstein.to_json()
        for key in ("phi", "psi"):
            f = getattr(self, key)
            if f is not None:
                out[key] = f.to_json()
        if self.iso_M:
            out["M_iso_link_of_N"] = self.iso_M.to_json()
        if self.iso_N:
            out["N_iso_link_of_M"] = self.iso_N.to_json()
        return out


def linked_pair_check(M, N, Q, C, phi=None, psi=None, bound=DEFAULT_BOUND, budget=64, seed=0, report=None) -> LinkedPairVerdict:
    """Are ``M = im phi`` and ``N = im psi`` directly linked by ``Q``?"""
    report = report or is_quasi_gorenstein(Q, C, bound, budget, seed)
    if not report.verified:
        return LinkedPairVerdict(False, f"Q is not C-quasi-Gorenstein ({report.reason})", report)
    if M.is_zero() or N.is_zero():
        return LinkedPairVerdict(False, "zero image has the wrong grade", report)
    phi = phi or find_surjection(Q, M, budget, seed)
    psi = psi or find_surjection(Q, N, budget, seed)
    if phi is None or psi is None:
        return LinkedPairVerdict(False, "no surjection from Q found within budget", report, phi, psi)
    try:
        LM = link(report, phi)
        LN = link(report, psi)
    except NotEpi as exc:
        return LinkedPairVerdict(False, str(exc), report, phi, psi)
    iso_N = iso_up_to_shift(N, LM.link.minimal.module, budget, seed) if not LM.link.is_zero() else IsoCertificate("refuted", obstruction="link is zero")
    iso_M = iso_up_to_shift(M, LN.link.minimal.module, budget, seed) if not LN.link.is_zero() else IsoCertificate("refuted", obstruction="link is zero")
    ok = iso_M.verified and iso_N.verified
    reason = None if ok else "a link is not isomorphic to the partner module"
    return LinkedPairVerdict(ok, reason, report, phi, psi, iso_M, iso_N)


# ---------------------------------------------------------------------------
# local duality


def canonical_module(ring, omega=None) -> FPModule:
    """``omega`` if given, the k-dual of ``R`` when Artinian, ``R(-sum w)`` when polynomial."""
    if omega is not None:
        return omega
    if ring.is_artinian:
        return k_dual(ring_module(ring))
    if ring.is_regular_ring():
        return FPModule.free(ring, (sum(ring.weights),), name="omega")
    raise NoCanonical("no canonical module supplied for a non-Artinian quotient ring")


def local_duality_report(M: FPModule, indices=None, omega=None):
    """``[(i, H^i_m(M) == 0)]`` through ``Ext^{d-i}(M, omega)``."""
    ring = M.ring
    w = canonical_module(ring, omega)
    d = max(ring.krull_dim, 0)
    if indices is None:
        indices = range(0, d + 1)
    out = []
    for i in indices:
        if i < 0 or i > d:
            out.append((i, True))
        else:
            out.append((i, ext(d - i, M, w).is_zero()))
    return out


def linkage_duality_audit(report: QuasiGorensteinReport, phi: ModuleMap, n: int, omega=None, bound=DEFAULT_BOUND, seed=0):
    """Both sides of: ``L_Q(M)`` satisfies the Serre condition at ``m`` iff
    ``H^i_m(M ⊗ omega) = 0`` for ``d - n + g < i < d``."""
    M = phi.target
    ring = M.ring
    w = canonical_module(ring, omega)
    g = report.q
    d = max(ring.krull_dim, 0)
    L = link(report, phi).link.minimal.module
    dR = depth(ring_module(ring))
    left = depth(L) + g >= min(n, dR) if not L.is_zero() else True
    T = tensor(M, w).minimal.module
    window = [i for i in range(d - n + g + 1, d)]
    right = all(z for _, z in local_duality_report(T, window, w)) if not T.is_zero() else True
    return {"n": n, "g": g, "window": window, "link_serre_at_m": left, "local_cohomology_vanishes": right, "agree": left == right}


def summary_corollary_audit(report: QuasiGorensteinReport, phi: ModuleMap, omega=None, bound=DEFAULT_BOUND, seed=0):
    """Clauses for ``M = im phi`` linked by an ``omega``-quasi-Gorenstein ``Q``:
    (i) ``M`` in ``G_omega^g``; (ii) ``L_Q(M)`` in ``G_omega^g``;
    (iii) ``L_Q(M)`` satisfies the Serre condition of order ``d`` at ``m``;
    (iv) ``H^i_m(M ⊗ omega) = 0`` for ``g < i < d``."""
    M = phi.target
    ring = M.ring
    w = report.C
    g = report.q
    d = max(ring.krull_dim, 0)
    L = link(report, phi).link.minimal.module

    def member(X):
        if X.is_zero():
            return True
        try:
            return bool(is_gc_zero(X, w, g, bound, seed))
        except GradeMismatch:
            return False

    c1 = member(M)
    c2 = member(L)
    dR = depth(ring_module(ring))
    c3 = L.is_zero() or depth(L) + g >= min(d, dR)
    T = tensor(M, w).minimal.module
    window = list(range(g + 1, d))
    c4 = T.is_zero() or all(z for _, z in local_duality_report(T, window, canonical_module(ring, omega)))
    clauses = {"i": c1, "ii": c2, "iii": c3, "iv": c4}
    return {"clauses": clauses, "window": window, "all_hold": all(clauses.values()), "agree": len(set(clauses.values())) == 1}


# ---------------------------------------------------------------------------
# Serre condition and linkage


def serre_linkage_audit(report: QuasiGorensteinReport, phi: ModuleMap, n: int, bound=DEFAULT_BOUND, seed=0):
    """Compare the Serre condition of ``M`` with horizontal linkage plus
    ``Ext^{g+i}(L_Q(M), C) = 0`` for ``0 < i < n - g``."""
    M, C, g = phi.target, report.C, report.q
    serre = serre_check(M, C, g, n, bound, seed)
    hl = horizontal_link_check(report, phi, bound, seed=seed)
    L = hl.first.link.minimal.module
    exts = [(i, L.is_zero() or ext(g + i, L, C).is_zero()) for i in range(1, n - g)]
    right = hl.by_definition == "linked" and all(z for _, z in exts)
    return {"serre_at_m": serre.depth_check_at_m, "serre_torsionless": serre.clause_i, "linked_and_vanishing": right, "ext_checks": exts}


def direct_sum_with_projection(A: FPModule, B: FPModule, onto=0):
    """``(A ⊕ B, projection onto the chosen factor)``."""
    ds = direct_sum(A, B)
    return ds.module, ds.projections[onto]


# ---------------------------------------------------------------------------
# trivial extensions of k[X,Y]/(X,Y)^2


@dataclass
class TowerLevel:
    ring: object
    candidates: dict  # name -> FPModule
    modules: dict  # auxiliary modules over this ring (k, and R regarded over S)

    def to_json(self):
        return {
            "ring": self.ring.to_json(),
            "candidates": {k: v.to_json() for k, v in self.candidates.items()},
            "modules": {k: v.to_json() for k, v in self.modules.items()},
        }


def _level_one(field):
    R = QuotientRing(field, ["X", "Y"], ["X^2", "X*Y", "Y^2"])
    RR = ring_module(R)
    cands = {"R": RR, "omega": k_dual(RR, name="omega")}
    return TowerLevel(R, cands, {"k": residue_field(R)})


def _hom_s_r(S):
    """``Hom_R(S, R)`` for ``S = R[U,V]/(U,V)^2`` as an ``S``-module.

    k-basis ``f_{t,r}`` with ``t`` in ``{1,U,V}``, ``r`` in ``{1,X,Y}``, of
    degree ``deg r - deg t``; ``X, Y`` act on ``r`` and ``U f_{U,r} = f_{1,r}``,
    ``V f_{V,r} = f_{1,r}``, all other ``U, V`` actions zero.
    """
    ts, rs = ("1", "U", "V"), ("1", "X", "Y")
    deg = {"1": 0, "U": 1, "V": 1, "X": 1, "Y": 1}
    basis = [(t, r) for t in ts for r in rs]
    by_degree = {}
    for t, r in basis:
        by_degree.setdefault(deg[r] - deg[t], []).append((t, r))
    index = {b: (d, i) for d, bs in by_degree.items() for i, b in enumerate(bs)}
    one = S.field.one

    def act(v, b):
        t, r = b
        if v in ("X", "Y"):
            return (t, v) if r == "1" else None
        return ("1", r) if t == v else None

    dims = {d: len(bs) for d, bs in by_degree.items()}
    action = {}
    for vi, v in enumerate(S.names):
        for d, bs in by_degree.items():
            cols = []
            for b in bs:
                img = act(v, b)
                cols.append({index[img][1]: one} if img else {})
            action[(vi, d)] = cols
    M, _ = module_from_action(S, dims, action, name="C1")
    return M


def _level_two(field, level1: TowerLevel):
    S = QuotientRing(field, ["X", "Y", "U", "V"], ["X^2", "X*Y", "Y^2", "U^2", "U*V", "V^2"])
    SS = ring_module(S)
    w = level1.candidates["omega"]
    rows = [[level1.ring.format(p) for p in row] for row in w.presentation_rows()]
    C2 = FPModule.from_rows(S, rows, w.degrees, name="C2")
    cands = {"S": SS, "C1": _hom_s_r(S), "C2": C2, "omega": k_dual(SS, name="omega")}
    extra = {"R": FPModule.cyclic(S, ["U", "V"], name="R"), "k": residue_field(S)}
    return TowerLevel(S, cands, extra)


def trivial_extension_tower(levels=2, field=None) -> list:
    """Level 1: ``R = k[X,Y]/(X,Y)^2`` with ``R, omega_R``.  Level 2:
    ``S = R[U,V]/(U,V)^2`` with ``S, Hom_R(S,R), S (x)_R omega_R, omega_S``."""
    if levels not in (1, 2):
        raise ValueError("levels must be 1 or 2")
    field = field or QQ
    out = [_level_one(field)]
    if levels == 2:
        out.append(_level_two(field, out[0]))
    return out


def tower_audit(level: TowerLevel, bound=DEFAULT_BOUND, budget=64, seed=0):
    """Semidualizing verdicts and pairwise isomorphism refutations."""
    names = list(level.candidates)
    sd = {n: is_semidualizing(level.candidates[n], bound) for n in names}
    pairs = {}
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            cert = iso_search(level.candidates[a], level.candidates[b], budget=budget, seed=seed)
            pairs[f"{a}~{b}"] = cert
    return {
        "semidualizing": {n: r.verified for n, r in sd.items()},
        "reports": sd,
        "pairwise_refuted": {k: c.refuted for k, c in pairs.items()},
        "certificates": pairs,
    }


def sum_link_audit(A: FPModule, B: FPModule, C: FPModule, bound=DEFAULT_BOUND, budget=64, seed=0) -> LinkedPairVerdict:
    """Are ``A`` and ``B`` directly linked by ``A (+) B`` through its two projections?"""
    ds = direct_sum(A, B)
    Q = ds.module
    report = is_quasi_gorenstein(Q, C, bound, budget, seed)
    return linked_pair_check(A, B, Q, C, ds.projections[0], ds.projections[1], bound, budget, seed, report)


__all__ = [
    "HorizontalReport",
    "LinkResult",
    "LinkedPairVerdict",
    "QuasiGorensteinReport",
    "StabilityVerdict",
    "canonical_module",
    "certify_isomorphism",
    "direct_sum_with_projection",
    "find_surjection",
    "horizontal_link_check",
    "is_quasi_gorenstein",
    "iso_up_to_shift",
    "kernel_identity",
    "link",
    "link_twice",
    "linkage_duality_audit",
    "linked_pair_check",
    "local_duality_report",
    "serre_linkage_audit",
    "stability_check",
    "sum_link_audit",
    "summary_corollary_audit",
    "TowerLevel",
    "tower_audit",
    "trivial_extension_tower",
]
