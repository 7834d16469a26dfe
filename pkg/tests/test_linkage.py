import pytest

from gradelink.errors import NoAlpha, NoCanonical, NotEpi
from gradelink.fpmod import FPModule, ModuleMap, direct_sum, iso_search
from gradelink.gcdim import is_gc_zero
from gradelink.homology import grade
from gradelink.linkage import (
    canonical_module,
    find_surjection,
    horizontal_link_check,
    is_quasi_gorenstein,
    kernel_identity,
    link,
    linkage_duality_audit,
    linked_pair_check,
    local_duality_report,
    stability_check,
    sum_link_audit,
    summary_corollary_audit,
    tower_audit,
    trivial_extension_tower,
)
from gradelink.ring import QuotientRing
from gradelink.field import QQ


def onto(Q, M):
    return ModuleMap(Q, M, [{0: Q.ring.one()}])


# quasi-Gorenstein modules


def test_quasi_gorenstein_examples(A, P):
    assert is_quasi_gorenstein(P.R, P.R).verified
    rep = is_quasi_gorenstein(A.k, A.omega)
    assert rep.verified and rep.q == 0
    rep = is_quasi_gorenstein(A.k, A.R)
    assert not rep.verified and "not in G" in rep.reason


def test_quasi_gorenstein_twist(P):
    rep = is_quasi_gorenstein(P.cyclic("x^2"), P.R)
    assert rep.verified and rep.q == 1 and rep.twist == -2


def test_sum_with_k_is_not_self_dual(A):
    # Hom(k + R, omega) = k + omega needs three generators
    rep = is_quasi_gorenstein(direct_sum(A.k, A.R).module, A.omega)
    assert not rep.verified and rep.self_duality.refuted


# links


def test_classical_link(P):
    Q, M = P.cyclic("x^2"), P.cyclic("x")
    rep = is_quasi_gorenstein(Q, P.R)
    res = link(rep, onto(Q, M))
    assert res.exact and res.grade_preserved
    assert iso_search(res.link.minimal.module, M).verified
    assert kernel_identity(res, rep).verified


def test_identity_link_is_zero(G):
    rep = is_quasi_gorenstein(G.R, G.R)
    res = link(rep, ModuleMap.identity(G.R))
    assert res.link.is_zero() and res.exact


def test_link_preserves_membership(G):
    rep = is_quasi_gorenstein(G.R, G.R)
    for M in (G.k, G.cyclic("x"), G.cyclic("x*y")):
        res = link(rep, onto(G.R, M))
        L = res.link.minimal.module
        assert res.exact
        assert is_gc_zero(L, G.R, 0)
        assert grade(L, G.R) == 0


def test_link_errors(P, A):
    rep = is_quasi_gorenstein(P.cyclic("x^2"), P.R)
    with pytest.raises(NotEpi):
        link(rep, onto(P.cyclic("x^2"), P.k))  # grade 2 image
    with pytest.raises(NoAlpha):
        link(is_quasi_gorenstein(A.k, A.R), ModuleMap.identity(A.k))


# stability


def test_stability_examples(A, G):
    assert stability_check(A.k, A.R, 0).status == "stable"
    v = stability_check(direct_sum(A.k, A.R).module, A.R, 0)
    assert v.status == "unstable" and v.witness is not None
    parts = [s for s, m in v.summands if m]
    assert iso_search(parts[0].module, A.R).verified
    v = stability_check(G.cyclic("x"), G.R, 0)
    assert v.status == "unstable"


# horizontal linkage


def test_horizontal_linkage_over_gorenstein(G):
    # every module is in G over a Gorenstein ring, so nothing is stable there
    rep = is_quasi_gorenstein(G.R, G.R)
    h = horizontal_link_check(rep, onto(G.R, G.k))
    assert h.by_definition == "linked"
    assert h.stability.status == "unstable" and h.by_criterion == "not-linked"


def test_horizontal_linkage_stable_module():
    # R = k[x,y,z]/(x,y,z)^2, C = R, M = k: stable and linked through R
    R = QuotientRing(QQ, ["x", "y", "z"], ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"])
    from gradelink.homology import residue_field, ring_module

    RR, k = ring_module(R), residue_field(R)
    rep = is_quasi_gorenstein(RR, RR)
    h = horizontal_link_check(rep, onto(RR, k))
    assert h.stability.status == "stable"
    assert h.agree is not False
    if h.by_definition == "linked":
        assert h.sequence_exact


def test_find_surjection(A):
    ds = direct_sum(A.k, A.R)
    f = find_surjection(ds.module, A.R)
    assert f is not None and f.is_surjective()
    assert find_surjection(A.k, A.R) is None


def test_linked_pair_zero_image(A):
    v = linked_pair_check(A.k, FPModule.zero(A.ring), A.k, A.omega)
    assert not v.linked


# local duality


def test_local_duality(P, A):
    assert local_duality_report(P.R) == [(0, True), (1, True), (2, False)]
    assert local_duality_report(A.k) == [(0, False)]
    with pytest.raises(NoCanonical):
        canonical_module(QuotientRing(QQ, ["x", "y", "z"], ["x*y - z^2"]))


def test_linkage_duality_audit(P):
    Q, M = P.cyclic("x^2"), P.cyclic("x")
    rep = is_quasi_gorenstein(Q, P.R)
    out = linkage_duality_audit(rep, onto(Q, M), 2)
    assert out["agree"]


def test_summary_audit_grade_one(P):
    Q, M = P.cyclic("x"), P.cyclic("x")
    rep = is_quasi_gorenstein(Q, P.R)
    out = summary_corollary_audit(rep, ModuleMap.identity(Q))
    assert out["clauses"]["i"] and out["clauses"]["iii"]
    Q = P.cyclic("x^2")
    rep = is_quasi_gorenstein(Q, P.R)
    out = summary_corollary_audit(rep, onto(Q, M))
    assert out["all_hold"] and out["window"] == []


def test_summary_audit_free(P):
    rep = is_quasi_gorenstein(P.R, P.R)
    out = summary_corollary_audit(rep, ModuleMap.identity(P.R))
    assert out["all_hold"]


# the trivial-extension tower


def test_tower_level_one():
    (lv,) = trivial_extension_tower(1)
    out = tower_audit(lv)
    assert out["semidualizing"] == {"R": True, "omega": True}
    assert out["pairwise_refuted"] == {"R~omega": True}


def test_tower_level_two():
    lv = trivial_extension_tower(2)[1]
    assert lv.ring.hilbert_series.total() == 9
    out = tower_audit(lv)
    assert all(out["semidualizing"].values()) and len(out["semidualizing"]) == 4
    assert all(out["pairwise_refuted"].values()) and len(out["pairwise_refuted"]) == 6


def test_tower_sum_links_fail_self_duality():
    l1, l2 = trivial_extension_tower(2)
    v = sum_link_audit(l1.modules["k"], l1.candidates["R"], l1.candidates["omega"])
    assert not v.linked and v.quasi_gorenstein.self_duality.refuted
    v = sum_link_audit(l2.candidates["S"], l2.modules["R"], l2.candidates["C1"])
    assert not v.linked and v.quasi_gorenstein.self_duality.refuted
