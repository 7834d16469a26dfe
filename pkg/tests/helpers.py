"""Shared fixture generators and engine-versus-oracle comparison."""

from gradelink import oracle as O
from gradelink.field import QQ, FieldSpec
from gradelink.fpmod import FPModule, direct_sum, hom_degree_basis, k_dual
from gradelink.homology import ext, residue_field, ring_module, tor
from gradelink.ring import QuotientRing

# two-variable monomial rings that are not complete intersections (hence Golod)
GOLOD_IDEALS = [
    ["x^2", "x*y", "y^2"],
    ["x^3", "x*y", "y^2"],
    ["x^2", "x*y", "y^3"],
    ["x^3", "x*y", "y^3"],
    ["x^2", "x*y^2", "y^3"],
    ["x^3", "x^2*y", "y^2"],
    ["x^2", "x*y", "y^4"],
    ["x^4", "x*y", "y^2"],
    ["x^3", "x*y^2", "y^3"],
    ["x^2", "x*y^3", "y^4"],
]


def golod_fixtures():
    for ideal in GOLOD_IDEALS:
        A = QuotientRing(QQ, ["x", "y"], ideal)
        mods = [residue_field(A), FPModule.cyclic(A, ["x"]), FPModule.cyclic(A, ["y"]), FPModule.cyclic(A, ["x", "y^2"])]
        yield ideal, A, mods


def artinian_fixtures():
    """``(label, ring, {name: module})`` for the oracle comparison."""
    A = QuotientRing(QQ, ["X", "Y"], ["X^2", "X*Y", "Y^2"])
    R = ring_module(A)
    yield "level1", A, {"R": R, "k": residue_field(A), "omega": k_dual(R)}
    G = QuotientRing(FieldSpec.prime(7), ["x", "y"], ["x^2", "y^3"])
    yield "gf7", G, {
        "R": ring_module(G),
        "k": residue_field(G),
        "M": FPModule.cyclic(G, ["x", "y^2"]),
        "N": FPModule.from_rows(G, [["x", "y"], ["0", "x"]], [0, 0]),
    }
    B = QuotientRing(QQ, ["x", "y"], ["x^3", "x*y", "y^2"])
    RB = ring_module(B)
    yield "golod", B, {"R": RB, "k": residue_field(B), "R+k": direct_sum(RB, residue_field(B)).module}


def _table(hs, lo=-30, hi=30):
    return {d: c for d, c in ((d, hs.coefficient(d)) for d in range(lo, hi)) if c}


def oracle_mismatches(ring, mods, top=2):
    """Every (kind, M, N, i) where engine and oracle disagree in some degree."""
    D = O.DenseRing.of(ring)
    dense = {n: O.from_fpmodule(D, M) for n, M in mods.items()}
    bad = []
    for a, M in mods.items():
        for b, N in mods.items():
            for i in range(top + 1):
                if _table(ext(i, M, N).hilbert_series) != O.ext_table(dense[a], dense[b], i):
                    bad.append(("ext", a, b, i))
                if _table(tor(i, M, N).hilbert_series) != O.tor_table(dense[a], dense[b], i):
                    bad.append(("tor", a, b, i))
            hom = {e: n for e, n in ((e, len(hom_degree_basis(M, N, e))) for e in range(-30, 30)) if n}
            if hom != O.hom_table(dense[a], dense[b]):
                bad.append(("hom", a, b, None))
    return bad


def count_comparisons(mods, top=2):
    n = len(mods)
    return n * n * (2 * (top + 1) + 1)
