from gradelink.fpmod import ModuleMap, direct_sum, iso_search
from gradelink.summands import charpoly, decompose, fitting_idempotent


def test_identity_charpoly(A):
    f = ModuleMap.identity(A.R)
    # R_0 + R_1 is 3-dimensional but only the generator window (degree 0) is used
    assert charpoly(f).degree() == 1
    assert fitting_idempotent(f) is None


def test_decompose_sum(A):
    ds = direct_sum(A.k, A.R)
    parts, exhaustive = decompose(ds.module)
    assert exhaustive and len(parts) == 2
    found = sorted(p.module.hilbert_series.format() for p in parts)
    assert found == ["1", "1 + 2*t"]
    for p in parts:
        e = p.idempotent
        assert e.compose(e).equals(e)
        assert p.projection.compose(p.inclusion).equals(ModuleMap.identity(p.module))


def test_indecomposables(A, G):
    for M in (A.k, A.R, A.omega, G.cyclic("x")):
        parts, exhaustive = decompose(M)
        assert exhaustive and len(parts) == 1 and parts[0].certified_indecomposable


def test_three_summands(G):
    ds = direct_sum(G.k, G.cyclic("x"), G.R)
    parts, exhaustive = decompose(ds.module)
    assert exhaustive and len(parts) == 3
    for M in (G.k, G.cyclic("x"), G.R):
        assert any(iso_search(p.module, M).verified for p in parts)
