import pytest

from gradelink import oracle as O
from gradelink.homology import grade

from helpers import artinian_fixtures, oracle_mismatches

FIXTURES = list(artinian_fixtures())


@pytest.mark.parametrize("label,ring,mods", FIXTURES, ids=[f[0] for f in FIXTURES])
def test_engine_matches_oracle(label, ring, mods):
    assert oracle_mismatches(ring, mods) == []


@pytest.mark.parametrize("label,ring,mods", FIXTURES, ids=[f[0] for f in FIXTURES])
def test_grade_matches_oracle(label, ring, mods):
    D = O.DenseRing.of(ring)
    for M in mods.values():
        for N in mods.values():
            assert grade(M, N) == O.grade(O.from_fpmodule(D, M), O.from_fpmodule(D, N))


def test_oracle_known_values(A):
    D = O.DenseRing.of(A.ring)
    k, R = O.from_fpmodule(D, A.k), O.from_fpmodule(D, A.R)
    assert [O.ext_table(k, R, i) for i in range(4)] == [{1: 2}, {0: 3}, {-1: 6}, {-2: 12}]
    assert [sum(O.tor_table(k, k, i).values()) for i in range(4)] == [1, 2, 4, 8]


def test_presented_matches_ring(A):
    D = O.DenseRing.of(A.ring)
    assert O.presented(D, [0], []).dims == {0: 1, 1: 2}
