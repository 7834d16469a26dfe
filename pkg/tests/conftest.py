import pytest

from gradelink.field import QQ, FieldSpec
from gradelink.fpmod import FPModule, k_dual
from gradelink.homology import residue_field, ring_module
from gradelink.ring import QuotientRing


@pytest.fixture(scope="session")
def kxy():
    return QuotientRing(QQ, ["x", "y"])


@pytest.fixture(scope="session")
def art():
    """k[X,Y]/(X,Y)^2."""
    return QuotientRing(QQ, ["X", "Y"], ["X^2", "X*Y", "Y^2"])


@pytest.fixture(scope="session")
def gor():
    """Gorenstein Artinian k[x,y]/(x^2,y^2)."""
    return QuotientRing(QQ, ["x", "y"], ["x^2", "y^2"])


@pytest.fixture(scope="session")
def F7():
    return FieldSpec.prime(7)


class Mods:
    def __init__(self, ring):
        self.ring = ring
        self.R = ring_module(ring)
        self.k = residue_field(ring)

    def cyclic(self, *gens, degree=0):
        return FPModule.cyclic(self.ring, list(gens), degree)

    @property
    def omega(self):
        return k_dual(self.R)


@pytest.fixture(scope="session")
def P(kxy):
    return Mods(kxy)


@pytest.fixture(scope="session")
def A(art):
    return Mods(art)


@pytest.fixture(scope="session")
def G(gor):
    return Mods(gor)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
