"""Built-in input documents: ``koszul-kxy``, ``artinian-level1``, ``artinian-level2``."""

from __future__ import annotations

from .fpmod import FPModule, direct_sum
from .homology import residue_field, ring_module
from .linkage import trivial_extension_tower
from .ring import QuotientRing
from .field import QQ
from .session import SessionInput, map_doc

NAMES = ("koszul-kxy", "artinian-level1", "artinian-level2")


def _with_sum(modules, maps, A, B, a, b):
    """Add ``a+b`` and its two projections ``a+b->a``, ``a+b->b``."""
    ds = direct_sum(A, B)
    key = f"{a}+{b}"
    modules[key] = ds.module.to_json()
    maps[f"{key}->{a}"] = map_doc(ds.projections[0], key, a)
    maps[f"{key}->{b}"] = map_doc(ds.projections[1], key, b)


def koszul_kxy():
    P = QuotientRing(QQ, ["x", "y"])
    R = ring_module(P)
    k = residue_field(P)
    Rx = FPModule.cyclic(P, ["x"])
    Rx2 = FPModule.cyclic(P, ["x^2"])
    modules = {"R": R.to_json(), "k": k.to_json(), "R/(x)": Rx.to_json(), "R/(x^2)": Rx2.to_json()}
    maps = {"R/(x^2)->R/(x)": {"source": "R/(x^2)", "target": "R/(x)", "matrix": [["1"]]}}
    return SessionInput(P.to_json(), modules, maps)


def artinian_level1():
    level = trivial_extension_tower(1)[0]
    R, w, k = level.candidates["R"], level.candidates["omega"], level.modules["k"]
    modules = {"R": R.to_json(), "k": k.to_json(), "omega": w.to_json()}
    maps = {}
    _with_sum(modules, maps, k, R, "k", "R")
    return SessionInput(level.ring.to_json(), modules, maps)


def artinian_level2():
    level = trivial_extension_tower(2)[1]
    modules = {n: M.to_json() for n, M in level.candidates.items()}
    for n, M in level.modules.items():
        modules[n] = M.to_json()
    maps = {}
    S = level.candidates["S"]
    _with_sum(modules, maps, S, level.modules["R"], "S", "R")
    _with_sum(modules, maps, S, level.modules["k"], "S", "k")
    return SessionInput(level.ring.to_json(), modules, maps)


_BUILDERS = {"koszul-kxy": koszul_kxy, "artinian-level1": artinian_level1, "artinian-level2": artinian_level2}


def fixture(name) -> SessionInput:
    if name not in _BUILDERS:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
    return _BUILDERS[name]()


__all__ = ["NAMES", "artinian_level1", "artinian_level2", "fixture", "koszul_kxy"]
