"""Input documents: one ring, named modules and maps, and a command.

Polynomials are strings such as ``"3*x^2*y - 1/2*z"``.  Modules are given by
generator degrees and a row-major presentation matrix (one row per
generator, one column per relation); maps by a row-major matrix with one row
per target generator and one column per source generator.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field

from .field import FieldError
from .fpmod import FPModule, ModuleMap
from .poly import ParseError
from .ring import QuotientRing


class InputError(ValueError):
    """Malformed input; ``path`` names the offending field."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


def _require(cond, path, message):
    if not cond:
        raise InputError(path, message)


@dataclass
class SessionInput:
    ring: dict
    modules: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    command: str = None
    params: dict = field(default_factory=dict)

    def to_json(self):
        out = {"ring": self.ring, "modules": self.modules, "maps": self.maps}
        if self.command:
            out["command"] = self.command
        if self.params:
            out["params"] = self.params
        return copy.deepcopy(out)

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, data):
        _require(isinstance(data, dict), "$", "input must be a JSON object")
        _require("ring" in data, "ring", "missing ring description")
        ring = data["ring"]
        _require(isinstance(ring, dict), "ring", "must be an object")
        _require(isinstance(ring.get("variables"), list) and ring.get("variables"), "ring.variables", "need a nonempty list of names")
        modules = data.get("modules", {})
        _require(isinstance(modules, dict), "modules", "must be an object of name -> module")
        for name, m in modules.items():
            p = f"modules.{name}"
            _require(isinstance(m, dict), p, "must be an object")
            _require(isinstance(m.get("degrees", []), list), p + ".degrees", "must be a list of integers")
            _require(all(isinstance(d, int) for d in m.get("degrees", [])), p + ".degrees", "must be a list of integers")
            rows = m.get("presentation", [])
            _require(isinstance(rows, list) and all(isinstance(r, list) for r in rows), p + ".presentation", "must be a list of rows")
        maps = data.get("maps", {})
        _require(isinstance(maps, dict), "maps", "must be an object of name -> map")
        for name, f in maps.items():
            p = f"maps.{name}"
            _require(isinstance(f, dict), p, "must be an object")
            for key in ("source", "target"):
                _require(f.get(key) in modules, f"{p}.{key}", f"unknown module {f.get(key)!r}")
            _require(isinstance(f.get("matrix"), list), p + ".matrix", "missing matrix")
        params = data.get("params", {})
        _require(isinstance(params, dict), "params", "must be an object")
        return cls(copy.deepcopy(ring), copy.deepcopy(modules), copy.deepcopy(maps), data.get("command"), copy.deepcopy(params))

    @classmethod
    def loads(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"line {exc.lineno} column {exc.colno}", exc.msg) from exc
        return cls.from_json(data)

    def build(self, degree_cap=None) -> "Session":
        return Session(self, degree_cap)


class Session:
    """Parsed objects of a :class:`SessionInput`."""

    def __init__(self, doc: SessionInput, degree_cap=None):
        self.doc = doc
        try:
            r = QuotientRing.from_json(doc.ring)
        except (FieldError, ParseError, ValueError, KeyError) as exc:
            raise InputError("ring", str(exc)) from exc
        if degree_cap is not None:
            r.degree_cap = degree_cap
        self.ring = r
        self.modules = {}
        for name, m in doc.modules.items():
            self.modules[name] = self._module(name, m)
        self.maps = {}
        for name, f in doc.maps.items():
            self.maps[name] = self._map(name, f)

    def _parse(self, text, path):
        if not isinstance(text, str):
            text = str(text)
        try:
            return self.ring.parse(text)
        except (ParseError, FieldError, ValueError) as exc:
            raise InputError(path, str(exc)) from exc

    def _module(self, name, m):
        p = f"modules.{name}"
        rows = m.get("presentation", [])
        degrees = m.get("degrees")
        if degrees is None:
            degrees = [0] * len(rows)
        if not rows:
            rows = [[] for _ in degrees]
        _require(len(rows) == len(degrees), p + ".presentation", f"{len(rows)} rows for {len(degrees)} generators")
        ncols = len(rows[0]) if rows else 0
        cols = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            _require(len(row) == ncols, f"{p}.presentation[{i}]", f"row has {len(row)} entries, expected {ncols}")
            for j, e in enumerate(row):
                f = self._parse(e, f"{p}.presentation[{i}][{j}]")
                if f:
                    _require(self.ring.poly.is_homogeneous(f), f"{p}.presentation[{i}][{j}]", "entry is not homogeneous")
                    cols[j][i] = f
        for j, col in enumerate(cols):
            degs = {degrees[i] + self.ring.poly.degree_of(f) for i, f in col.items()}
            _require(len(degs) <= 1, f"{p}.presentation[*][{j}]", "relation is not homogeneous")
        return FPModule(self.ring, degrees, cols, name)

    def _map(self, name, f):
        p = f"maps.{name}"
        S, T = self.modules[f["source"]], self.modules[f["target"]]
        rows = f["matrix"]
        _require(len(rows) == T.ngens, p + ".matrix", f"{len(rows)} rows for a target with {T.ngens} generators")
        images = [{} for _ in range(S.ngens)]
        for i, row in enumerate(rows):
            _require(isinstance(row, list) and len(row) == S.ngens, f"{p}.matrix[{i}]", f"expected {S.ngens} entries")
            for j, e in enumerate(row):
                g = self._parse(e, f"{p}.matrix[{i}][{j}]")
                if g:
                    images[j][i] = g
        try:
            return ModuleMap(S, T, images, check=True)
        except ValueError as exc:
            raise InputError(p, str(exc)) from exc

    def module(self, name, path="params"):
        _require(name in self.modules, path, f"unknown module {name!r}")
        return self.modules[name]

    def map(self, name, path="params"):
        _require(name in self.maps, path, f"unknown map {name!r}")
        return self.maps[name]


def module_doc(M: FPModule):
    return M.to_json()


def map_doc(f: ModuleMap, source, target):
    return {"source": source, "target": target, "matrix": f.to_json()}


__all__ = ["InputError", "Session", "SessionInput", "map_doc", "module_doc"]
