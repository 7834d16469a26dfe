"""Command-line front end: a JSON document in, a JSON report out.

Exit codes: 0 computed (whatever the verdict), 2 input error, 3 budget or
degree-cap truncation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import diagnostics, gcdim, linkage
from .errors import GradelinkError, NoCanonical, NotEpi, NoAlpha, ResolutionTruncated
from .fixtures import NAMES, fixture
from .groebner import Truncated
from .homology import alpha, depth, ext, free_resolution, grade, residue_field, ring_module, tor
from .session import InputError, SessionInput

EXIT_OK, EXIT_INPUT, EXIT_TRUNCATED = 0, 2, 3


class Context:
    def __init__(self, session, opts):
        self.s = session
        self.o = opts

    def module(self, key, default=None):
        name = self.o.get(key) or default
        if name is None:
            raise InputError(f"params.{key}", "module name required")
        if name not in self.s.modules:
            if name == "R":
                return ring_module(self.s.ring)
            if name == "k":
                return residue_field(self.s.ring)
        return self.s.module(name, f"params.{key}")

    def map(self, key):
        name = self.o.get(key)
        if name is None:
            raise InputError(f"params.{key}", "map name required")
        return self.s.map(name, f"params.{key}")

    def int(self, key, default=None):
        v = self.o.get(key, default)
        if v is None:
            raise InputError(f"params.{key}", "integer required")
        try:
            return int(v)
        except (TypeError, ValueError) as exc:
            raise InputError(f"params.{key}", f"not an integer: {v!r}") from exc

    @property
    def bound(self):
        return self.int("bound", gcdim.DEFAULT_BOUND)

    @property
    def budget(self):
        return self.int("budget", 64)

    @property
    def seed(self):
        return self.int("seed", 0)


def _pairs(xs):
    return [[i, bool(z)] for i, z in xs]


def cmd_grade(c):
    M, N = c.module("M"), c.module("N", "R")
    return {"grade": grade(M, N)}


def cmd_alpha(c):
    return {"alpha": alpha(c.module("M"), c.module("N", "R"), c.bound).to_json()}


def cmd_depth(c):
    return {"depth": depth(c.module("M"))}


def cmd_ext(c):
    i = c.int("i")
    return {"ext": ext(i, c.module("M"), c.module("N", "R")).to_json()}


def cmd_tor(c):
    i = c.int("i")
    return {"tor": tor(i, c.module("M"), c.module("N", "k")).to_json()}


def cmd_resolution(c):
    res = free_resolution(c.module("M"), c.int("length", c.bound))
    return {"resolution": res.to_json(), "ranks": list(res.ranks)}


def cmd_semidualizing(c):
    return {"semidualizing": gcdim.is_semidualizing(c.module("C"), c.bound).to_json()}


def cmd_gc_zero(c):
    return {"gc_zero": gcdim.is_gc_zero(c.module("M"), c.module("C", "R"), c.int("g"), c.bound, c.seed).to_json()}


def cmd_gc_resolution(c):
    r = gcdim.gc_resolution(c.module("M"), c.module("C", "R"), c.int("j"), c.int("length", c.bound), c.bound, c.seed)
    return {"gc_resolution": r.to_json()}


def cmd_gc_dim(c):
    M, C, j = c.module("M"), c.module("C", "R"), c.int("j")
    return {"gc_dimension": gcdim.gc_dimension(M, C, j, c.bound, c.seed).to_json(), "auslander_bridger": gcdim.auslander_bridger(M, C, j, c.bound, c.seed)}


def cmd_transpose(c):
    return {"transpose": gcdim.transpose(c.module("M"), c.module("C", "R"), c.int("g"), c.seed).to_json()}


def cmd_torsionless(c):
    out = gcdim.torsionless_check(c.module("M"), c.module("C", "R"), c.int("g"), c.int("n"), c.seed)
    return {"torsionless": _pairs(out)}


def cmd_serre(c):
    primes = c.o.get("primes") or []
    r = gcdim.serre_check(c.module("M"), c.module("C", "R"), c.int("g"), c.int("n"), c.bound, c.seed, primes)
    return {"serre": r.to_json()}


def cmd_auslander_class(c):
    return {"auslander_class": gcdim.auslander_class_check(c.module("M"), c.module("C"), c.bound, c.seed).to_json()}


def cmd_serre_audit(c):
    return {"serre_audit": gcdim.serre_equivalence_audit(c.module("M"), c.module("C"), c.int("g"), c.int("n"), c.bound, c.seed)}


def _report(c, key="Q"):
    return linkage.is_quasi_gorenstein(c.module(key), c.module("C", "R"), c.bound, c.budget, c.seed)


def _phi_report(c):
    phi = c.map("phi")
    rep = linkage.is_quasi_gorenstein(phi.source, c.module("C", "R"), c.bound, c.budget, c.seed)
    return phi, rep


def cmd_quasi_gorenstein(c):
    return {"quasi_gorenstein": _report(c).to_json()}


def cmd_link(c):
    phi, rep = _phi_report(c)
    res = linkage.link(rep, phi)
    out = {"quasi_gorenstein": rep.to_json(), "link": res.to_json()}
    out["kernel_identity"] = linkage.kernel_identity(res, rep, c.budget, c.seed).to_json()
    return out


def cmd_horizontal(c):
    phi, rep = _phi_report(c)
    return {"horizontal": linkage.horizontal_link_check(rep, phi, c.bound, c.budget, c.seed).to_json()}


def cmd_stability(c):
    return {"stability": linkage.stability_check(c.module("M"), c.module("C", "R"), c.int("g"), c.budget, c.bound, c.seed).to_json()}


def cmd_linked_pair(c):
    M, N, Q, C = c.module("M"), c.module("N"), c.module("Q"), c.module("C", "R")
    phi = c.map("phi") if c.o.get("phi") else None
    psi = c.map("psi") if c.o.get("psi") else None
    return {"linked_pair": linkage.linked_pair_check(M, N, Q, C, phi, psi, c.bound, c.budget, c.seed).to_json()}


def cmd_local_duality(c):
    omega = c.module("omega") if c.o.get("omega") else None
    return {"local_duality": _pairs(linkage.local_duality_report(c.module("M"), omega=omega))}


def cmd_summary_audit(c):
    phi, rep = _phi_report(c)
    return {"quasi_gorenstein": rep.to_json(), "summary_audit": linkage.summary_corollary_audit(rep, phi, None, c.bound, c.seed)}


COMMANDS = {
    "grade": cmd_grade,
    "alpha": cmd_alpha,
    "depth": cmd_depth,
    "ext": cmd_ext,
    "tor": cmd_tor,
    "resolution": cmd_resolution,
    "semidualizing": cmd_semidualizing,
    "gc-zero": cmd_gc_zero,
    "gc-resolution": cmd_gc_resolution,
    "gc-dim": cmd_gc_dim,
    "transpose": cmd_transpose,
    "torsionless": cmd_torsionless,
    "serre": cmd_serre,
    "auslander-class": cmd_auslander_class,
    "serre-audit": cmd_serre_audit,
    "quasi-gorenstein": cmd_quasi_gorenstein,
    "link": cmd_link,
    "horizontal": cmd_horizontal,
    "stability": cmd_stability,
    "linked-pair": cmd_linked_pair,
    "local-duality": cmd_local_duality,
    "summary-audit": cmd_summary_audit,
}


def _truncated(obj):
    """Any ``inconclusive`` verdict in the report."""
    if isinstance(obj, dict):
        if obj.get("status") == "inconclusive":
            return True
        return any(_truncated(v) for v in obj.values())
    if isinstance(obj, list):
        return any(_truncated(v) for v in obj)
    return False


def run(doc: SessionInput, command=None, params=None, degree_cap=None):
    """``(report, exit code)``; the report carries no wall-clock data except ``timing``."""
    command = command or doc.command
    opts = dict(doc.params)
    opts.update({k: v for k, v in (params or {}).items() if v is not None})
    if command not in COMMANDS:
        raise InputError("command", f"unknown command {command!r}")
    t0 = time.perf_counter()
    session = doc.build(degree_cap)
    diagnostics.reset()
    code = EXIT_OK
    try:
        result = COMMANDS[command](Context(session, opts))
    except (ResolutionTruncated, Truncated) as exc:
        result, code = {"truncated": str(exc)}, EXIT_TRUNCATED
    except (NotEpi, NoAlpha, NoCanonical) as exc:
        result = {"error": type(exc).__name__, "message": str(exc)}
    report = {"command": command, "params": {k: opts[k] for k in sorted(opts)}, "result": result}
    notes = diagnostics.emitted()
    if notes:
        report["diagnostics"] = notes
    if code == EXIT_OK and _truncated(result):
        code = EXIT_TRUNCATED
    report["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    return report, code


def _parser():
    p = argparse.ArgumentParser(prog="gradelink", description="Grade-shifted Gorenstein dimension and linkage computations.")
    p.add_argument("command", choices=sorted(COMMANDS) + ["fixtures"])
    p.add_argument("fixture_name", nargs="?", help="fixture name for the fixtures command")
    p.add_argument("--in", dest="input", help="input JSON file (default: stdin)")
    p.add_argument("--out", dest="output", help="report file (default: stdout)")
    p.add_argument("--fixture", choices=NAMES, help="use a built-in fixture as the input document")
    for name in ("M", "N", "C", "Q", "phi", "psi", "omega"):
        p.add_argument(f"--{name}", help=f"name of the {name} argument")
    for name in ("bound", "budget", "seed", "degree-cap", "i", "j", "g", "n", "length"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--primes", nargs="*", help="extra prime ideals for serre as comma-separated generators (recorded, not localized)")
    return p


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        if args.command == "fixtures":
            if not args.fixture_name:
                raise InputError("fixture_name", f"choose one of {', '.join(NAMES)}")
            try:
                doc = fixture(args.fixture_name)
            except KeyError as exc:
                raise InputError("fixture_name", str(exc.args[0])) from exc
            _emit(doc.dumps(), args.output)
            return EXIT_OK
        if args.fixture:
            doc = fixture(args.fixture)
        else:
            text = open(args.input, encoding="utf-8").read() if args.input else sys.stdin.read()
            doc = SessionInput.loads(text)
        params = {k: getattr(args, k) for k in ("M", "N", "C", "Q", "phi", "psi", "omega", "bound", "budget", "i", "j", "g", "n", "length")}
        params["seed"] = int(os.environ["GRADELINK_SEED"]) if os.environ.get("GRADELINK_SEED") else args.seed
        if args.primes:
            params["primes"] = [q.split(",") for q in args.primes]
        report, code = run(doc, args.command, params, args.degree_cap)
    except InputError as exc:
        _emit(json.dumps({"error": "input", "path": exc.path, "message": str(exc)}, sort_keys=True), args.output)
        return EXIT_INPUT
    except OSError as exc:
        _emit(json.dumps({"error": "input", "path": "--in", "message": str(exc)}, sort_keys=True), args.output)
        return EXIT_INPUT
    except GradelinkError as exc:
        _emit(json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True), args.output)
        return EXIT_INPUT
    _emit(json.dumps(report, indent=2, sort_keys=True, default=str), args.output)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
