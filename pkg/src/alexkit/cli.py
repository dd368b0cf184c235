"""``alexkit`` command line.

stdout carries exactly one JSON document (or a CSV stream for ``curve``);
human-readable diagnostics go to stderr.  Exit codes: 0 success, 1 domain
failure (a report is still printed), 2 usage error or malformed input, in
which case nothing is written to stdout.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .alexiewicz import StepFunction, alexiewicz_norm, embed, unembed
from .compact import CompactSet
from .compatibility import check_fiber_compatibility, compatibility_growth_curve, gap_correspondence
from .errors import AlexkitError, FiberIncompatible
from .isometry import (
    IsometryDescriptor,
    apply_isometry,
    canonical_isometry,
    invert_isometry,
    recover_descriptor,
    verify_J_identity,
)
from .lifting import lift, lipschitz_report, selector_map_phi_sigma
from .numeric import PiecewiseLinear
from .projection import exceptional_set, fiber, project, selector
from .serialize import (
    SchemaError,
    add_floats,
    correspondence_to_json,
    decimal17,
    descriptor_from_json,
    descriptor_to_json,
    incompatibility_to_json,
    lifted_to_json,
    matching_to_json,
    pl_from_json,
    pl_to_json,
    rat,
    rstr,
    set_from_json,
    set_to_json,
    step_from_json,
    step_to_json,
)
from .verify import ITEMS, run_all

FAMILIES = {"reciprocal": (1, 2)}


class UsageError(Exception):
    pass


class DomainFailure(Exception):
    """Carries the JSON report for an exit-1 result."""

    def __init__(self, doc, message):
        super().__init__(message)
        self.doc = doc


def _load(path: Optional[str], flag: str):
    if path is None:
        raise UsageError(f"{flag} is required")
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc


def _set(path, flag="--K") -> CompactSet:
    return set_from_json(_load(path, flag))


def _fn(args, domain=None) -> StepFunction:
    doc = _load(args.fn, "--fn")
    if domain is None and args.K:
        domain = _set(args.K)
    return step_from_json(doc, domain)


def _psi(args) -> PiecewiseLinear:
    return pl_from_json(_load(args.psi, "--psi"))


def _rational_arg(text, flag) -> Fraction:
    if text is None:
        raise UsageError(f"{flag} is required")
    return rat(text)


def _descriptor(args) -> IsometryDescriptor:
    if args.desc:
        return descriptor_from_json(_load(args.desc, "--desc"))
    return IsometryDescriptor(args.sign, _psi(args), _set(args.K), _set(args.M, "--M"))


# ---- set -----------------------------------------------------------------


def cmd_set(args):
    K = _set(args.K)
    if args.action == "info":
        E = exceptional_set(K)
        return {
            "set": set_to_json(K),
            "measure": rstr(K.measure),
            "min": rstr(K.min),
            "max": rstr(K.max),
            "component_count": len(K.components),
            "exceptional_set": [rstr(t) for t in E],
            "fibers": {rstr(t): [rstr(x) for x in fiber(K, t).points] for t in E},
        }
    if args.action == "gaps":
        return [[rstr(g.left), rstr(g.right)] for g in K.gaps()]
    if args.action == "project":
        return rstr(project(K, _rational_arg(args.x, "--x")))
    if args.action == "selector":
        return rstr(selector(K, _rational_arg(args.t, "--t")))
    # fibers
    levels = [_rational_arg(args.t, "--t")] if args.t is not None else exceptional_set(K)
    return {rstr(t): [rstr(x) for x in fiber(K, t).points] for t in levels}


# ---- functions -----------------------------------------------------------


def cmd_norm(args):
    return rstr(alexiewicz_norm(_fn(args)))


def cmd_embed(args):
    return pl_to_json(embed(_fn(args)))


def cmd_unembed(args):
    K = _set(args.K)
    G = pl_from_json(_load(args.fn, "--fn"))
    return step_to_json(unembed(K, G))


# ---- isometry ------------------------------------------------------------


def cmd_isometry(args):
    if args.action == "canonical":
        return descriptor_to_json(canonical_isometry(_set(args.K), _set(args.M, "--M")))
    D = _descriptor(args)
    if args.action == "invert":
        return descriptor_to_json(invert_isometry(D))
    if args.action == "recover":
        # the descriptor file stands in for an opaque transformer; only its outputs are used
        got = recover_descriptor(D.source, D.target, lambda f: apply_isometry(D, f), seed=args.seed)
        return descriptor_to_json(got)
    f = _fn(args, D.source)
    if args.action == "apply":
        Tf = apply_isometry(D, f)
        return {
            "Tf": step_to_json(Tf),
            "norm_f": rstr(alexiewicz_norm(f)),
            "norm_Tf": rstr(alexiewicz_norm(Tf)),
            "norm_preserved": alexiewicz_norm(Tf) == alexiewicz_norm(f),
        }
    chk = verify_J_identity(D, f)
    doc = {"holds": chk.holds, "witness": None if chk.holds else rstr(chk.witness)}
    if not chk.holds:
        raise DomainFailure(doc, f"primitive identity fails at level {chk.witness}")
    return doc


# ---- compatibility and lifting ---------------------------------------------


def _selector_samples(K, M, psi, n):
    sel = selector_map_phi_sigma(K, M, psi)
    return [[rstr(y), rstr(sel(y))] for y in _sample_points(M, n)]


def _sample_points(M: CompactSet, n: int) -> List[Fraction]:
    if n <= 1:
        return [M.min]
    return [selector(M, M.measure * k / (n - 1)) for k in range(n)]


def cmd_compat(args):
    if args.action == "curve":
        return cmd_curve(args)
    K, M, psi = _set(args.K), _set(args.M, "--M"), _psi(args)
    r = check_fiber_compatibility(K, M, psi)
    if not r.compatible:
        raise DomainFailure(incompatibility_to_json(r), str(r))
    corr = gap_correspondence(K, M, r)
    doc = matching_to_json(r)
    doc["gaps"] = correspondence_to_json(corr)
    doc["C"] = rstr(corr.constant)
    return doc


def cmd_curve(args):
    if args.family not in FAMILIES:
        raise UsageError(f"unknown family {args.family!r}; known: {', '.join(FAMILIES)}")
    if args.n_max < 1:
        raise UsageError("--n-max must be at least 1")
    curve = compatibility_growth_curve(FAMILIES[args.family], range(1, args.n_max + 1))
    if args.json:
        return {"family": args.family, "curve": [{"N": N, "C": rstr(C)} for N, C in curve]}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["N", "C_numerator", "C_denominator", "C_float"])
    for N, C in curve:
        w.writerow([N, C.numerator, C.denominator, decimal17(C)])
    return CsvText(buf.getvalue(), args.csv)


class CsvText(str):
    def __new__(cls, text, path=None):
        obj = super().__new__(cls, text)
        obj.path = path
        return obj


def cmd_lift(args):
    K, M, psi = _set(args.K), _set(args.M, "--M"), _psi(args)
    try:
        phi = lift(K, M, psi)
    except FiberIncompatible as exc:
        doc = incompatibility_to_json(exc.report)
        # the selector map always exists; offer it for inspection
        doc["selector_map_discontinuities"] = [rstr(t) for t in exceptional_set(M)]
        if args.sample:
            doc["selector_map_samples"] = _selector_samples(K, M, psi, args.sample)
        raise DomainFailure(doc, str(exc.report)) from exc
    doc = lifted_to_json(phi)
    rep = lipschitz_report(phi)
    doc["bound_check"] = rep.bound_check
    if args.sample:
        rows = [(y, phi(y)) for y in _sample_points(M, args.sample)]
        doc["samples"] = [[rstr(y), rstr(x)] for y, x in rows]
        if args.csv:
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["y", "phi_y", "y_float", "phi_y_float"])
            for y, x in rows:
                w.writerow([rstr(y), rstr(x), decimal17(y), decimal17(x)])
            _write_file(args.csv, buf.getvalue())
    if args.out:
        _write_file(args.out, json.dumps(lifted_to_json(phi), indent=2) + "\n")
    return doc


def _write_file(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


# ---- reproduction suite ------------------------------------------------


def cmd_reproduce(args):
    only = args.only or None

    def progress(r):
        flag = "" if r.within_budget else " (over budget)"
        print(f"{r.item}: {r.seconds:.3f}s of {r.budget:g}s{flag}", file=sys.stderr)

    results = run_all(args.seed, only, args.n, progress)
    width = max(len(r.item) for r in results)
    lines = [f"{r.item:<{width}}  {'PASS' if r.passed else 'FAIL'}  {r.detail}" for r in results]
    failed = [r.item for r in results if not r.passed]
    text = "\n".join(lines) + "\n"
    if failed:
        raise DomainFailure(TableText(text), f"failing items: {', '.join(failed)}")
    return TableText(text)


class TableText(str):
    pass


# ---- parser --------------------------------------------------------------


def _common(p, *flags):
    for flag in flags:
        p.add_argument(f"--{flag}", metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="alexkit", description="Exact Alexiewicz-norm calculus on compact sets.")
    parser.add_argument("--version", action="version", version=f"alexkit {__version__}")
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--json", action="store_true", help="JSON output (default for all but curve)")
    out.add_argument("--float", action="store_true", help="add *_float fields beside rational strings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("set", parents=[out], help="inspect a compact set")
    p.add_argument("action", choices=["info", "gaps", "project", "selector", "fibers"])
    _common(p, "K")
    p.add_argument("--t", help="level p/q")
    p.add_argument("--x", help="point p/q")
    p.set_defaults(run=cmd_set)

    for name, run in (("norm", cmd_norm), ("embed", cmd_embed), ("unembed", cmd_unembed)):
        p = sub.add_parser(name, parents=[out], help=f"{name} a step function")
        _common(p, "K", "fn")
        p.set_defaults(run=run)

    p = sub.add_parser("isometry", parents=[out], help="surjective isometries")
    p.add_argument("action", choices=["apply", "verify", "recover", "canonical", "invert"])
    _common(p, "K", "M", "psi", "fn", "desc")
    p.add_argument("--sign", type=int, choices=[1, -1], default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_isometry)

    curve_args = argparse.ArgumentParser(add_help=False)
    curve_args.add_argument("--family", default="reciprocal")
    curve_args.add_argument("--n-max", type=int, default=50)
    curve_args.add_argument("--csv", metavar="PATH", help="write the CSV here instead of stdout")

    p = sub.add_parser("compat", parents=[out, curve_args], help="fiber and gap compatibility")
    p.add_argument("action", choices=["check", "curve"])
    _common(p, "K", "M", "psi")
    p.set_defaults(run=cmd_compat)

    p = sub.add_parser("curve", parents=[out, curve_args], help="C(N) for a truncated family")
    p.set_defaults(run=cmd_curve)

    p = sub.add_parser("lift", parents=[out], help="lift psi to a bijection M -> K")
    _common(p, "K", "M", "psi", "out")
    p.add_argument("--sample", type=int, default=0, metavar="N")
    p.add_argument("--csv", metavar="PATH", help="write the samples as CSV")
    p.set_defaults(run=cmd_lift)

    p = sub.add_parser("verify-paper", help="run the reproduction suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--only", action="append", metavar="ITEM", choices=list(ITEMS))
    p.add_argument("--n", type=int, default=None, help="size override (N for example-5.3, else case count)")
    p.set_defaults(run=cmd_reproduce, json=False, float=False)
    return parser


def _render(payload, args) -> str:
    if isinstance(payload, (CsvText, TableText)):
        return payload
    if getattr(args, "float", False):
        # a bare rational gets wrapped so the float has somewhere to live
        payload = add_floats({"value": payload} if isinstance(payload, str) else payload)
    return json.dumps(payload, indent=2) + "\n"


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload = args.run(args)
    except (UsageError, SchemaError) as exc:
        print(f"alexkit: error: {exc}", file=sys.stderr)
        return 2
    except DomainFailure as exc:
        sys.stdout.write(_render(exc.doc, args))
        print(f"alexkit: {exc}", file=sys.stderr)
        return 1
    except AlexkitError as exc:
        doc = {"error": type(exc).__name__, "message": str(exc)}
        sys.stdout.write(_render(doc, args))
        print(f"alexkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if isinstance(payload, CsvText) and payload.path:
        try:
            _write_file(payload.path, payload)
        except UsageError as exc:
            print(f"alexkit: error: {exc}", file=sys.stderr)
            return 2
        return 0
    sys.stdout.write(_render(payload, args))
    return 0


if __name__ == "__main__":
    sys.exit(main())
