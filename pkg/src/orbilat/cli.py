"""Command-line front end: ``python3 -m orbilat {report,enumerate,theta,verify}``.

Every command writes canonical JSON to stdout (sorted keys, compact
separators, integers beyond 2**53 as decimal strings). Exit codes:
0 success, 1 verification failure, 2 usage or schema error, 3 resource budget.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

import jsonschema

from . import codes as cd
from . import lattice as lc
from . import orbifold as ob
from . import qseries as qs
from . import sigma as sg
from .checks import SUITES

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

JOB_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "orbilat job",
    "type": "object",
    "required": ["p", "d"],
    "additionalProperties": False,
    "properties": {
        "p": {"type": "integer", "minimum": 3, "not": {"multipleOf": 2}},
        "d": {"type": "integer", "minimum": 1},
        "C_generators": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer", "minimum": 0, "maximum": 1}},
        },
        "D_generators": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        },
        "s": {"oneOf": [{"type": "integer", "minimum": 1}, {"const": "all"}]},
        "constraints": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": ["C", "D"]},
                "sigma_invariant": {"type": "boolean"},
                "even": {"type": "boolean"},
                "self_dual": {"type": "boolean"},
                "self_orthogonal": {"type": "boolean"},
            },
        },
    },
}

_FRIENDLY = {
    ("p", "not"): "p must be odd",
    ("p", "minimum"): "p must be at least 3",
    ("d", "minimum"): "d must be at least 1",
}

MAX_SAFE_INT = 2 ** 53


class UsageError(ValueError):
    pass


# --------------------------------------------------------------------------
# JSON helpers


def _canon(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > MAX_SAFE_INT else obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    if hasattr(obj, "to_json"):
        return _canon(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(_canon(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _emit(obj: Any, out) -> None:
    out.write(dumps(obj) + "\n")


def _error(kind: str, message: str, out) -> None:
    _emit({"error": {"kind": kind, "message": message}}, out)


# --------------------------------------------------------------------------
# job parsing


def load_job(source: str, stdin=None) -> dict[str, Any]:
    if source == "-":
        text = (stdin or sys.stdin).read()
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read job file: {exc}") from exc
    try:
        job = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"job is not valid JSON: {exc}") from exc
    validate_job(job)
    return job


def validate_job(job: Any) -> None:
    """Schema validation followed by the length checks the schema cannot express."""
    err = jsonschema.exceptions.best_match(jsonschema.Draft202012Validator(JOB_SCHEMA).iter_errors(job))
    if err is not None:
        key = (err.path[0] if err.path else None, err.validator)
        raise UsageError(_FRIENDLY.get(key, f"{'/'.join(map(str, err.path)) or 'job'}: {err.message}"))
    p, d = job["p"], job["d"]
    for g in job.get("C_generators", []):
        if len(g) != (p - 1) * d:
            raise UsageError(f"C generator {g} has length {len(g)}, expected (p-1)d = {(p - 1) * d}")
    for g in job.get("D_generators", []):
        if len(g) != d:
            raise UsageError(f"D generator {g} has length {len(g)}, expected d = {d}")
        if any(x >= p for x in g):
            raise UsageError(f"D generator {g} has entries outside 0..p-1")
    s = job.get("s", "all")
    if s != "all" and not 1 <= s <= p - 1:
        raise UsageError(f"twist s must lie in 1..{p - 1}")


def codes_of(job: dict[str, Any]) -> tuple[cd.CodeC, cd.CodeD]:
    p, d = job["p"], job["d"]
    try:
        dc = cd.CodeD.span(p, d, job.get("D_generators", []))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return cd.CodeC.span(p, d, job.get("C_generators", [])), dc


def _twists(job: dict[str, Any]) -> list[int] | None:
    s = job.get("s", "all")
    return None if s == "all" else [s]


# --------------------------------------------------------------------------
# commands


def cmd_report(job: dict[str, Any]) -> dict[str, Any]:
    c, dc = codes_of(job)
    return ob.build_report(c, dc, _twists(job)).to_json()


def cmd_enumerate(p: int, d: int, constraints: dict[str, Any], out) -> int:
    cons = dict(constraints)
    kind = cons.pop("kind", "C")
    found = cd.enumerate_codes(p, d, kind, **cons)
    for code in found:
        row: dict[str, Any] = {"kind": kind, "p": p, "d": d, "dim": code.dim,
                               "generators": [list(g) for g in code.basis],
                               "self_orthogonal": cd.is_self_orthogonal(code),
                               "self_dual": cd.is_self_dual(code)}
        if kind == "C":
            row["even"] = cd.is_q_isotropic(code)
            row["sigma_invariant"] = code.is_sigma_invariant()
            try:
                row["group_like"] = ob.group_like_fusion(code, cd.CodeD.zero(p, d))
            except ob.HypothesisError:
                row["group_like"] = None
        else:
            row["even"] = row["self_orthogonal"]
            row["sigma_invariant"] = True
            row["group_like"] = None
        _emit(row, out)
    return len(found)


def cmd_theta(job: dict[str, Any], order: int, y_schedule: Sequence[float] | None) -> dict[str, Any]:
    c, dc = codes_of(job)
    lat = cd.to_lattice(c, dc)
    out: dict[str, Any] = {"p": c.p, "d": c.d, "order": order,
                           "theta": lc.theta_coeffs(lat, order).to_json(),
                           "transform_residual": qs.transform_check(lat, 1.0)}
    twists = _twists(job) or [1]
    try:
        ob.check_hypotheses(c, dc)
    except ob.HypothesisError as exc:
        out["hypothesis_failed"] = exc.hypothesis
        return out
    full = sg.coxeter_sigma(c.p, c.d).restrict(lat)
    sectors = []
    for s in twists:
        iso = full.power(s)
        spec = sg.spectral(iso)
        sec = ob.twisted_sector(lat, iso)
        entry: dict[str, Any] = {
            "s": s,
            "twisted_char": qs.twisted_char(spec, c.p, lat.rank, order).to_json(),
            "qdim_exact": ob.qdim_exact(lat, spec, sec.dim_T, sec.radical).to_json(),
        }
        if y_schedule:
            num = qs.numeric_qdim(lat, spec, sec.dim_T, c.p, y_schedule)
            entry["qdim_numeric"] = {"value": num.value, "error_estimate": num.error,
                                     "schedule": list(num.schedule), "values": list(num.values)}
        sectors.append(entry)
    out["sectors"] = sectors
    return out


def cmd_verify(names: Sequence[str], y_schedule: Sequence[float] | None) -> tuple[dict[str, Any], bool]:
    results = []
    ok = True
    for name in names:
        if name == "numeric" and y_schedule:
            checks = SUITES[name](y_schedule)
        else:
            checks = SUITES[name]()
        passed = all(ch.passed for ch in checks)
        ok &= passed
        results.append({"suite": name, "passed": passed, "total": len(checks),
                        "failed": sum(not ch.passed for ch in checks),
                        "checks": [ch.to_json() for ch in checks]})
    return {"passed": ok, "suites": results}, ok


# --------------------------------------------------------------------------
# argument handling


def _schedule(text: str) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad y schedule {text!r}") from exc
    if not vals or any(v <= 0 for v in vals):
        raise argparse.ArgumentTypeError("y schedule needs positive values")
    return vals


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--budget", type=_positive, default=None,
                        help="node budget for short-vector and code enumeration")
    common.add_argument("--y-schedule", type=_schedule, default=None,
                        help="comma-separated y values for numeric quantum dimensions")

    ap = _Parser(prog="orbilat", description="Lattices from codes and their cyclic orbifolds.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    rp = sub.add_parser("report", parents=[common], help="full invariant report for one job")
    rp.add_argument("--job", required=True, help="job JSON file, or - for stdin")

    ep = sub.add_parser("enumerate", parents=[common], help="list codes meeting constraints (JSON lines)")
    ep.add_argument("--job", help="job JSON supplying p, d and constraints")
    ep.add_argument("-p", type=int)
    ep.add_argument("-d", type=int)
    ep.add_argument("--kind", choices=["C", "D"])
    for flag in ("sigma-invariant", "even", "self-dual", "self-orthogonal"):
        ep.add_argument(f"--{flag}", action="store_true")

    tp = sub.add_parser("theta", parents=[common], help="theta series and twisted characters")
    tp.add_argument("--job", required=True, help="job JSON file, or - for stdin")
    tp.add_argument("--order", type=_positive, default=4, help="truncate series after q^N")

    vp = sub.add_parser("verify", parents=[common], help="run self-verification suites")
    vp.add_argument("suites", nargs="+", metavar="SUITE", help=f"one of {', '.join(SUITES)} or all")
    return ap


def _enumerate_args(args, stdin) -> tuple[int, int, dict[str, Any]]:
    job: dict[str, Any] = {}
    if args.job:
        job = load_job(args.job, stdin)
    p = args.p if args.p is not None else job.get("p")
    d = args.d if args.d is not None else job.get("d")
    if p is None or d is None:
        raise UsageError("enumerate needs p and d (flags or --job)")
    validate_job({"p": p, "d": d})
    cons = dict(job.get("constraints", {}))
    if args.kind:
        cons["kind"] = args.kind
    for key in ("sigma_invariant", "even", "self_dual", "self_orthogonal"):
        if getattr(args, key):
            cons[key] = True
    if args.budget is not None:
        cons["budget"] = args.budget
    return p, d, cons


def main(argv: Sequence[str] | None = None, stdin=None, stdout=None) -> int:
    out = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.command == "verify":
            names = list(SUITES) if args.suites == ["all"] else args.suites
            unknown = [n for n in names if n not in SUITES]
            if unknown:
                raise UsageError(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)}")
        with lc.enumeration_budget(args.budget if args.budget is not None else lc.DEFAULT_BUDGET):
            if args.command == "report":
                _emit(cmd_report(load_job(args.job, stdin)), out)
            elif args.command == "theta":
                _emit(cmd_theta(load_job(args.job, stdin), args.order, args.y_schedule), out)
            elif args.command == "enumerate":
                p, d, cons = _enumerate_args(args, stdin)
                cmd_enumerate(p, d, cons, out)
            else:
                summary, ok = cmd_verify(names, args.y_schedule)
                _emit(summary, out)
                return EXIT_OK if ok else EXIT_FAIL
    except UsageError as exc:
        _error("usage", str(exc), out)
        return EXIT_USAGE
    except (lc.EnumerationBudgetError, cd.CodeSizeError, qs.TruncationError) as exc:
        _error("resource", str(exc), out)
        return EXIT_RESOURCE
    except (sg.ConsistencyError, sg.InvarianceError) as exc:
        _error("verification", str(exc), out)
        return EXIT_FAIL
    return EXIT_OK


def main_entry() -> None:
    sys.exit(main())
