"""Command-line front end.

Exit codes: 0 = all verdicts confirmed / checks passed, 1 = mismatch,
2 = inconclusive, 64 = usage error.  Reports are deterministic: identical
invocations produce byte-identical output (keys sorted, no timestamps).
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from .algebra import AlgebraSpec, Window, bracket, jacobi_check
from .basis import Element, parse_basis_vector
from .catalog import (
    CaseResult,
    verify_biderivation_case,
    verify_derivation_case,
    biderivation_entries,
)
from .rationals import rat, rat_str
from .solver import DeltaParam, HomBilinearMap, lift_check, _WindowContext
from . import apps

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64

_STATUS_RANK = {"confirmed": 0, "inconclusive": 1, "mismatch": 2}
_STATUS_EXIT = {"confirmed": EXIT_OK, "inconclusive": EXIT_INCONCLUSIVE, "mismatch": EXIT_MISMATCH}


class UsageError(Exception):
    pass


def _worst_exit(statuses) -> int:
    worst = "confirmed"
    for s in statuses:
        if _STATUS_RANK[s] > _STATUS_RANK[worst]:
            worst = s
    return _STATUS_EXIT[worst]


def _spec_from(args) -> AlgebraSpec:
    try:
        return AlgebraSpec(args.family, rat(args.a), rat(args.b))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc))


def _window_from(args) -> Window:
    try:
        return Window(args.window, args.margin)
    except ValueError as exc:
        raise UsageError(str(exc))


def _delta_from(args) -> DeltaParam:
    try:
        return DeltaParam(rat(args.delta))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc))


def _degrees_from(args, window: Window) -> list[int]:
    if args.degrees is not None:
        try:
            degs = [int(tok) for tok in args.degrees.split(",")]
        except ValueError as exc:
            raise UsageError(f"bad --degrees: {exc}")
    else:
        degs = [args.degree]
    for d in degs:
        if abs(d) > window.core_bound:
            raise UsageError(
                f"degree {d} out of certified range |n| <= {window.core_bound} "
                f"for window N={window.N}, M={window.M}"
            )
    return degs


def _emit(payload: dict, args) -> None:
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = _to_markdown(payload)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _to_markdown(payload: dict, level: int = 1) -> str:
    lines = []

    def walk(obj, indent=0):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k in sorted(obj):
                v = obj[k]
                if isinstance(v, (dict, list)):
                    lines.append(f"{pad}- **{k}**:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}- **{k}**: {v}")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)):
                    lines.append(f"{pad}-")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}- {v}")

    walk(payload)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_bracket(args) -> int:
    spec = _spec_from(args)
    try:
        vecs = [parse_basis_vector(tok) for tok in args.vectors]
    except ValueError as exc:
        raise UsageError(str(exc))
    for v in vecs:
        if not spec.admissible(v):
            raise UsageError(f"{v.text()} is not a basis vector of {spec.label()}")
    if len(vecs) != 2:
        raise UsageError("bracket takes exactly two basis vectors")
    result = bracket(spec, Element.basis(vecs[0]), Element.basis(vecs[1]))
    sys.stdout.write(result.text() + "\n")
    return EXIT_OK


def cmd_jacobi(args) -> int:
    spec = _spec_from(args)
    window = _window_from(args)
    report = jacobi_check(spec, window)
    payload = {
        "kind": "jacobi",
        "family": spec.family,
        "a": rat_str(spec.a),
        "b": rat_str(spec.b),
        "window": {"N": window.N, "M": window.M},
        "passed": report.passed,
        "triples_checked": report.triples_checked,
    }
    _emit(payload, args)
    return EXIT_OK if report.passed else EXIT_MISMATCH


def _run_case(kind: str, spec, delta, degree, window) -> CaseResult:
    if kind == "derivation":
        return verify_derivation_case(spec, delta, degree, window)
    return verify_biderivation_case(spec, delta, degree, window)


def cmd_derive(args) -> int:
    return _cmd_solve(args, "derivation")


def cmd_bider(args) -> int:
    return _cmd_solve(args, "biderivation")


def _cmd_solve(args, kind: str) -> int:
    spec = _spec_from(args)
    window = _window_from(args)
    delta = _delta_from(args)
    degrees = _degrees_from(args, window)
    results = [_run_case(kind, spec, delta, d, window) for d in degrees]
    payload = {"kind": kind, "cases": [r.to_jsonable() for r in results]}
    _emit(payload, args)
    return _worst_exit(r.status for r in results)


def _load_sweep(args) -> dict:
    if args.sweep:
        try:
            with open(args.sweep) as fh:
                return json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read sweep file: {exc}")
    ref = resources.files("liebider").joinpath("data/classify_sweep.json")
    return json.loads(ref.read_text())


def _entry_spec(entry) -> AlgebraSpec:
    return AlgebraSpec(entry["family"], rat(entry.get("a", 0)), rat(entry.get("b", 0)))


def _entry_window(entry) -> Window:
    w = entry.get("window", {})
    return Window(w.get("N", 12), w.get("M", 4))


def cmd_classify(args) -> int:
    sweep = _load_sweep(args)
    results = []
    for section, kind in (("biderivations", "biderivation"), ("derivations", "derivation")):
        for entry in sweep.get(section, []):
            spec = _entry_spec(entry)
            window = _entry_window(entry)
            delta = DeltaParam(rat(entry["delta"]))
            for degree in entry["degrees"]:
                results.append(_run_case(kind, spec, delta, degree, window))
    payload = {
        "kind": "classification-sweep",
        "cases": [r.to_jsonable() for r in results],
        "summary": {
            "confirmed": sum(r.status == "confirmed" for r in results),
            "inconclusive": sum(r.status == "inconclusive" for r in results),
            "mismatch": sum(r.status == "mismatch" for r in results),
        },
    }
    _emit(payload, args)
    return _worst_exit(r.status for r in results)


def cmd_commuting(args) -> int:
    if args.sweep or not args.family:
        sweep = _load_sweep(args)
        entries = sweep.get("commuting", [])
        results = []
        for entry in entries:
            spec = _entry_spec(entry)
            window = _entry_window(entry)
            results.append(apps.verify_commuting_case(spec, window))
        payload = {"kind": "commuting-sweep", "cases": [r.to_jsonable() for r in results]}
        _emit(payload, args)
        return _worst_exit(r.status for r in results)
    spec = _spec_from(args)
    window = _window_from(args)
    result = apps.verify_commuting_case(spec, window)
    _emit(result.to_jsonable(), args)
    return _STATUS_EXIT[result.status]


def _product_from_case(spec: AlgebraSpec, case: dict) -> apps.BilinearProduct:
    form = case["form"]
    if form == "witt-scaling":
        return apps.product_witt_scaling(spec, case.get("lambda", {}))
    if form == "ll-to-i":
        return apps.product_ll_to_i(spec, case.get("lambda", {}))
    if form == "ll-to-i-weighted":
        return apps.product_ll_to_i_weighted(spec, case.get("lambda", {}))
    if form == "w-minus1":
        return apps.product_w_minus1(spec, case.get("lambda", {}), case.get("mu", {}))
    if form == "central-square":
        c = case.get("coefficients", [1, 1, 1])
        return apps.product_central_square(spec, c[0], c[1], c[2])
    if form == "zero":
        return apps.BilinearProduct("zero", spec, lambda u, v: Element())
    raise UsageError(f"unknown product form {form!r}")


def cmd_postlie(args) -> int:
    sweep = _load_sweep(args)
    cases = []
    statuses = []
    for case in sweep.get("postlie", []):
        spec = _entry_spec(case)
        window = _entry_window(case)
        prod = _product_from_case(spec, case)
        reports = apps.post_lie_check(spec, prod, window)
        passed = apps.all_passed(reports)
        expected = case.get("expect", "pass") == "pass"
        status = "confirmed" if passed == expected else "mismatch"
        statuses.append(status)
        cases.append({
            "family": spec.family,
            "a": rat_str(spec.a),
            "b": rat_str(spec.b),
            "form": case["form"],
            "passed": passed,
            "expected_to_pass": expected,
            "status": status,
            "axioms": [r.to_jsonable() for r in reports],
        })
    payload = {"kind": "post-lie-suite", "cases": cases}
    _emit(payload, args)
    return _worst_exit(statuses) if statuses else EXIT_OK


def cmd_tpoisson(args) -> int:
    sweep = _load_sweep(args)
    cases = []
    statuses = []
    for case in sweep.get("tpoisson", []):
        spec = _entry_spec(case)
        window = _entry_window(case)
        delta = DeltaParam(rat(case["delta"]))
        prod = _product_from_case(spec, case)
        reports = apps.transposed_poisson_check(spec, prod, delta, window)
        passed = apps.all_passed(reports)
        expected = case.get("expect", "pass") == "pass"
        status = "confirmed" if passed == expected else "mismatch"
        statuses.append(status)
        cases.append({
            "family": spec.family,
            "a": rat_str(spec.a),
            "b": rat_str(spec.b),
            "delta": rat_str(delta.delta),
            "form": case["form"],
            "passed": passed,
            "expected_to_pass": expected,
            "status": status,
            "axioms": [r.to_jsonable() for r in reports],
        })
    payload = {"kind": "transposed-poisson-suite", "cases": cases}
    _emit(payload, args)
    return _worst_exit(statuses) if statuses else EXIT_OK


def cmd_lift(args) -> int:
    spec = _spec_from(args)
    if spec.family not in ("witt", "w"):
        raise UsageError("lift takes the quotient family (witt or w)")
    window = _window_from(args)
    delta = _delta_from(args)
    degrees = _degrees_from(args, window)
    degree = degrees[0]
    entries = dict(biderivation_entries(spec, delta, degree))
    if args.generator not in entries:
        raise UsageError(
            f"unknown generator {args.generator!r}; available: {sorted(entries)}"
        )
    ext = spec.extension()
    f = HomBilinearMap(spec, degree)
    basis = sorted(spec.basis_vectors(window.N), key=lambda v: v.sort_key())
    fn = entries[args.generator]
    for u in basis:
        for v in basis:
            f.table[(u, v)] = fn(u, v)
    result = lift_check(f, ext, delta, window)
    payload = {
        "kind": "lift",
        "family": spec.family,
        "a": rat_str(spec.a),
        "b": rat_str(spec.b),
        "delta": rat_str(delta.delta),
        "degree": degree,
        "generator": args.generator,
        "extension": ext.family,
        "feasible": result.feasible,
    }
    if result.feasible:
        payload["correction_kernel_dimension"] = result.kernel.dimension
    _emit(payload, args)
    return EXIT_OK


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(p, window=True, delta=False, degree=False):
    p.add_argument("--family", choices=("witt", "virasoro", "w", "wtilde"))
    p.add_argument("--a", default="0")
    p.add_argument("--b", default="0")
    if delta:
        p.add_argument("--delta", default="1")
    if degree:
        p.add_argument("--degree", type=int, default=0)
        p.add_argument("--degrees", default=None,
                       help="comma-separated list, e.g. -2,-1,0,1,2")
    if window:
        p.add_argument("--window", type=int, default=12)
        p.add_argument("--margin", type=int, default=4)
    p.add_argument("--format", choices=("json", "md"), default="json")
    p.add_argument("--out", default=None)


def build_parser() -> _Parser:
    parser = _Parser(prog="liebider")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", description="Exact bracket of two basis vectors.")
    _add_common(p, window=False)
    p.add_argument("vectors", nargs="*")
    p.set_defaults(fn=cmd_bracket, require_family=True)

    p = sub.add_parser("jacobi", description="Antisymmetry and Jacobi identity on window triples.")
    _add_common(p)
    p.set_defaults(fn=cmd_jacobi, require_family=True)

    p = sub.add_parser("derive", description="Solve and classify a homogeneous derivation space.")
    _add_common(p, delta=True, degree=True)
    p.set_defaults(fn=cmd_derive, require_family=True)

    p = sub.add_parser("bider", description="Solve and classify a homogeneous biderivation space.")
    _add_common(p, delta=True, degree=True)
    p.set_defaults(fn=cmd_bider, require_family=True)

    p = sub.add_parser("classify", description="Run a classification sweep from a fixture file.")
    _add_common(p, window=False)
    p.add_argument("--sweep", default=None)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("commuting", description="Solve the commuting linear map space.")
    _add_common(p)
    p.add_argument("--sweep", default=None)
    p.set_defaults(fn=cmd_commuting)

    p = sub.add_parser("postlie", description="Check commutative post-Lie axioms for fixture products.")
    _add_common(p, window=False)
    p.add_argument("--sweep", default=None)
    p.set_defaults(fn=cmd_postlie)

    p = sub.add_parser("tpoisson", description="Check transposed delta-Poisson axioms for fixture products.")
    _add_common(p, window=False)
    p.add_argument("--sweep", default=None)
    p.set_defaults(fn=cmd_tpoisson)

    p = sub.add_parser("lift", description="Feasibility of lifting a catalog map to the central extension.")
    _add_common(p, delta=True, degree=True)
    p.add_argument("--generator", required=True)
    p.set_defaults(fn=cmd_lift, require_family=True)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "require_family", False) and not args.family:
            raise UsageError("--family is required for this command")
        return args.fn(args)
    except UsageError as exc:
        sys.stderr.write(f"liebider: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
