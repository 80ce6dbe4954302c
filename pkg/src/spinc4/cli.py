"""Command-line front end: verification suites, immersion analysis, rational
curve classification, and Maslov windings.

Exit codes: 0 success, 1 mathematical failure or violated precondition,
2 usage or parse error.  All randomness flows from --seed, which is echoed in
every report; identical configurations produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .higgs import PlaneKind
from .immersion import (AnalysisOptions, ImmersionSpec, RankDeficientError,
                        SpecError, analyze, maslov_windings)
from .projective import (BasePointError, RationalCurve,
                         h_transversality_check, plucker_genus)
from .verify import SUITES, run_suites

EXIT_OK = 0
EXIT_MATH = 1
EXIT_USAGE = 2


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.strip().replace("i", "j"))
    except ValueError as exc:
        raise SpecError(f"bad complex literal {text!r}") from exc


def _parse_coeffs(text: str) -> tuple[complex, ...]:
    return tuple(_parse_complex(part) for part in text.split(","))


def _emit(doc: dict, rows: list[dict], fmt: str, out: str | None) -> None:
    if fmt == "json":
        payload = json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)
        payload = buf.getvalue()
    else:
        payload = _render_text(doc)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _render_text(doc: dict) -> str:
    lines = []

    def walk(prefix, val):
        if isinstance(val, dict):
            for k in sorted(val):
                walk(f"{prefix}{k}.", val[k])
        elif isinstance(val, list):
            for idx, item in enumerate(val):
                walk(f"{prefix}{idx}.", item)
        else:
            lines.append(f"{prefix[:-1]} = {val}")

    walk("", doc)
    return "\n".join(lines) + "\n"


def _common_options(args) -> AnalysisOptions:
    return AnalysisOptions(
        grid_n=args.grid,
        refine_depth=args.refine_depth,
        tol=args.tol if args.tol is not None else 1e-8,
        loop_points=args.loop_points,
        seed=args.seed,
    )


def cmd_verify(args) -> int:
    names = args.suite if args.suite else None
    if names:
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            print(f"unknown suite(s): {', '.join(unknown)}", file=sys.stderr)
            return EXIT_USAGE
    try:
        results = run_suites(seed=args.seed, samples=args.samples,
                             tol=args.tol, names=names)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    doc = {
        "schema_version": 1,
        "seed": args.seed,
        "samples": args.samples,
        "tol_override": args.tol,
        "suites": [{"name": r.name, "max_residual": r.max_residual,
                    "tol": r.tol, "passed": r.passed, "samples": r.samples,
                    "detail": r.detail} for r in results],
        "all_passed": all(r.passed for r in results),
    }
    rows = [{"name": r.name, "max_residual": r.max_residual, "tol": r.tol,
             "passed": r.passed, "samples": r.samples} for r in results]
    if args.format == "text":
        payload = "\n".join(r.line() for r in results)
        payload += f"\nresult: {'PASS' if doc['all_passed'] else 'FAIL'} (seed={args.seed})\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(payload)
        else:
            sys.stdout.write(payload)
    else:
        _emit(doc, rows, args.format, args.out)
    return EXIT_OK if doc["all_passed"] else EXIT_MATH


def cmd_analyze(args) -> int:
    try:
        spec = ImmersionSpec.load(args.spec)
    except (SpecError, OSError) as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    options = _common_options(args)
    try:
        report = analyze(spec, options)
    except (RankDeficientError, ValueError) as exc:
        print(f"analysis failed: {exc}", file=sys.stderr)
        return EXIT_MATH
    doc = report.to_dict()
    rows = [r.to_dict() for r in report.records]
    flat_rows = [{
        "location_x": r["location"][0], "location_y": r["location"][1],
        "chart": r["chart"], "kind": r["kind"], "index": r["index"],
        "loop_radius": r["loop_radius"],
        "residual_phi": r["residuals"]["phi"],
        "residual_chi": r["residuals"]["chi"],
        "residual_psi": r["residuals"]["psi"],
    } for r in rows]
    _emit(doc, flat_rows, args.format, args.out)
    if report.immersion_defects:
        return EXIT_MATH
    return EXIT_OK


def cmd_curve(args) -> int:
    try:
        curve = RationalCurve(_parse_coeffs(args.p), _parse_coeffs(args.q),
                              _parse_coeffs(args.r))
        curve.validate()
    except (SpecError, BasePointError, ValueError) as exc:
        print(f"curve error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    crossings = h_transversality_check(curve)
    transverse = all(c.transverse for c in crossings)
    doc = {
        "schema_version": 1,
        "degree": curve.degree,
        "delta": args.delta,
        "crossings": [{
            "s": str(c.s), "t": str(c.t), "multiplicity": c.multiplicity,
            "transverse": c.transverse, "dr_along_curve": c.dr_along_curve,
        } for c in crossings],
        "transverse": transverse,
        "seed": args.seed,
    }
    rows = doc["crossings"]
    if not transverse:
        doc["classification"] = "refused: non-transverse H-crossing"
        _emit(doc, rows, args.format, args.out)
        print("classification refused: non-transverse H-crossing", file=sys.stderr)
        return EXIT_MATH
    genus = plucker_genus(curve.degree, args.delta)
    doc["genus"] = genus if genus is not None else "invalid"
    # pseudoholomorphicity sample verdict through the S4 pipeline
    spec = ImmersionSpec.from_dict({
        "domain": {"type": "sphere"},
        "target": {"type": "S4"},
        "map": {"curve": {
            "p": [[c.real, c.imag] for c in curve.p],
            "q": [[c.real, c.imag] for c in curve.q],
            "r": [[c.real, c.imag] for c in curve.r],
        }},
    })
    options = _common_options(args)
    report = analyze(spec, options)
    doc["pseudoholomorphic"] = report.pseudoholomorphic
    doc["max_chi_residual"] = report.grid_stats["max_ratio_chi"]
    doc["classification"] = (
        f"pseudoholomorphic sphere of degree {curve.degree}, genus {doc['genus']}"
        if report.pseudoholomorphic and genus is not None else "irregular")
    _emit(doc, rows, args.format, args.out)
    if genus is None or not report.pseudoholomorphic:
        return EXIT_MATH
    return EXIT_OK


def _parse_loop(text: str) -> dict:
    parts = text.split(":")
    kind = parts[0]
    if kind in ("theta", "phi"):
        fixed = float(parts[1]) if len(parts) > 1 else 0.0
        return {"kind": kind, "fixed": fixed}
    if kind == "circle":
        if len(parts) != 2:
            raise SpecError("circle loop syntax: circle:cx,cy,r")
        cx, cy, r = (float(v) for v in parts[1].split(","))
        return {"kind": "circle", "center": (cx, cy), "radius": r}
    raise SpecError(f"unknown loop kind {kind!r}")


def cmd_maslov(args) -> int:
    try:
        spec = ImmersionSpec.load(args.spec)
        loops = [_parse_loop(s) for s in (args.loop or [])]
    except (SpecError, OSError, ValueError) as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not loops:
        if spec.domain == "torus":
            loops = [{"kind": "theta", "fixed": 0.0}, {"kind": "phi", "fixed": 0.0}]
        else:
            print("no loops given (use --loop)", file=sys.stderr)
            return EXIT_USAGE
    options = _common_options(args)
    try:
        report = analyze(spec, options)
        if not report.totally_real:
            print("precondition failed: the immersion is not totally real",
                  file=sys.stderr)
            return EXIT_MATH
        windings, cross = maslov_windings(spec, loops, options)
    except (RankDeficientError, ValueError) as exc:
        print(f"maslov computation failed: {exc}", file=sys.stderr)
        return EXIT_MATH
    doc = {
        "schema_version": 1,
        "spec": spec.describe(),
        "loops": loops,
        "windings": windings,
        "wedge_crosscheck_residual": cross,
        "seed": args.seed,
    }
    rows = [{"loop": json.dumps(l), "winding": w} for l, w in zip(loops, windings)]
    _emit(doc, rows, args.format, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinc4",
        description="Quaternionic spin^c(4) machinery: verify identities, "
                    "analyze immersions, classify rational-curve spheres.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=10_000)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--grid", type=int, default=64)
        p.add_argument("--refine-depth", type=int, default=20)
        p.add_argument("--loop-points", type=int, default=1024)
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="run the named invariant suites")
    common(p)
    p.add_argument("--suite", action="append",
                   help="run only this suite (repeatable)")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("analyze", help="analyze an immersion spec file")
    common(p)
    p.add_argument("spec", help="path to a JSON immersion spec")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("curve", help="classify a rational curve in CP^2 -> S^4")
    common(p)
    p.add_argument("--p", required=True, help="comma list of coefficients (a+bi)")
    p.add_argument("--q", required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--delta", type=int, default=0, help="number of nodes")
    p.set_defaults(fn=cmd_curve)

    p = sub.add_parser("maslov", help="Maslov windings of a totally real spec")
    common(p)
    p.add_argument("spec", help="path to a JSON immersion spec")
    p.add_argument("--loop", action="append",
                   help="theta[:fixed] | phi[:fixed] | circle:cx,cy,r")
    p.set_defaults(fn=cmd_maslov)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except BrokenPipeError:  # pragma: no cover
        return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
