"""Command-line entry point: classify, intersect, kulikov-verify, fiber-census.

Exit codes: 0 when every check passes, 1 when a check fails (or two curves
share a component), 2 for usage, input and I/O errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import reports
from .blowup_pic import InvalidSurfaceSpec, SurfaceSpec, classify, spec_from_curves
from .kulikov_verify import (Check, GenericConicNotFound, degree_census,
                             pick_generic_conic, ramification_cubic, standard_net,
                             verify_all)
from .parsing import format_polynomial, parse_polynomial
from .plane_curves import (CommonComponentError, NoShearFound, PlaneCurve,
                           ProjPoint, intersection_cycle)
from .seeding import MAX_SEED

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    """Bad input that should end the run with exit code 2."""


def _seed(text: str) -> int:
    if not text.isdigit():
        raise argparse.ArgumentTypeError(f"seed must be a nonnegative decimal integer, got {text!r}")
    value = int(text)
    if value > MAX_SEED:
        raise argparse.ArgumentTypeError(f"seed must be at most {MAX_SEED}")
    return value


def _point(text: str) -> ProjPoint:
    try:
        coords = tuple(int(part) for part in text.split(","))
        return ProjPoint(coords)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"point must be three integers 'a,b,c': {exc}") from None


def read_curve(path: str) -> PlaneCurve:
    """Load a curve file: one polynomial expression, '#' starts a comment."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        return PlaneCurve.from_poly(parse_polynomial(text))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(doc: dict, out=None) -> None:
    (out or sys.stdout).write(reports.dumps(doc))


def _open_out(path: str):
    try:
        return open(path, "w", encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None


def _exit_for(doc: dict) -> int:
    return EXIT_OK if doc["overall"] == "pass" else EXIT_FAIL


def cmd_classify(args) -> int:
    numeric = (args.d1, args.m1, args.d2, args.m2)
    files = (args.curve1, args.curve2, args.point)
    if any(v is not None for v in numeric) and any(v is not None for v in files):
        raise InputError("give either --d1/--m1/--d2/--m2 or --curve1/--curve2/--point, not both")
    try:
        if all(v is not None for v in numeric):
            spec = SurfaceSpec(*numeric)
            echo = f"classify --d1 {args.d1} --m1 {args.m1} --d2 {args.d2} --m2 {args.m2}"
        elif all(v is not None for v in files):
            c1, c2 = read_curve(args.curve1), read_curve(args.curve2)
            spec = spec_from_curves(c1, c2, args.point)
            echo = (f"classify\ncurve1: {format_polynomial(c1.poly)}\n"
                    f"curve2: {format_polynomial(c2.poly)}\npoint: {args.point}")
        else:
            raise InputError("classify needs all of --d1 --m1 --d2 --m2, or --curve1 --curve2 --point")
    except InvalidSurfaceSpec as exc:
        raise InputError(str(exc)) from None
    rep = classify(spec)
    result = reports.classification_json(rep)
    check = Check("classification", True, result)
    _emit(reports.envelope("classify", 0, [check], echo, result))
    return EXIT_OK


def cmd_intersect(args) -> int:
    f, g = read_curve(args.curve1), read_curve(args.curve2)
    echo = (f"intersect --seed {args.seed}\ncurve1: {format_polynomial(f.poly)}\n"
            f"curve2: {format_polynomial(g.poly)}")
    try:
        cycle = intersection_cycle(f, g, args.seed)
    except CommonComponentError as exc:
        print(f"kulikov: {exc}", file=sys.stderr)
        check = Check("finite_intersection", False, {"error": str(exc)})
        _emit(reports.envelope("intersect", args.seed, [check], echo))
        return EXIT_FAIL
    except NoShearFound as exc:
        raise InputError(str(exc)) from None
    result = reports.cycle_json(cycle)
    bezout = f.degree * g.degree
    check = Check("bezout_total", cycle.total == bezout, {"total": cycle.total, "expected": bezout})
    doc = reports.envelope("intersect", args.seed, [check], echo, result)
    _emit(doc)
    return _exit_for(doc)


def cmd_kulikov_verify(args) -> int:
    if args.samples < 1:
        raise InputError("--samples must be positive")
    # open the output first so an unwritable path fails before the long run
    out = _open_out(args.out) if args.out is not None else None
    try:
        cert = verify_all(seed=args.seed, n_samples=args.samples)
    except BaseException:
        if out is not None:
            out.close()
        raise
    echo = (f"kulikov-verify --seed {args.seed} --samples {args.samples}\n"
            + "\n".join(f"q{i}: {q}" for i, q in enumerate(cert.metadata["net"], 1))
            + f"\nR: {cert.metadata['ramification_cubic']}")
    doc = reports.certificate_json(cert, echo)
    if out is None:
        _emit(doc)
    else:
        with out:
            _emit(doc, out)
        for c in cert.checks:
            print(f"{'PASS' if c.passed else 'FAIL'} {c.name}", file=sys.stderr)
    return _exit_for(doc)


def cmd_fiber_census(args) -> int:
    if args.samples < 1:
        raise InputError("--samples must be positive")
    net, r_form = standard_net(), ramification_cubic()
    try:
        conic = pick_generic_conic(net, args.seed, r_form)
    except GenericConicNotFound as exc:
        check = Check("degree_census", False, {"error": str(exc)})
        doc = reports.envelope("fiber-census", args.seed, [check], "")
        _emit(doc)
        return EXIT_FAIL
    census = degree_census(net, args.samples, args.seed, conic.conic.poly, r_form)
    echo = (f"fiber-census --seed {args.seed} --samples {args.samples}\n"
            f"conic: {format_polynomial(conic.conic.poly)}")
    check = Check("degree_census", census.passed,
                  {"histogram": {str(k): v for k, v in census.histogram.items()},
                   "failures": census.failures})
    doc = reports.envelope("fiber-census", args.seed, [check], echo, census.to_json())
    _emit(doc)
    return _exit_for(doc)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kulikov", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {reports.__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify S(C1, C2, P) from numeric data or curve files")
    for flag in ("--d1", "--m1", "--d2", "--m2"):
        p.add_argument(flag, type=int)
    p.add_argument("--curve1")
    p.add_argument("--curve2")
    p.add_argument("--point", type=_point, help="integer triple a,b,c")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("intersect", help="intersection cycle of two curve files")
    p.add_argument("curve1")
    p.add_argument("curve2")
    p.add_argument("--seed", type=_seed, default=0)
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("kulikov-verify", help="run the full certificate for the standard net")
    p.add_argument("--seed", type=_seed, default=42)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--out", help="write the certificate here instead of stdout")
    p.set_defaults(func=cmd_kulikov_verify)

    p = sub.add_parser("fiber-census", help="fiber sizes over sampled targets")
    p.add_argument("--seed", type=_seed, default=42)
    p.add_argument("--samples", type=int, default=50)
    p.set_defaults(func=cmd_fiber_census)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"kulikov: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
