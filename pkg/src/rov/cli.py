"""Command-line front end.

Exit codes: 0 success, 1 a certification check failed, 2 invalid input
(the error class name is printed on stderr), 3 quadrature did not converge.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings

import numpy as np

from . import io as rio
from . import region, verify
from .errors import InvalidA, NoConvergence, RelaxedClassWarning, RovError, ValidationError
from .params import ClassBParams, ClassPParams
from .presets import all_presets, get_preset
from .quad import DEFAULT_TOL, PathSpec

EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_NO_CONVERGENCE = 3


class UsageError(ValidationError):
    pass


def parse_complex(text: str) -> complex:
    """``re,im`` (or a bare real) -> complex."""
    parts = [s.strip() for s in text.split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}")


def parse_path(text: str) -> list[complex]:
    return [parse_complex(chunk) for chunk in text.split(";") if chunk.strip()]


def _tolerance(args) -> float:
    if args.tol is not None:
        return args.tol
    env = os.environ.get("ROV_TOL")
    return float(env) if env else DEFAULT_TOL


def _overrides(args) -> dict:
    out = {}
    for flag, attr in (("z0", "z0"), ("alpha", "alpha"), ("m", "m"), ("lam", "lam")):
        v = getattr(args, flag, None)
        if v is not None:
            out[attr] = v
    if getattr(args, "beta", None) is not None:
        out["beta"] = args.beta
    return out


def build_params(args, side: str | None = None):
    """Preset of ``--figure`` (default 1) for the chosen class, with flag overrides, validated.

    An unmodified preset is validated with relaxed class bounds (one caption
    lies outside its class); anything user-modified is strict unless
    ``--relax-univalence`` is given.
    """
    side = (side or args.cls or "b").upper()
    preset = get_preset(args.figure or 1, side)
    changes = _overrides(args)
    if "beta" in changes and side == "P":
        raise UsageError("--beta applies to class b only")
    p = preset.params.replace(**changes)
    relax = args.relax_univalence or (not changes and not preset.in_class)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        region.validate(p, relax=relax)
    for w in caught:
        if issubclass(w.category, RelaxedClassWarning):
            print(f"RelaxedClassWarning: {preset.name}: {w.message}", file=sys.stderr)
    return p


def _label(p) -> str:
    return "∂V1(z0,λ)" if isinstance(p, ClassBParams) else "∂V2(z0,λ)"


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)


# -- subcommands -------------------------------------------------------------


def cmd_boundary(args) -> int:
    p = build_params(args)
    curve = region.boundary_curve(p, args.samples, _tolerance(args))
    for note in curve.warnings:
        print(note, file=sys.stderr)
    _write(args.out, rio.curve_to_csv(curve))
    if args.svg:
        _write(args.svg, rio.curves_to_svg([(curve, region.interior_point(p), _label(p))]))
    return 0


def cmd_figure(args) -> int:
    args.figure = args.n
    get_preset(args.n, "B")  # UnknownPreset for n outside 1..5
    tol = _tolerance(args)
    panels, summary = [], []
    for side in ("B", "P"):
        p = build_params(args, side)
        curve = region.boundary_curve(p, args.samples, tol)
        panels.append((curve, region.interior_point(p), _label(p)))
        conv = verify.check_convex(verify.Polygon.from_curve(curve))
        summary.append(f"figure{args.n}-{side}: {len(curve)} samples, diameter "
                       f"{rio.fmt(curve.diameter)}, convex={'pass' if conv.passed else 'FAIL'}")
        if args.out:
            _write(f"{args.out}figure{args.n}_{side.lower()}.csv", rio.curve_to_csv(curve))
    _write(args.svg or f"figure{args.n}.svg", rio.curves_to_svg(panels))
    print("\n".join(summary))
    return 0


def _interior_consistency(p, scale: float, tol: float) -> verify.CertReport:
    gap = abs(region.interior_point(p) - region.sample_derivative(p, 0, tol))
    return verify.CertReport("interior_consistency", gap <= 1e-9 * scale, gap,
                             [region.interior_point(p)], {"scale": scale})


def _singleton_check(p, curve) -> verify.CertReport:
    value = region.singleton_value(p)
    gaps = np.abs(curve.values - value)
    k = int(np.argmax(gaps))
    return verify.CertReport("singleton", bool(gaps[k] <= 1e-9 * curve.scale), float(gaps[k]),
                             [complex(curve.values[k])], {"value": value})


def run_suite(p, suite: str, samples: int, tol: float, inflate_m: float = 1.0) -> list:
    reports = []
    curve = None
    if suite in ("geometry", "identities", "all"):
        curve = region.boundary_curve(p, samples, tol)
    if suite in ("geometry", "all"):
        if curve.singleton:
            # a one-point region has no polygon; check that every sample is that point
            reports.append(verify.check_bounded(curve))
            reports.append(_singleton_check(p, curve))
        else:
            reports += verify.geometry_battery(curve)
            reports.append(verify.containment_sweep(p, curve=curve))
            reports.append(verify.check_covering(curve, region.covering_disk(p, tol=tol)))
    if suite in ("identities", "all") and not region.is_singleton(p):
        reports.append(verify.check_extremal_identity(p))
        reports.append(_interior_consistency(p, curve.scale, tol))
        beta = p.beta if isinstance(p, ClassBParams) else None
        thetas = np.angle(verify.unimodular(16))
        # one report per family: the worst theta (smallest margin)
        g_reps = [verify.check_g_real_part(p, th) for th in thetas]
        root_reps = [verify.check_root_locations(th, p.lam, beta) for th in thetas]
        reports.append(min(g_reps, key=lambda r: r.margin))
        reports.append(min(root_reps, key=lambda r: r.margin))
    if suite in ("membership", "all"):
        built = p.replace(m=p.m * inflate_m) if inflate_m != 1.0 else p
        reports.append(verify.check_class_membership(built, verify.unimodular(16), bound_m=p.m))
        if isinstance(p, ClassPParams) and p.lam == 0:
            reports.append(verify.check_sup_bound_p(p))
    return reports


def cmd_check(args) -> int:
    tol = _tolerance(args)
    modified = bool(_overrides(args))
    if args.figure:
        figures = [args.figure]
    elif modified:
        figures = [1]  # overrides describe one parameter set; figure 1 fills the rest
    else:
        figures = sorted({pr.figure_id for pr in all_presets()})
    sides = [args.cls.upper()] if args.cls else ["B", "P"]
    checks, echo = [], []
    for fig in figures:
        for side in sides:
            args.figure = fig
            p = build_params(args, side)
            name = f"{'custom' if modified else f'figure{fig}'}-{side}"
            echo.append({"name": name, **p.as_dict()})
            for rep in run_suite(p, args.suite, args.samples, tol, args.inflate_m):
                checks.append({"preset": name, **rep.to_json()})
    preset_echo = echo[0] if len(echo) == 1 else echo
    text = rio.report_json(preset_echo, checks)
    _write(args.json, text)
    failed = [c for c in checks if not c["pass"]]
    for c in failed:
        print(f"CheckFailed: {c['preset']} {c['name']} margin={c['margin']} "
              f"witness={c['witness']}", file=sys.stderr)
    return EXIT_CHECK_FAILED if failed else 0


def cmd_sample(args) -> int:
    if args.a is None:
        raise UsageError("--a re,im is required")
    if not abs(args.a) <= 1.0 + 1e-12:
        raise InvalidA(f"|a| = {abs(args.a)!r} exceeds 1")
    p = build_params(args)
    tol = _tolerance(args)
    w = complex(region.sample_derivative(p, args.a, tol))
    if region.is_singleton(p):
        verdict = "singleton"
    else:
        curve = region.boundary_curve(p, args.samples, tol)
        rep = verify.check_contains(verify.Polygon.from_curve(curve), w)
        if abs(abs(args.a) - 1.0) <= 1e-12:
            # unimodular a traces the boundary; the polygon check only reports distance
            verdict = "on-boundary"
        else:
            verdict = rep.details["status"]
    print(f"{rio.fmt(w.real)},{rio.fmt(w.imag)}")
    print(verdict)
    return 0


def cmd_disk(args) -> int:
    p = build_params(args)
    path = None
    if args.path:
        nodes = parse_path(args.path)
        if not nodes or nodes[0] != 0:
            nodes.insert(0, 0j)
        if nodes[-1] != complex(p.z0):
            nodes.append(complex(p.z0))
        path = PathSpec.polyline(nodes)
    disk = region.covering_disk(p, path, _tolerance(args))
    doc = {
        "center": [disk.center.real, disk.center.imag],
        "radius": disk.radius,
        "path": [[z.real, z.imag] for z in disk.path.nodes],
        "preset": p.as_dict(),
    }
    _write(args.json, json.dumps(doc, indent=2) + "\n")
    return 0


# -- parser ------------------------------------------------------------------


def _common(sp: argparse.ArgumentParser, *, figure: bool = True) -> None:
    sp.add_argument("--class", dest="cls", choices=["b", "p", "B", "P"], type=str)
    if figure:
        sp.add_argument("--figure", type=int, help="preset 1..5 supplying default parameters")
    sp.add_argument("--z0", type=parse_complex)
    sp.add_argument("--alpha", type=parse_complex)
    sp.add_argument("--beta", type=parse_complex)
    sp.add_argument("--lambda", dest="lam", type=parse_complex)
    sp.add_argument("--m", type=float)
    sp.add_argument("--samples", type=int, default=region.DEFAULT_SAMPLES)
    sp.add_argument("--tol", type=float, default=None,
                    help=f"quadrature tolerance (default $ROV_TOL or {DEFAULT_TOL:g})")
    sp.add_argument("--relax-univalence", action="store_true",
                    help="downgrade class-bound violations to warnings")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rov", description="Regions of variability of f'(z0).")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("boundary", help="sample the boundary curve to CSV (and SVG)")
    _common(sp)
    sp.add_argument("--out", help="CSV path (default stdout)")
    sp.add_argument("--svg")
    sp.set_defaults(func=cmd_boundary)

    sp = sub.add_parser("figure", help="both curves of a figure preset in one SVG")
    sp.add_argument("n", type=int)
    _common(sp, figure=False)
    sp.add_argument("--svg", help="SVG path (default figureN.svg)")
    sp.add_argument("--out", help="prefix for the two CSV files")
    sp.set_defaults(func=cmd_figure)

    sp = sub.add_parser("check", help="run a certification battery")
    _common(sp)
    sp.add_argument("--suite", choices=["geometry", "identities", "membership", "all"],
                    default="all")
    sp.add_argument("--json", help="report path (default stdout)")
    sp.add_argument("--inflate-m", type=float, default=1.0,
                    help="build extremal functions with M times this factor (corruption test)")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("sample", help="one extremal value f'_a(z0) and its location")
    _common(sp)
    sp.add_argument("--a", type=parse_complex)
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("disk", help="covering disk along a path")
    _common(sp)
    sp.add_argument("--path", help="polyline nodes re,im;re,im;... from 0 to z0")
    sp.add_argument("--json", help="output path (default stdout)")
    sp.set_defaults(func=cmd_disk)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except NoConvergence as exc:
        print(f"NoConvergence: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (RovError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
