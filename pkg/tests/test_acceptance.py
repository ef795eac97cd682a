"""Acceptance criteria AC-1 .. AC-10.

Each test records one PASS/FAIL line in ``RESULTS``; conftest prints them
at the end of the session.  The figure-2 class-B caption has |beta| > 1,
so AC-5, AC-6 and AC-7 fail on that preset; those three are strict xfails
(they turn into errors if they ever start passing).
"""

import math
import time

import numpy as np
import pytest

from rov import kernel, region, verify
from rov.params import ClassBParams, ClassPParams
from rov.presets import all_presets
from rov.quad import integrate_segment, oracle_integrate

RESULTS: dict[str, str] = {}

PRESETS = all_presets()
OUT_OF_CLASS = "figure2-B caption has |beta| > 1 (outside the class); see notes/decisions.md"


def record(tag: str, ok: bool, detail: str) -> bool:
    RESULTS[tag] = f"{tag} {'PASS' if ok else 'FAIL'}: {detail}"
    print(RESULTS[tag])
    return ok


def _curves(n):
    return {pr.name: region.boundary_curve(pr.params, n) for pr in PRESETS}


@pytest.fixture(scope="module")
def curves_1024():
    start = time.perf_counter()
    curves = _curves(1024)
    return curves, time.perf_counter() - start


def _f2(p):
    return kernel.integrand_b if isinstance(p, ClassBParams) else kernel.integrand_p


def test_ac1_singleton():
    start = time.perf_counter()
    p = ClassPParams(alpha=1.0, m=0.5, lam=1.0, z0=0.5)
    curve = region.boundary_curve(p, 512)
    target = 1.6931471805599453
    err = float(np.max(np.abs(curve.values - target)))
    same = abs(region.sample_derivative(p, 1.0) - region.singleton_value(p))
    elapsed = time.perf_counter() - start
    ok = len(curve) == 512 and err <= 1e-9 and same <= 1e-9 and elapsed < 1.0
    assert record("AC-1", ok, f"max|w-(1+log 2)|={err:.2e}, |sample-singleton|={same:.2e}, "
                  f"{elapsed:.3f}s")


def test_ac2_figure_battery(curves_1024):
    curves, build = curves_1024
    start = time.perf_counter()
    worst_convex, worst_closure, simple_ok = math.inf, 0.0, True
    bad = []
    for name, curve in curves.items():
        poly = verify.Polygon.from_curve(curve)
        conv = verify.check_convex(poly, 1e-9)
        simp = verify.check_simple(poly)
        clos = verify.check_closure(curve, 1e-7)
        worst_convex = min(worst_convex, conv.details["normalized_margin"])
        worst_closure = max(worst_closure, clos.margin / curve.scale)
        simple_ok &= simp.passed
        if not (conv.passed and simp.passed and clos.passed):
            bad.append(name)
    elapsed = build + time.perf_counter() - start
    ok = not bad and elapsed < 10.0
    assert record("AC-2", ok, f"min cross/scale^2={worst_convex:.2e}, simple={simple_ok}, "
                  f"max closure/scale={worst_closure:.2e}, {elapsed:.2f}s, failing={bad}")


def test_ac3_interior_consistency(curves_1024):
    curves, _ = curves_1024
    worst = 0.0
    for pr in PRESETS:
        gap = abs(region.interior_point(pr.params) - region.sample_derivative(pr.params, 0))
        worst = max(worst, gap / curves[pr.name].scale)
    assert record("AC-3", worst <= 1e-9, f"max gap/scale={worst:.2e}")


def test_ac4_containment(curves_1024):
    curves, build = curves_1024
    start = time.perf_counter()
    inside, total, worst = 0, 0, math.inf
    for pr in PRESETS:
        curve = curves[pr.name]
        rep = verify.containment_sweep(pr.params, 500, 0.97, curve=curve)
        inside += rep.details["inside_count"]
        total += rep.details["points"]
        worst = min(worst, rep.margin / curve.scale)
    elapsed = build + time.perf_counter() - start
    ok = inside == total == 5000 and elapsed < 60.0
    assert record("AC-4", ok, f"{inside}/{total} strictly inside, min margin/scale={worst:.2e}, "
                  f"{elapsed:.2f}s")


def _per_preset(check):
    failing, worst = [], -math.inf
    for pr in PRESETS:
        ok, value = check(pr)
        if not ok:
            failing.append(pr.name)
        else:
            worst = max(worst, value)
    return failing, worst


@pytest.mark.xfail(strict=True, reason=OUT_OF_CLASS)
def test_ac5_covering_disk(curves_1024):
    curves, _ = curves_1024

    def check(pr):
        curve = curves[pr.name]
        rep = verify.check_covering(curve, region.covering_disk(pr.params), 1e-8)
        return rep.passed, rep.margin / curve.scale

    failing, worst = _per_preset(check)
    assert record("AC-5", not failing,
                  f"max excess/scale over passing presets={worst:.2e}, failing={failing}")


@pytest.mark.xfail(strict=True, reason=OUT_OF_CLASS)
def test_ac6_extremal_identity():
    def check(pr):
        rep = verify.check_extremal_identity(pr.params, 0.9, 32, tol=1e-8)
        return rep.passed, rep.margin

    failing, worst = _per_preset(check)
    assert record("AC-6", not failing,
                  f"max residual over passing presets={worst:.2e}, failing={failing}")


@pytest.mark.xfail(strict=True, reason=OUT_OF_CLASS)
def test_ac7_class_membership():
    a = verify.unimodular(16)

    def check(pr):
        rep = verify.check_class_membership(pr.params, a)
        # fraction of the bound used: |zf''|/M (class B) or -Re zf''/M (class P)
        used = rep.margin / pr.params.m
        return rep.passed, used if isinstance(pr.params, ClassBParams) else -used

    failing, worst = _per_preset(check)
    assert record("AC-7", not failing,
                  f"max fraction of M used over passing presets={worst:.6f}, failing={failing}")


def test_ac8_sup_bound():
    p = ClassPParams(alpha=1.0, m=0.5, lam=0.0, z0=0.5)
    rep = verify.check_sup_bound_p(p, n_a=32)
    ok = rep.margin <= 2.0 + 1e-9
    assert record("AC-8", ok, f"max (1-|z|^4)|H''|={rep.margin:.12f} (bound 2)")


def test_ac9_quadrature_cross_validation(curves_1024):
    curves, _ = curves_1024
    worst = 0.0
    for pr in PRESETS:
        p = pr.params
        f = lambda z, p=p: _f2(p)(z, 1.0, p)  # noqa: E731
        adaptive = integrate_segment(f, 0, p.z0).value
        ref = oracle_integrate(f, 0, p.z0, 4096)
        worst = max(worst, abs(adaptive - ref) / curves[pr.name].scale)
    assert record("AC-9", worst <= 1e-11, f"max |adaptive-oracle|/scale={worst:.2e}")


def test_ac10_root_locations():
    rng = np.random.default_rng(10)
    worst, worst_unit = math.inf, math.inf
    for _ in range(1000):
        th = rng.uniform(-math.pi, math.pi)
        lam = math.sqrt(rng.uniform()) * np.exp(2j * math.pi * rng.uniform())
        beta = math.sqrt(rng.uniform()) * np.exp(2j * math.pi * rng.uniform())
        worst = min(worst, verify.check_root_locations(th, lam, beta).margin)
        worst = min(worst, verify.check_root_locations(th, lam).margin)
        unit = np.exp(2j * math.pi * rng.uniform())
        rep = verify.check_root_locations(th, lam, unit, tol=1e-8)
        worst_unit = min(worst_unit, rep.margin)
    ok = worst >= 1 - 1e-10 and worst_unit >= 1 - 1e-8
    assert record("AC-10", ok, f"min modulus={worst:.12f}, min modulus with |beta|=1="
                  f"{worst_unit:.12f}")


# per-preset versions of AC-5..7: every in-class preset must pass outright

IN_CLASS = [pr for pr in PRESETS if pr.in_class]


@pytest.mark.parametrize("pr", IN_CLASS, ids=lambda pr: pr.name)
def test_covering_per_preset(pr, curves_1024):
    curve = curves_1024[0][pr.name]
    assert verify.check_covering(curve, region.covering_disk(pr.params), 1e-8).passed


@pytest.mark.parametrize("pr", IN_CLASS, ids=lambda pr: pr.name)
def test_identity_per_preset(pr):
    assert verify.check_extremal_identity(pr.params).passed


@pytest.mark.parametrize("pr", IN_CLASS, ids=lambda pr: pr.name)
def test_membership_per_preset(pr):
    assert verify.check_class_membership(pr.params, verify.unimodular(16)).passed
