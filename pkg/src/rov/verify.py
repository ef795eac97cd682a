"""Certification checks for sampled boundary curves and the analytic identities behind them.

Each check returns a :class:`CertReport`; nothing here raises on a failed
check.  Geometric checks work on the polygon through the curve samples,
so they certify the discretization, not the continuous curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernel
from .errors import DegeneratePolygon
from .params import ClassBParams, ClassPParams
from .region import (
    BoundaryCurve,
    boundary_curve,
    center_radius,
    diameter,
    disk_lattice,
    sample_derivative,
    second_derivative,
    signed_area,
)

ORIENT_EPS = 1e-14
IDENTITY_TOL = 1e-8
MEMBERSHIP_TOL = 1e-12
ROOT_TOL = 1e-10


@dataclass
class CertReport:
    name: str
    passed: bool
    margin: float
    witness: list[complex] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        w = self.witness[0] if self.witness else None
        out = {
            "name": self.name,
            "pass": bool(self.passed),
            "margin": _jsonable(self.margin),
            "witness": None if w is None else [float(w.real), float(w.imag)],
        }
        if self.details:
            out["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        return out


def _jsonable(v):
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.bool_):
        return bool(v)
    return v


# -- polygons ----------------------------------------------------------------


@dataclass(frozen=True)
class Polygon:
    """Closed polygon with counterclockwise vertices (the closing edge is implicit)."""

    vertices: np.ndarray
    closed: bool = True

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=complex).ravel()
        if len(v) < 3:
            raise DegeneratePolygon("a polygon needs at least 3 vertices")
        if not np.all(np.isfinite(v)):
            raise DegeneratePolygon("non-finite vertex")
        scale = diameter(v)
        gaps = np.abs(np.roll(v, -1) - v)
        if scale == 0 or np.any(gaps <= 1e-15 * scale):
            k = int(np.argmin(gaps))
            raise DegeneratePolygon(f"vertices {k} and {(k + 1) % len(v)} coincide")
        object.__setattr__(self, "vertices", v)

    @classmethod
    def from_points(cls, points) -> "Polygon":
        """Build a polygon, reversing the order if it is clockwise."""
        v = np.asarray(points, dtype=complex).ravel()
        if signed_area(v) < 0:
            v = v[::-1]
        return cls(v.copy())

    @classmethod
    def from_curve(cls, curve: BoundaryCurve) -> "Polygon":
        return cls(curve.vertices_ccw())

    @property
    def scale(self) -> float:
        return diameter(self.vertices)

    @property
    def edges(self) -> np.ndarray:
        return np.roll(self.vertices, -1) - self.vertices


def _cross(u, v):
    return u.real * v.imag - u.imag * v.real


def check_convex(poly: Polygon, tol_rel: float = 1e-9) -> CertReport:
    """Every turn is a left turn (up to -tol_rel * scale^2) and the boundary turns once."""
    e = poly.edges
    e_prev = np.roll(e, 1)
    cross = _cross(e_prev, e)  # turn at vertex k
    k = int(np.argmin(cross))
    margin = float(cross[k])
    scale2 = poly.scale**2
    turning = float(np.sum(np.angle(e / e_prev))) / (2 * math.pi)
    ok = margin >= -tol_rel * scale2 and abs(turning - 1.0) < 0.5
    return CertReport(
        "convex",
        ok,
        margin,
        [complex(poly.vertices[k])],
        {"scale": poly.scale, "turning_number": turning, "normalized_margin": margin / scale2},
    )


def _orient(a, b, c, eps):
    o = _cross(b - a, c - a)
    return np.where(np.abs(o) <= eps, 0.0, np.sign(o))


def _in_box(p, a, b, pad):
    return (
        (np.minimum(a.real, b.real) - pad <= p.real)
        & (p.real <= np.maximum(a.real, b.real) + pad)
        & (np.minimum(a.imag, b.imag) - pad <= p.imag)
        & (p.imag <= np.maximum(a.imag, b.imag) + pad)
    )


def check_simple(poly: Polygon) -> CertReport:
    """No two non-adjacent edges meet (orientation predicates with an epsilon band)."""
    v = poly.vertices
    n = len(v)
    scale = poly.scale
    eps = ORIENT_EPS * scale * scale
    pad = ORIENT_EPS * scale
    a_all, b_all = v, np.roll(v, -1)
    for i in range(n - 2):
        j = np.arange(i + 2, n if i > 0 else n - 1)
        if len(j) == 0:
            continue
        p1, p2 = a_all[i], b_all[i]
        q1, q2 = a_all[j], b_all[j]
        o1 = _orient(p1, p2, q1, eps)
        o2 = _orient(p1, p2, q2, eps)
        o3 = _orient(q1, q2, p1, eps)
        o4 = _orient(q1, q2, p2, eps)
        hit = (o1 * o2 < 0) & (o3 * o4 < 0)
        hit |= (o1 == 0) & _in_box(q1, p1, p2, pad)
        hit |= (o2 == 0) & _in_box(q2, p1, p2, pad)
        hit |= (o3 == 0) & _in_box(p1, q1, q2, pad)
        hit |= (o4 == 0) & _in_box(p2, q1, q2, pad)
        if np.any(hit):
            jj = int(j[np.argmax(hit)])
            return CertReport(
                "simple", False, 0.0, [complex(p1), complex(a_all[jj])], {"edges": [i, jj]}
            )
    return CertReport("simple", True, 0.0, [], {"edges_checked": n})


def _segment_distance(w, a, b):
    """Distance from each point in ``w`` (shape (m,)) to the polygon edges a->b (shape (n,))."""
    d = b - a
    dd = np.abs(d) ** 2
    t = np.real((w[:, None] - a[None, :]) * np.conj(d)[None, :]) / dd[None, :]
    t = np.clip(t, 0.0, 1.0)
    return np.min(np.abs(w[:, None] - (a[None, :] + t * d[None, :])), axis=1)


def winding_numbers(poly: Polygon, ws) -> np.ndarray:
    """Winding number of the polygon around each point, from summed signed angles."""
    ws = np.atleast_1d(np.asarray(ws, dtype=complex))
    v = poly.vertices
    rel = v[None, :] - ws[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        ang = np.angle(np.roll(rel, -1, axis=1) / rel)
    return np.sum(ang, axis=1) / (2 * math.pi)


def check_contains(poly: Polygon, w, *, boundary_rel: float = 1e-12) -> CertReport:
    """Is ``w`` strictly inside (winding number 1, away from the boundary)?

    ``w`` may be an array; the report then covers all points, the margin is
    the smallest boundary distance over the points and the witness is the
    worst offender.  ``details['status']`` is "inside", "outside" or
    "on-boundary" (for a single point).
    """
    ws = np.atleast_1d(np.asarray(w, dtype=complex))
    v = poly.vertices
    scale = poly.scale
    dist = _segment_distance(ws, v, np.roll(v, -1))
    wind = winding_numbers(poly, ws)
    on_boundary = dist <= boundary_rel * scale
    inside = (np.abs(wind - 1.0) < 0.5) & ~on_boundary
    signed = np.where(inside, dist, -dist)
    k = int(np.argmin(signed))
    if on_boundary[k]:
        status = "on-boundary"
    elif inside[k]:
        status = "inside"
    else:
        status = "outside"
    return CertReport(
        "contains",
        bool(np.all(inside)),
        float(signed[k]),
        [complex(ws[k])],
        {
            "status": status,
            "winding": float(wind[k]),
            "points": len(ws),
            "inside_count": int(np.sum(inside)),
            "scale": scale,
        },
    )


# -- analytic identities -----------------------------------------------------


def polar_grid(radius: float, n_radii: int, n_angles: int | None = None) -> np.ndarray:
    """Points r_k e^{i phi_j}, r_k = radius * k / n_radii (k = 1..n), phi_j = 2 pi j / n_angles."""
    n_angles = n_radii if n_angles is None else n_angles
    r = radius * np.arange(1, n_radii + 1) / n_radii
    phi = 2 * math.pi * np.arange(n_angles) / n_angles
    return (r[:, None] * np.exp(1j * phi)[None, :]).ravel()


def _g_prime(p, z, theta):
    if isinstance(p, ClassBParams):
        return kernel.g_integrand_b(z, theta, p.lam, p.beta)
    return kernel.g_integrand_p(z, theta, p.lam)


def check_extremal_identity(
    p,
    grid_radius: float = 0.9,
    n_grid: int = 32,
    thetas: Sequence[float] | None = None,
    tol: float = IDENTITY_TOL,
) -> CertReport:
    """f''_{e^{i theta}}(z) - c(z) = r(z) G'(z)/|G'(z)| on a polar grid.

    Checks the modulus residual ||f'' - c| - r| / r and the phase of
    (f'' - c) conj(G') / (r |G'|); both must be <= tol.  Uses closed forms
    only (no quadrature).  Points with r < 1e-300 are skipped and counted.
    """
    if thetas is None:
        thetas = -math.pi + 2 * math.pi * np.arange(1, 17) / 16
    z = polar_grid(grid_radius, n_grid)
    c, r = center_radius(p, z)
    keep = np.abs(r) >= 1e-300
    skipped = int(np.sum(~keep))
    z, c, r = z[keep], c[keep], r[keep]
    worst_mod, worst_phase = 0.0, 0.0
    witness = 0j
    for th in thetas:
        diff = second_derivative(p, z, np.exp(1j * th)) - c
        gp = _g_prime(p, z, th)
        mod_res = np.abs(np.abs(diff) - r) / np.abs(r)
        phase_res = np.abs(np.angle(diff * np.conj(gp) / (r * np.abs(gp))))
        k = int(np.argmax(np.maximum(mod_res, phase_res)))
        if max(mod_res[k], phase_res[k]) > max(worst_mod, worst_phase):
            witness = complex(z[k])
        worst_mod = max(worst_mod, float(np.max(mod_res)))
        worst_phase = max(worst_phase, float(np.max(phase_res)))
    margin = max(worst_mod, worst_phase)
    return CertReport(
        "extremal_identity",
        margin <= tol,
        margin,
        [witness],
        {
            "modulus_residual": worst_mod,
            "phase_residual": worst_phase,
            "skipped": skipped,
            "grid_points": len(z),
            "thetas": len(thetas),
        },
    )


def unimodular(n: int) -> np.ndarray:
    """n points e^{i theta_k} on the theta grid of the boundary curves."""
    return np.exp(1j * (-math.pi + 2 * math.pi * np.arange(1, n + 1) / n))


def check_class_membership(p, a, grid=None, *, bound_m: float | None = None) -> CertReport:
    """Does the extremal function with parameter(s) ``a`` satisfy the class inequality?

    Class B: max |z f''(z)| <= M (1 + 1e-12).  Class P: min Re z f''(z) > -M (1 + 1e-12).
    ``grid`` defaults to a polar grid of radius 0.995.  ``bound_m`` tests the
    function built from ``p`` against a different class bound M.
    """
    if grid is None:
        grid = polar_grid(0.995, 64, 128)
    z = np.asarray(grid, dtype=complex).ravel()
    a = np.atleast_1d(np.asarray(a, dtype=complex))
    if np.any(np.abs(a) > 1.0 + 1e-12):
        raise ValueError("membership needs |a| <= 1")
    m = float(p.m if bound_m is None else bound_m)
    zf = z[:, None] * second_derivative(p, z[:, None], a[None, :])
    if isinstance(p, ClassBParams):
        vals = np.abs(zf)
        idx = np.unravel_index(int(np.argmax(vals)), vals.shape)
        worst = float(vals[idx])
        ok = worst <= m * (1 + MEMBERSHIP_TOL)
        quantity = "max|z f''|"
    else:
        vals = np.real(zf)
        idx = np.unravel_index(int(np.argmin(vals)), vals.shape)
        worst = float(vals[idx])
        ok = worst > -m * (1 + MEMBERSHIP_TOL)
        quantity = "min Re z f''"
    return CertReport(
        "class_membership",
        bool(ok),
        worst,
        [complex(z[idx[0]])],
        {"quantity": quantity, "bound_m": m, "a": complex(a[idx[1]])},
    )


def check_sup_bound_p(p: ClassPParams, grid=None, n_a: int = 32) -> CertReport:
    """(1 - |z|^4) |H''_{a,0}(z)| <= 4M over the grid and n_a unimodular a (lambda = 0)."""
    if not isinstance(p, ClassPParams) or p.lam != 0:
        raise ValueError("the sup bound applies to class P with lambda = 0")
    if grid is None:
        grid = polar_grid(0.999, 200, 128)
    z = np.asarray(grid, dtype=complex).ravel()
    a = unimodular(n_a)
    vals = (1 - np.abs(z[:, None]) ** 4) * np.abs(kernel.integrand_p(z[:, None], a[None, :], p))
    idx = np.unravel_index(int(np.argmax(vals)), vals.shape)
    worst = float(vals[idx])
    return CertReport(
        "sup_bound_p",
        worst <= 4 * p.m * (1 + 1e-10),
        worst,
        [complex(z[idx[0]])],
        {"bound": 4 * p.m, "a": complex(a[idx[1]])},
    )


def check_root_locations(theta: float, lam: complex, beta: complex | None = None,
                         *, tol: float = ROOT_TOL) -> CertReport:
    """Zeros of the extremal denominator lie outside the open unit disk.

    Class B denominator when ``beta`` is given (a single linear root when
    beta = 0), class P denominator otherwise.
    """
    if beta is None:
        roots = kernel.roots_p(theta, lam)
        name = "root_locations_p"
    else:
        roots = kernel.roots_b(theta, lam, beta)
        name = "root_locations_b" if len(roots) == 2 else "root_locations_b_linear"
    mods = [abs(z) for z in roots]
    k = int(np.argmin(mods))
    return CertReport(
        name,
        mods[k] >= 1.0 - tol,
        mods[k],
        [roots[k]],
        {"moduli": mods},
    )


def check_g_real_part(p, theta: float, grid=None) -> CertReport:
    """Re{z G''(z)/G'(z)} > -1 on the grid (G from the closed rational form)."""
    if grid is None:
        grid = polar_grid(0.99, 64, 128)
    z = np.asarray(grid, dtype=complex).ravel()
    if isinstance(p, ClassBParams):
        vals = np.real(kernel.g_log_derivative_b(z, theta, p.lam, p.beta))
    else:
        vals = np.real(kernel.g_log_derivative_p(z, theta, p.lam))
    k = int(np.argmin(vals))
    return CertReport("g_real_part", bool(vals[k] > -1.0), float(vals[k]), [complex(z[k])])


# -- curve-level batteries ---------------------------------------------------


def check_closure(curve: BoundaryCurve, tol_rel: float = 1e-7) -> CertReport:
    gap = curve.closure_gap()
    return CertReport(
        "closure", bool(gap <= tol_rel * curve.scale), gap, [complex(curve.values[-1])],
        {"scale": curve.scale},
    )


def check_bounded(curve: BoundaryCurve) -> CertReport:
    """All samples finite (the numerical stand-in for compactness)."""
    ok = bool(np.all(np.isfinite(curve.values)))
    return CertReport("bounded", ok, float(np.max(np.abs(curve.values))) if ok else math.inf)


def check_covering(curve: BoundaryCurve, disk, tol_rel: float = 1e-8) -> CertReport:
    """max_k |w_k - C| - R <= tol_rel * scale."""
    excess = np.abs(curve.values - disk.center) - disk.radius
    k = int(np.argmax(excess))
    return CertReport(
        "covering",
        bool(excess[k] <= tol_rel * curve.scale),
        float(excess[k]),
        [complex(curve.values[k])],
        {"center": disk.center, "radius": disk.radius, "scale": curve.scale},
    )


def containment_sweep(
    p, n_points: int = 500, radius: float = 0.97, n_samples: int = 1024,
    margin_rel: float = 1e-10, curve: BoundaryCurve | None = None,
) -> CertReport:
    """Interior extremal values (|a| <= radius on a spiral lattice) lie strictly inside the curve."""
    if curve is None:
        curve = boundary_curve(p, n_samples)
    poly = Polygon.from_curve(curve)
    a = disk_lattice(n_points, radius)
    ws = sample_derivative(p, a, curve.tol)
    rep = check_contains(poly, ws, boundary_rel=margin_rel)
    rep.name = "containment_sweep"
    return rep


def geometry_battery(curve: BoundaryCurve, tol_rel: float = 1e-9) -> list[CertReport]:
    poly = Polygon.from_curve(curve)
    return [check_bounded(curve), check_convex(poly, tol_rel), check_simple(poly),
            check_closure(curve)]
