"""Regions of variability of f'(z0) for the classes B(alpha, beta, M) and P(alpha, M).

The boundary of the region is traced by the extremal family with the
parameter ``a = e^{i theta}``; ``|a| < 1`` gives interior points.  Values are
``alpha + int_0^{z0} f''(zeta) dzeta`` computed by adaptive quadrature along
the straight segment (the integrands are analytic on the disk, so the path
does not matter).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import kernel
from .errors import (
    InvalidA,
    InvalidAlpha,
    InvalidBeta,
    InvalidLambda,
    InvalidM,
    InvalidPath,
    InvalidZ0,
    NearSingletonWarning,
    NotSingleton,
    RelaxedClassWarning,
)
from .params import ClassBParams, ClassPParams
from .quad import DEFAULT_TOL, PathSpec, integrate_path, integrate_segment

SINGLETON_EPS = 1e-12
NEAR_SINGLETON_EPS = 1e-6
DEFAULT_SAMPLES = 512

Params = ClassBParams | ClassPParams


# -- validation --------------------------------------------------------------


def _finite(*values) -> bool:
    return all(math.isfinite(complex(v).real) and math.isfinite(complex(v).imag) for v in values)


def _check_lambda_z0(p) -> None:
    if not _finite(p.lam) or abs(p.lam) > 1.0:
        raise InvalidLambda(f"|lambda| = {abs(p.lam)!r} must be <= 1")
    if not _finite(p.z0) or not abs(p.z0) < 1.0:
        raise InvalidZ0(f"|z0| = {abs(p.z0)!r} must be < 1")


def _relaxable(exc: Exception, relax: bool) -> None:
    if not relax:
        raise exc
    warnings.warn(f"{type(exc).__name__}: {exc}", RelaxedClassWarning, stacklevel=3)


def validate_b(p: ClassBParams, *, relax_class: bool = False) -> ClassBParams:
    """Check 0 < M <= |alpha|, |beta| <= 1, |lambda| <= 1, |z0| < 1.

    ``relax_class`` downgrades the two class bounds (M <= |alpha| and
    |beta| <= 1) to :class:`RelaxedClassWarning`; M > 0 and the domain
    conditions on lambda and z0 are always enforced.
    """
    if not _finite(p.alpha, p.m) or not p.m > 0:
        raise InvalidM(f"M = {p.m!r} must be positive")
    if not _finite(p.beta):
        raise InvalidBeta(f"beta = {p.beta!r} is not finite")
    _check_lambda_z0(p)
    if p.m > abs(p.alpha):
        _relaxable(InvalidM(f"M = {p.m!r} exceeds |alpha| = {abs(p.alpha)!r}"), relax_class)
    if abs(p.beta) > 1.0:
        _relaxable(InvalidBeta(f"|beta| = {abs(p.beta)!r} exceeds 1"), relax_class)
    return p


def validate_p(p: ClassPParams, *, relax_univalence: bool = False) -> ClassPParams:
    """Check alpha != 0, 0 < M <= 1/log 4, |lambda| <= 1, |z0| < 1."""
    if not _finite(p.alpha) or p.alpha == 0:
        raise InvalidAlpha("alpha must be a nonzero finite number")
    if not _finite(p.m) or not p.m > 0:
        raise InvalidM(f"M = {p.m!r} must be positive")
    _check_lambda_z0(p)
    if p.m > kernel.INV_LOG4:
        _relaxable(
            InvalidM(f"M = {p.m!r} exceeds 1/log 4 = {kernel.INV_LOG4:.7f}"), relax_univalence
        )
    return p


def validate(p: Params, *, relax: bool = False) -> Params:
    if isinstance(p, ClassBParams):
        return validate_b(p, relax_class=relax)
    return validate_p(p, relax_univalence=relax)


# -- extremal family ---------------------------------------------------------


def second_derivative(p: Params, zeta, a):
    """Extremal f''_{a,lambda}(zeta) for the class of ``p``."""
    if isinstance(p, ClassBParams):
        return kernel.integrand_b(zeta, a, p)
    return kernel.integrand_p(zeta, a, p)


def center_radius(p: Params, z):
    if isinstance(p, ClassBParams):
        return kernel.center_radius_b(z, p)
    return kernel.center_radius_p(z, p)


def is_singleton(p: Params) -> bool:
    return p.z0 == 0 or abs(p.lam) >= 1.0 - SINGLETON_EPS


def sample_derivative(p: Params, a, tol: float = DEFAULT_TOL):
    """f'_{a,lambda}(z0) for the extremal function with parameter ``a``, |a| <= 1.

    ``a`` may be an array; all values are computed in one adaptive pass.
    """
    a_arr = np.asarray(a, dtype=complex)
    if not np.all(np.isfinite(a_arr)) or np.any(np.abs(a_arr) > 1.0 + SINGLETON_EPS):
        raise InvalidA("extremal parameter must satisfy |a| <= 1")
    if p.z0 == 0:
        return (np.zeros(a_arr.shape, dtype=complex) + complex(p.alpha))[()]
    flat = a_arr.reshape(-1)
    res = integrate_segment(
        lambda zeta: second_derivative(p, zeta[:, None], flat[None, :]), 0.0, p.z0, tol
    )
    return (complex(p.alpha) + np.asarray(res.value).reshape(a_arr.shape))[()]


def _closed_form(p: Params) -> complex:
    alpha, z0, lam, m = complex(p.alpha), complex(p.z0), complex(p.lam), float(p.m)
    if isinstance(p, ClassPParams):
        arg = 1.0 - lam * z0
        assert arg.real > 0.0
        return -2.0 * m * kernel.log1p_ratio(-lam * z0) * (-lam * z0) + alpha
    beta = complex(p.beta)
    # (M/conj(beta)) (z0 - (1-|beta|^2) log(1+w)/(lam conj(beta))) with
    # w = lam conj(beta) z0, regrouped so that beta -> 0 is regular
    w = lam * beta.conjugate() * z0
    return (
        m * lam * z0 * z0 * kernel.log1p_defect(w)
        + m * beta * z0 * kernel.log1p_ratio(w)
        + alpha
    )


def interior_point(p: Params) -> complex:
    """Closed form of the a = 0 member of the extremal family.

    An interior point of the region when |lambda| < 1 and z0 != 0; the
    unique point of the region otherwise.
    """
    return _closed_form(p)


def singleton_value(p: Params) -> complex:
    """The only element of the region when |lambda| = 1 or z0 = 0."""
    if not is_singleton(p):
        raise NotSingleton(f"|lambda| = {abs(p.lam)!r} < 1 and z0 != 0")
    return _closed_form(p)


# -- boundary curve ----------------------------------------------------------


def theta_grid(n: int) -> np.ndarray:
    """theta_k = -pi + 2 pi k / n, k = 1..n (half-open (-pi, pi])."""
    k = np.arange(1, n + 1)
    return -math.pi + 2.0 * math.pi * k / n


@dataclass
class BoundaryCurve:
    class_tag: str
    params: Params
    thetas: np.ndarray
    values: np.ndarray
    tol: float
    singleton: bool = False
    warnings: list[str] = field(default_factory=list)

    @property
    def samples(self) -> list[tuple[float, complex]]:
        return list(zip(self.thetas.tolist(), self.values.tolist()))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def diameter(self) -> float:
        return diameter(self.values)

    @property
    def scale(self) -> float:
        return max(1.0, self.diameter)

    def closure_gap(self) -> float:
        """|w(theta -> -pi+) - w(pi)|, the curve evaluated at theta = -pi against the last sample."""
        w_start = sample_derivative(self.params, np.exp(-1j * math.pi), self.tol)
        return abs(w_start - self.values[-1])

    def vertices_ccw(self) -> np.ndarray:
        """Sample values ordered counterclockwise (reversed if the signed area is negative)."""
        if signed_area(self.values) < 0:
            return self.values[::-1].copy()
        return self.values.copy()


def diameter(points) -> float:
    pts = np.asarray(points, dtype=complex).ravel()
    best = 0.0
    for i in range(0, len(pts), 1024):
        block = pts[i : i + 1024]
        best = max(best, float(np.max(np.abs(block[:, None] - pts[None, :]))))
    return best


def signed_area(points) -> float:
    z = np.asarray(points, dtype=complex)
    return 0.5 * float(np.sum(np.imag(np.conj(z) * np.roll(z, -1))))


def boundary_curve(
    p: Params, n_samples: int = DEFAULT_SAMPLES, tol: float = DEFAULT_TOL
) -> BoundaryCurve:
    """Sample the boundary Jordan curve theta -> f'_{e^{i theta},lambda}(z0).

    For |lambda| = 1 or z0 = 0 the region is a single point; the curve is
    still sampled (all samples coincide) and ``singleton`` is set.
    """
    if n_samples < 16:
        raise ValueError("n_samples must be at least 16")
    thetas = theta_grid(n_samples)
    notes: list[str] = []
    singleton = is_singleton(p)
    if not singleton and abs(p.lam) >= 1.0 - NEAR_SINGLETON_EPS:
        msg = f"NearSingleton: |lambda| = {abs(p.lam)!r} is within 1e-6 of 1"
        warnings.warn(msg, NearSingletonWarning, stacklevel=2)
        notes.append(msg)
    values = sample_derivative(p, np.exp(1j * thetas), tol)
    return BoundaryCurve(
        class_tag=p.class_tag,
        params=p,
        thetas=thetas,
        values=np.asarray(values, dtype=complex),
        tol=tol,
        singleton=singleton,
        warnings=notes,
    )


# -- covering disk -----------------------------------------------------------


@dataclass(frozen=True)
class DiskBound:
    center: complex
    radius: float
    path: PathSpec

    def contains(self, w: complex, slack: float = 0.0) -> bool:
        return abs(w - self.center) <= self.radius + slack


def covering_disk(p: Params, path: PathSpec | None = None, tol: float = DEFAULT_TOL) -> DiskBound:
    """Closed disk (C, R) containing the whole region.

    C = alpha + int c(z) dz and R = int r(z) |dz| along ``path`` (default the
    straight segment 0 -> z0).  Any path from 0 to z0 gives a valid disk.
    """
    if path is None:
        path = PathSpec.segment(p.z0)
    if path.start != 0 or path.end != complex(p.z0):
        raise InvalidPath("path must run from 0 to z0")
    if p.z0 == 0:
        return DiskBound(complex(p.alpha), 0.0, path)
    if abs(p.lam) >= 1.0:
        raise InvalidLambda("covering disk requires |lambda| < 1")
    center = integrate_path(lambda z: center_radius(p, z)[0], path, tol)
    radius = integrate_path(lambda z: center_radius(p, z)[1], path, tol, arclength=True)
    return DiskBound(complex(p.alpha) + complex(center.value), float(np.real(radius.value)), path)


# -- lattices ----------------------------------------------------------------

_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def disk_lattice(n: int, radius: float = 0.97) -> np.ndarray:
    """Deterministic low-discrepancy points in the closed disk |a| <= radius.

    Vogel spiral: area-uniform radii sqrt((k + 1/2) / n), golden-angle turns.
    """
    k = np.arange(n)
    r = radius * np.sqrt((k + 0.5) / n)
    return r * np.exp(1j * _GOLDEN_ANGLE * k)
