"""Closed-form complex kernels on the unit disk.

All functions are pure and broadcast over numpy arrays: ``zeta`` and the
extremal parameter ``a`` may be arrays of compatible shape (for instance
``zeta[:, None]`` against ``a[None, :]`` to evaluate a whole theta grid at
once).  Scalars in give numpy scalars out.

Notation: ``K_B(a, z) = 1 + (conj(lam) a + conj(beta) lam) z + conj(beta) a z^2``
and ``K_P(a, z) = 1 + (conj(lam) a - lam) z - a z^2`` are the denominators
of the extremal second derivatives of class B and class P.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import DegenerateDenominator

EPS_DEN = 1e-14


def _guard(den, what: str):
    if np.any(np.abs(den) < EPS_DEN):
        raise DegenerateDenominator(f"{what}: |denominator| < {EPS_DEN:g}")
    return den


def moebius_delta(z, lam):
    """Disk automorphism ``(z + lam) / (1 + conj(lam) z)``."""
    z = np.asarray(z, dtype=complex)
    lam = np.asarray(lam, dtype=complex)
    den = _guard(1.0 + np.conj(lam) * z, "moebius_delta")
    return (z + lam) / den


def schwarz_function(z, a, lam):
    """omega(z) = z * delta(a z, lam), the Schwarz function of the extremal family."""
    z = np.asarray(z, dtype=complex)
    return z * moebius_delta(np.asarray(a, dtype=complex) * z, lam)


# -- class B -----------------------------------------------------------------


def denominator_b(z, a, lam, beta):
    z = np.asarray(z, dtype=complex)
    cb = np.conj(beta)
    return 1.0 + (np.conj(lam) * a + cb * lam) * z + cb * a * z * z


def integrand_b(zeta, a, p):
    """Second derivative F''_{a,lam}(zeta) of the class-B extremal function.

    ``p`` needs ``beta``, ``m`` and ``lam``; ``|a| <= 1`` (``a = e^{i theta}``
    traces the boundary).
    """
    zeta = np.asarray(zeta, dtype=complex)
    a = np.asarray(a, dtype=complex)
    lam, beta = complex(p.lam), complex(p.beta)
    num = (a * zeta + lam) * zeta + beta * (1.0 + lam.conjugate() * a * zeta)
    den = _guard(denominator_b(zeta, a, lam, beta), "integrand_b")
    return p.m * num / den


def _denominator_d(absz2, lam, beta, z):
    b2 = abs(beta) ** 2
    return (
        (1.0 - b2 * absz2**2)
        - (1.0 - b2) * abs(lam) ** 2 * absz2
        + 2.0 * (1.0 - absz2) * np.real(np.conj(beta) * lam * z)
    )


def center_radius_b(z, p):
    """Center c1 and radius r1 of the disk containing f''(z) for f in the class.

    The radius carries the factor M: ``r1 = M (1-|lam|^2)(1-|beta|^2)|z|^2 / D``.
    """
    z = np.asarray(z, dtype=complex)
    lam, beta, m = complex(p.lam), complex(p.beta), float(p.m)
    absz2 = np.abs(z) ** 2
    d = _denominator_d(absz2, lam, beta, z)
    if np.any(d < EPS_DEN):
        raise DegenerateDenominator("center_radius_b: D < 1e-14")
    num_c = beta * (1.0 + absz2) + beta**2 * lam.conjugate() * np.conj(z) + lam * z
    c = m * (1.0 - absz2) * num_c / d
    r = m * (1.0 - abs(lam) ** 2) * (1.0 - abs(beta) ** 2) * absz2 / d
    return c, r


def auxiliary_b(z, p):
    """The triple (A1, B1, tau1) from which c1 and r1 are assembled."""
    z = np.asarray(z, dtype=complex)
    lam, beta, m = complex(p.lam), complex(p.beta), float(p.m)
    cb, cl = beta.conjugate(), lam.conjugate()
    den_a = _guard(1.0 + cb * lam * z, "auxiliary_b")
    den_b = _guard(cb * z + cl, "auxiliary_b")
    return m * (beta + lam * z) / den_a, -m * (z + cl * beta) / den_b, den_b / den_a


def g_integrand_b(zeta, theta, lam, beta):
    """G'(zeta) = e^{i theta} zeta^2 / K_B(e^{i theta}, zeta)^2."""
    zeta = np.asarray(zeta, dtype=complex)
    a = np.exp(1j * np.asarray(theta, dtype=float))
    k = _guard(denominator_b(zeta, a, lam, beta), "g_integrand_b")
    return a * zeta * zeta / (k * k)


def g_log_derivative_b(z, theta, lam, beta):
    """z G''(z) / G'(z) for the class-B G, from the closed rational form."""
    z = np.asarray(z, dtype=complex)
    a = np.exp(1j * np.asarray(theta, dtype=float))
    k = _guard(denominator_b(z, a, lam, beta), "g_log_derivative_b")
    dk = np.conj(lam) * a + np.conj(beta) * lam + 2.0 * np.conj(beta) * a * z
    return 2.0 - 2.0 * z * dk / k


# -- class P -----------------------------------------------------------------


def denominator_p(z, a, lam):
    z = np.asarray(z, dtype=complex)
    return 1.0 + (np.conj(lam) * a - lam) * z - a * z * z


def integrand_p(zeta, a, p):
    """Second derivative H''_{a,lam}(zeta) of the class-P extremal function."""
    zeta = np.asarray(zeta, dtype=complex)
    a = np.asarray(a, dtype=complex)
    lam = complex(p.lam)
    den = _guard(denominator_p(zeta, a, lam), "integrand_p")
    return 2.0 * p.m * (a * zeta + lam) / den


def center_radius_p(z, p):
    """Center c2 and radius r2 of the disk containing f''(z) for f in the class."""
    z = np.asarray(z, dtype=complex)
    lam, m = complex(p.lam), float(p.m)
    absz2 = np.abs(z) ** 2
    d = (1.0 - absz2) * (1.0 + absz2 - 2.0 * np.real(lam * z))
    if np.any(d < EPS_DEN):
        raise DegenerateDenominator("center_radius_p: denominator < 1e-14")
    c = 2.0 * m * ((1.0 - absz2) * lam + (absz2 - abs(lam) ** 2) * np.conj(z)) / d
    r = 2.0 * (1.0 - abs(lam) ** 2) * m * np.abs(z) / d
    return c, r


def auxiliary_p(z, p):
    """The triple (A2, B2, tau2)."""
    z = np.asarray(z, dtype=complex)
    lam, m = complex(p.lam), float(p.m)
    den_a = _guard(1.0 - lam * z, "auxiliary_p")
    den_b = _guard(z - lam.conjugate(), "auxiliary_p")
    return 2.0 * m * lam / den_a, 2.0 * m / den_b, den_b / den_a


def g_integrand_p(zeta, theta, lam):
    """G'(zeta) = e^{i theta} zeta / K_P(e^{i theta}, zeta)^2."""
    zeta = np.asarray(zeta, dtype=complex)
    a = np.exp(1j * np.asarray(theta, dtype=float))
    k = _guard(denominator_p(zeta, a, lam), "g_integrand_p")
    return a * zeta / (k * k)


def g_log_derivative_p(z, theta, lam):
    """z G''(z) / G'(z) for the class-P G."""
    z = np.asarray(z, dtype=complex)
    a = np.exp(1j * np.asarray(theta, dtype=float))
    k = _guard(denominator_p(z, a, lam), "g_log_derivative_p")
    dk = np.conj(lam) * a - lam - 2.0 * a * z
    return 1.0 - 2.0 * z * dk / k


# -- scalar helpers ----------------------------------------------------------

_SERIES_RADIUS = 0.05
_SERIES_TERMS = 16


def log1p_ratio(w: complex) -> complex:
    """log(1 + w) / w on the principal branch, with the w -> 0 limit 1.

    Uses the Maclaurin series 1 - w/2 + w^2/3 - ... for small |w|.
    """
    w = complex(w)
    if abs(w) < _SERIES_RADIUS:
        return sum((-w) ** k / (k + 1) for k in range(_SERIES_TERMS))
    arg = 1.0 + w
    assert arg.real > 0.0, "principal log branch cut reached"
    return cmath.log(arg) / w


def log1p_defect(w: complex) -> complex:
    """(w - log(1 + w)) / w^2, with the w -> 0 limit 1/2."""
    w = complex(w)
    if abs(w) < _SERIES_RADIUS:
        return sum((-1) ** k * w**k / (k + 2) for k in range(_SERIES_TERMS))
    return (1.0 - log1p_ratio(w)) / w


def solve_quadratic(a: complex, b: complex, c: complex) -> tuple[complex, ...]:
    """Roots of a z^2 + b z + c, avoiding cancellation.

    Returns one root when ``a == 0`` (and ``b != 0``).
    """
    a, b, c = complex(a), complex(b), complex(c)
    if a == 0:
        if b == 0:
            raise DegenerateDenominator("solve_quadratic: a == b == 0")
        return (-c / b,)
    s = cmath.sqrt(b * b - 4.0 * a * c)
    # pick the sign that makes |b + sign*s| largest
    q = -0.5 * (b + s) if abs(b + s) >= abs(b - s) else -0.5 * (b - s)
    if q == 0:
        return (0j, 0j)
    return (q / a, c / q)


def roots_b(theta: float, lam: complex, beta: complex) -> tuple[complex, ...]:
    """Zeros of K_B(e^{i theta}, .)."""
    a = cmath.exp(1j * theta)
    cb = complex(beta).conjugate()
    return solve_quadratic(cb * a, complex(lam).conjugate() * a + cb * lam, 1.0)


def roots_p(theta: float, lam: complex) -> tuple[complex, ...]:
    """Zeros of K_P(e^{i theta}, .)."""
    a = cmath.exp(1j * theta)
    return solve_quadratic(-a, complex(lam).conjugate() * a - lam, 1.0)


INV_LOG4 = 1.0 / math.log(4.0)
