"""Parameter tuples for the two function classes."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class ClassBParams:
    """Class B(alpha, beta, M) with f'''(0) = M(1-|beta|^2) lam, evaluated at z0.

    Admissible when 0 < M <= |alpha|, |beta| <= 1, |lam| <= 1 and |z0| < 1.
    """

    alpha: complex
    beta: complex
    m: float
    lam: complex
    z0: complex

    class_tag = "B"

    def replace(self, **changes) -> "ClassBParams":
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return {
            "class": "b",
            "alpha": _pair(self.alpha),
            "beta": _pair(self.beta),
            "m": float(self.m),
            "lambda": _pair(self.lam),
            "z0": _pair(self.z0),
        }


@dataclass(frozen=True)
class ClassPParams:
    """Class P(alpha, M) with f''(0) = 2M lam, evaluated at z0.

    Admissible when alpha != 0, 0 < M <= 1/log 4, |lam| <= 1 and |z0| < 1.
    """

    alpha: complex
    m: float
    lam: complex
    z0: complex

    class_tag = "P"

    def replace(self, **changes) -> "ClassPParams":
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return {
            "class": "p",
            "alpha": _pair(self.alpha),
            "m": float(self.m),
            "lambda": _pair(self.lam),
            "z0": _pair(self.z0),
        }


def _pair(w: complex) -> list[float]:
    w = complex(w)
    return [w.real, w.imag]
