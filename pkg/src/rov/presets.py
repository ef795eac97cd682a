"""The ten figure parameter sets (five figures, one class-B and one class-P panel each).

Literals are copied digit for digit from the published figure captions.
Figure 2's class-B beta has modulus about 1.0774, outside |beta| <= 1, so
that preset only loads with class checking relaxed (see ``in_class``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnknownPreset
from .params import ClassBParams, ClassPParams


@dataclass(frozen=True)
class FigurePreset:
    figure_id: int
    side: str  # "B" or "P"
    params: ClassBParams | ClassPParams

    @property
    def name(self) -> str:
        return f"figure{self.figure_id}-{self.side}"

    @property
    def in_class(self) -> bool:
        p = self.params
        if isinstance(p, ClassBParams):
            return abs(p.beta) <= 1.0 and 0 < p.m <= abs(p.alpha)
        return True


_CAPTIONS = {
    # figure: (z0, alpha, lambda_B, M_B, beta, lambda_P, M_P)
    1: (0.00882581 - 0.514124j, -230.939 + 799.526j,
        0.427174 + 0.0755107j, 509.317, 0.94485 + 0.0416585j,
        0.839567, 0.254877),
    2: (-0.439619 - 0.843107j, 306.095 + 212.047j,
        -0.847689 - 0.07592j, 206.329, 0.67079 + 0.843107j,
        0.0802624, 0.673609),
    3: (-0.971007 + 0.211382j, 108.958 - 82.5096j,
        0.0327389 - 0.0219389j, 132.988, -0.0264629 - 0.114565j,
        0.148939, 0.390188),
    4: (-0.844358 - 0.529996j, 416.349 + 436.752j,
        -0.0872118 + 0.664418j, 97.2626, -0.549327 + 0.592394j,
        0.7262, 0.620559),
    5: (-0.605185 + 0.789592j, -100.796 + 233.556j,
        0.0523661 + 0.167249j, 164.079, 0.00810121 - 0.00819085j,
        0.63945, 0.354197),
}


def _build() -> dict[tuple[int, str], FigurePreset]:
    out = {}
    for fig, (z0, alpha, lam_b, m_b, beta, lam_p, m_p) in _CAPTIONS.items():
        out[fig, "B"] = FigurePreset(
            fig, "B", ClassBParams(alpha=alpha, beta=beta, m=m_b, lam=lam_b, z0=z0)
        )
        out[fig, "P"] = FigurePreset(
            fig, "P", ClassPParams(alpha=alpha, m=m_p, lam=complex(lam_p), z0=z0)
        )
    return out


PRESETS = _build()


def get_preset(figure: int, side: str) -> FigurePreset:
    try:
        return PRESETS[int(figure), side.upper()]
    except (KeyError, ValueError):
        raise UnknownPreset(f"no preset for figure {figure!r} side {side!r}") from None


def all_presets() -> list[FigurePreset]:
    return [PRESETS[k] for k in sorted(PRESETS)]
