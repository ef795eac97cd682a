"""CSV, SVG and JSON emitters for boundary curves and reports.

Numbers are written with 17 significant digits so that reading a CSV back
reproduces the samples exactly.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence

import numpy as np

from .region import BoundaryCurve

CSV_HEADER = ("theta", "re", "im")
SVG_SIZE = 800
SVG_MARGIN = 0.05


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def curve_to_csv(curve: BoundaryCurve) -> str:
    """``theta,re,im`` rows; a singleton region is written as one row at theta = 0."""
    buf = io.StringIO()
    buf.write(",".join(CSV_HEADER) + "\n")
    if curve.singleton:
        rows = [(0.0, curve.values[-1])]
    else:
        rows = zip(curve.thetas, curve.values)
    for th, w in rows:
        buf.write(f"{fmt(th)},{fmt(w.real)},{fmt(w.imag)}\n")
    return buf.getvalue()


def read_curve_csv(text: str) -> tuple[np.ndarray, np.ndarray]:
    """Parse CSV text back into (thetas, values)."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(h.strip() for h in header) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header!r}")
    th, vals = [], []
    for row in reader:
        if not row:
            continue
        th.append(float(row[0]))
        vals.append(complex(float(row[1]), float(row[2])))
    return np.array(th), np.array(vals, dtype=complex)


def _panel(values: np.ndarray, marker: complex | None, x_off: float, title: str) -> list[str]:
    pts = np.asarray(values, dtype=complex)
    allpts = pts if marker is None else np.append(pts, marker)
    xmin, xmax = float(allpts.real.min()), float(allpts.real.max())
    ymin, ymax = float(allpts.imag.min()), float(allpts.imag.max())
    span = max(xmax - xmin, ymax - ymin)
    if span == 0:
        span = max(1.0, abs(xmin), abs(ymin)) * 1e-6
    cx, cy = 0.5 * (xmin + xmax), 0.5 * (ymin + ymax)
    half = 0.5 * span * (1 + 2 * SVG_MARGIN)
    k = SVG_SIZE / (2 * half)

    def px(w: complex) -> tuple[str, str]:
        return (
            format(x_off + (w.real - (cx - half)) * k, ".3f"),
            format((cy + half - w.imag) * k, ".3f"),
        )

    out = [f'<g><title>{title}</title>']
    if len(pts) > 1:
        cmds = []
        for i, w in enumerate(pts):
            x, y = px(w)
            cmds.append(f"{'M' if i == 0 else 'L'}{x} {y}")
        out.append(
            f'<path d="{" ".join(cmds)} Z" fill="none" stroke="black" stroke-width="1.5"/>'
        )
    else:
        x, y = px(pts[0])
        out.append(f'<circle cx="{x}" cy="{y}" r="3" fill="black"/>')
    if marker is not None:
        x, y = (float(s) for s in px(marker))
        out.append(
            f'<path d="M{x - 6:.3f} {y:.3f} L{x + 6:.3f} {y:.3f} '
            f'M{x:.3f} {y - 6:.3f} L{x:.3f} {y + 6:.3f}" stroke="red" stroke-width="1.5"/>'
        )
    out.append(
        f'<text x="{x_off + 10:.0f}" y="20" font-family="sans-serif" font-size="14">{title}</text>'
    )
    out.append("</g>")
    return out


def curves_to_svg(
    panels: Sequence[tuple[BoundaryCurve, complex | None, str]],
) -> str:
    """One 800x800 panel per curve, side by side; ``marker`` draws a cross (interior point)."""
    width = SVG_SIZE * len(panels)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{SVG_SIZE}" '
        f'viewBox="0 0 {width} {SVG_SIZE}">',
        f'<rect width="{width}" height="{SVG_SIZE}" fill="white"/>',
    ]
    for i, (curve, marker, title) in enumerate(panels):
        vals = curve.values[-1:] if curve.singleton else curve.values
        lines.extend(_panel(vals, marker, i * SVG_SIZE, title))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def report_json(preset, reports: Iterable[dict]) -> str:
    checks = list(reports)
    doc = {
        "preset": preset,
        "pass": all(c["pass"] for c in checks),
        "checks": checks,
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
