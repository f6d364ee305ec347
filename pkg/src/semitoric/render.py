"""Deterministic SVG drawings of ingredients.

Cut lines are dashed, marked points are crosses with their multiplicity
when it exceeds one, and each segment of a cut line carries its wall index
on its left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from .invariant import SemitoricIngredient, require_valid

SVG_NS = "http://www.w3.org/2000/svg"


@dataclass(frozen=True)
class RenderOptions:
    scale: int = 40
    margin: int = 30
    lattice: bool = False
    cross: float = 5.0


def _num(v: float) -> str:
    s = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(I: SemitoricIngredient, options: RenderOptions = RenderOptions()) -> str:
    require_valid(I)
    poly = I.polygon
    xs = [v.x for v in poly.vertices]
    ys = [v.y for v in poly.vertices]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    k, pad = options.scale, options.margin

    def px(x: Fraction) -> float:
        return pad + float(x - x0) * k

    def py(y: Fraction) -> float:
        return pad + float(y1 - y) * k

    width = _num(2 * pad + float(x1 - x0) * k)
    height = _num(2 * pad + float(y1 - y0) * k)
    out: List[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="{SVG_NS}" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
    ]
    if options.lattice:
        out.append('<g class="lattice" fill="#999">')
        for gx in range(math.ceil(x0), math.floor(x1) + 1):
            for gy in range(math.ceil(y0), math.floor(y1) + 1):
                out.append(f'<circle cx="{_num(px(Fraction(gx)))}" cy="{_num(py(Fraction(gy)))}" r="1.5"/>')
        out.append("</g>")
    pts = " ".join(f"{_num(px(v.x))},{_num(py(v.y))}" for v in poly.vertices)
    out.append(f'<polygon class="polygon" points="{pts}" fill="#dde6f2" stroke="#000" stroke-width="1.5"/>')

    for a, j in enumerate(I.cfg.j, start=1):
        lo, hi = poly.slice(j)
        out.append(
            f'<line class="cut" x1="{_num(px(j))}" y1="{_num(py(lo))}" x2="{_num(px(j))}" y2="{_num(py(hi))}" '
            f'stroke="#000" stroke-dasharray="6,4"/>'
        )
        on_line = sorted(I.marks_on(a), key=lambda mk: mk.position.y)
        ladder = I.ladder(a)
        cuts = [lo] + [mk.position.y for mk in on_line] + [hi]
        for value, (ya, yb) in zip(ladder, zip(cuts, cuts[1:])):
            ymid = (ya + yb) / 2
            out.append(
                f'<text class="wall-index" x="{_num(px(j) - 4)}" y="{_num(py(ymid) + 4)}" '
                f'text-anchor="end" font-size="11">{value}</text>'
            )

    c = options.cross
    for mk in I.marks:
        x, y = px(mk.position.x), py(mk.position.y)
        d = (
            f"M{_num(x - c)},{_num(y - c)} L{_num(x + c)},{_num(y + c)} "
            f"M{_num(x - c)},{_num(y + c)} L{_num(x + c)},{_num(y - c)}"
        )
        out.append(f'<path class="mark" d="{d}" stroke="#c00" stroke-width="2"/>')
        if mk.multiplicity > 1:
            out.append(
                f'<text class="multiplicity" x="{_num(x + c + 3)}" y="{_num(y - c)}" font-size="11">{mk.multiplicity}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
