"""The two-sphere coupled spin family with equal radii.

``J = z1 + z2`` and ``H = (1-s)^2 z1 + s^2 z2 + 2 s (1-s) (x1 x2 + y1 y2)``.
Sampling is the only floating-point computation in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .rational import RationalLike, as_fraction


def check_s1(s1: RationalLike) -> Fraction:
    s1 = as_fraction(s1)
    if not 0 <= s1 <= 1:
        raise ValueError(f"s1 = {s1} is outside [0, 1]")
    return s1


def momentum(s1: float, p1: Tuple[float, float, float], p2: Tuple[float, float, float]) -> Tuple[float, float]:
    x1, y1, z1 = p1
    x2, y2, z2 = p2
    j = z1 + z2
    h = (1 - s1) ** 2 * z1 + s1 ** 2 * z2 + 2 * s1 * (1 - s1) * (x1 * x2 + y1 * y2)
    return j, h


def focus_focus_values(s1: RationalLike) -> List[Tuple[Fraction, Fraction]]:
    """Images of the two focus-focus points ``(0, 0, +-1, 0, 0, -+1)``, exactly."""
    s1 = check_s1(s1)
    return [(Fraction(0), 1 - 2 * s1), (Fraction(0), 2 * s1 - 1)]


def _kronecker_steps(dim: int) -> List[float]:
    # generalised golden ratio: the positive root of x^(dim+1) = x + 1
    g = 2.0
    for _ in range(60):
        g = (1 + g) ** (1 / (dim + 1))
    return [(1 / g) ** (k + 1) % 1 for k in range(dim)]


def _sphere(u: float, v: float) -> Tuple[float, float, float]:
    z = 2 * u - 1
    r = math.sqrt(max(0.0, 1 - z * z))
    phi = 2 * math.pi * v
    return r * math.cos(phi), r * math.sin(phi), z


@dataclass(frozen=True)
class HPSample:
    s1: Fraction
    values: Tuple[Tuple[float, float], ...]
    critical: Tuple[Tuple[float, float], ...]


def sample_hp(s1: RationalLike, n: int) -> HPSample:
    """Evaluate ``(J, H)`` on ``n`` low-discrepancy points of the product of two spheres."""
    s1 = check_s1(s1)
    if n < 1:
        raise ValueError("need at least one sample")
    steps = _kronecker_steps(4)
    s = float(s1)
    values = []
    for i in range(1, n + 1):
        u = [(0.5 + i * a) % 1 for a in steps]
        values.append(momentum(s, _sphere(u[0], u[1]), _sphere(u[2], u[3])))
    critical = tuple(momentum(s, (0.0, 0.0, sz), (0.0, 0.0, -sz)) for sz in (1.0, -1.0))
    return HPSample(s1, tuple(values), critical)
