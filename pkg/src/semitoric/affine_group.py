"""The vertical piecewise integral affine group, realised as Z^(n+1) x Q.

An element ``GroupElement(z=(z0, z1, ..., zn), b)`` acts on the plane as

    S_b o t_{j_1}^{z1} o ... o t_{j_n}^{zn} o T^{z0}

with ``T(x, y) = (x, y + x)``, ``t_j(x, y) = (x, y + (x - j) H(x - j))`` and
``S_b(x, y) = (x, y + b)``, where ``H`` is the closed unit step (``H(0) = 1``).
All of these only add a function of ``x`` to ``y``, so the group is Abelian
and powers are plain integer multiples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from .errors import ConfigurationError, RegionError
from .rational import Interval, Point2, RationalLike, as_fraction, format_rational
from .taylor import TaylorSeries


@dataclass(frozen=True)
class LineConfig:
    """Abscissae ``j_1 < ... < j_n`` of the vertical cut lines."""

    j: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        js = tuple(as_fraction(v) for v in self.j)
        if any(b <= a for a, b in zip(js, js[1:])):
            raise ConfigurationError("line abscissae must be strictly increasing")
        object.__setattr__(self, "j", js)

    @classmethod
    def of(cls, *js: RationalLike) -> "LineConfig":
        return cls(tuple(js))

    def __len__(self) -> int:
        return len(self.j)

    def index(self, x: Fraction) -> int:
        """1-based index of the line through abscissa ``x``."""
        try:
            return self.j.index(x) + 1
        except ValueError:
            raise ConfigurationError(f"no cut line at x = {format_rational(x)}") from None

    def position(self, a: int) -> Fraction:
        if not 1 <= a <= len(self.j):
            raise ConfigurationError(f"line index {a} out of range 1..{len(self.j)}")
        return self.j[a - 1]


@dataclass(frozen=True)
class GroupElement:
    """``z[0]`` is the power of T, ``z[a]`` the power of ``t_{j_a}``; ``b`` the vertical shift."""

    z: Tuple[int, ...]
    b: Fraction = Fraction(0)

    def __post_init__(self):
        z = tuple(self.z)
        if not z:
            raise ConfigurationError("a group element needs at least the T-power")
        if any(isinstance(v, bool) or int(v) != v for v in z):
            raise ConfigurationError("powers must be integers")
        object.__setattr__(self, "z", tuple(int(v) for v in z))
        object.__setattr__(self, "b", as_fraction(self.b))

    @property
    def rank(self) -> int:
        """Number of cut lines this element is bound to."""
        return len(self.z) - 1

    def check(self, cfg: LineConfig) -> None:
        if self.rank != len(cfg):
            raise ConfigurationError(
                f"element has {self.rank} cut powers but the configuration has {len(cfg)} lines"
            )

    def __str__(self):
        return f"(z={list(self.z)}, b={format_rational(self.b)})"


def identity(n_lines: int) -> GroupElement:
    return GroupElement((0,) * (n_lines + 1), Fraction(0))


def generator_T(n_lines: int, power: int = 1) -> GroupElement:
    return GroupElement((power,) + (0,) * n_lines)


def generator_t(n_lines: int, a: int, power: int = 1) -> GroupElement:
    if not 1 <= a <= n_lines:
        raise ConfigurationError(f"line index {a} out of range 1..{n_lines}")
    z = [0] * (n_lines + 1)
    z[a] = power
    return GroupElement(tuple(z))


def shift(n_lines: int, b: RationalLike) -> GroupElement:
    return GroupElement((0,) * (n_lines + 1), as_fraction(b))


def compose(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """``g1 o g2``; componentwise addition since the group is Abelian."""
    if g1.rank != g2.rank:
        raise ConfigurationError("cannot compose elements bound to different line configurations")
    return GroupElement(tuple(a + b for a, b in zip(g1.z, g2.z)), g1.b + g2.b)


def inverse(g: GroupElement) -> GroupElement:
    return GroupElement(tuple(-v for v in g.z), -g.b)


def vertical_offset(g: GroupElement, cfg: LineConfig, x: Fraction) -> Fraction:
    """The amount ``g`` adds to the second coordinate of any point with abscissa ``x``."""
    g.check(cfg)
    dy = g.z[0] * x + g.b
    for za, ja in zip(g.z[1:], cfg.j):
        if za and x >= ja:
            dy += za * (x - ja)
    return dy


def apply_point(g: GroupElement, cfg: LineConfig, p: Point2) -> Point2:
    x = as_fraction(p[0])
    return Point2(x, as_fraction(p[1]) + vertical_offset(g, cfg, x))


def apply_slope(g: GroupElement, cfg: LineConfig, slope: RationalLike, region: Interval) -> Fraction:
    """Image of a slope on an x-region containing no cut line in its interior."""
    g.check(cfg)
    for ja in cfg.j:
        if region.lo < ja < region.hi:
            raise RegionError(
                f"region ({format_rational(region.lo)}, {format_rational(region.hi)}) "
                f"straddles the line x = {format_rational(ja)}"
            )
    return as_fraction(slope) + g.z[0] + sum(za for za, ja in zip(g.z[1:], cfg.j) if ja <= region.lo)


def series_shift(g: GroupElement, cfg: LineConfig, a: int) -> Tuple[int, Fraction]:
    """``(dX, dC)`` added to an action series of a point on line ``a`` (1-based).

    In 2pi-units: T adds ``X + j_a``; ``t_{j_a'}`` with ``a' <= a`` adds
    ``X + (j_a - j_a')``; cuts to the right do nothing; ``S_b`` adds ``b``.
    The constant shift agrees with :func:`vertical_offset` at ``x = j_a``.
    """
    g.check(cfg)
    ja = cfg.position(a)
    dx = g.z[0] + sum(g.z[1 : a + 1])
    dc = g.z[0] * ja + g.b + sum(za * (ja - jb) for za, jb in zip(g.z[1 : a + 1], cfg.j[:a]))
    return dx, dc


def apply_action_series(g: GroupElement, cfg: LineConfig, a: int, series: TaylorSeries) -> TaylorSeries:
    dx, dc = series_shift(g, cfg, a)
    if not dx and not dc:
        return series
    return series + TaylorSeries({(1, 0): dx, (0, 0): dc}, series.degree, series.flavor)


def apply_points(g: GroupElement, cfg: LineConfig, points: Iterable[Point2]) -> Tuple[Point2, ...]:
    return tuple(apply_point(g, cfg, p) for p in points)


def parse_element(n_lines: int, t0: int = 0, cuts: Sequence[Tuple[int, int]] = (), b: RationalLike = 0) -> GroupElement:
    """Build an element from a T-power, ``(line, power)`` pairs and a shift."""
    z = [int(t0)] + [0] * n_lines
    for a, power in cuts:
        if not 1 <= a <= n_lines:
            raise ConfigurationError(f"line index {a} out of range 1..{n_lines}")
        z[a] += int(power)
    return GroupElement(tuple(z), as_fraction(b))
