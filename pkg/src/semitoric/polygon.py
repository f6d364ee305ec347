"""Compact rational polygons that meet every vertical line in a segment.

Vertices are stored counterclockwise starting at the lexicographically
smallest vertex.  Collinear vertices are merged unless they sit on one of the
polygon's retained abscissae (the cut lines): a breakpoint on a cut carries
information even when it is flat.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .affine_group import GroupElement, LineConfig, apply_point, generator_t
from .errors import BoundaryError, GeometryError
from .rational import Point2, RationalLike, as_fraction, format_rational


class Side(str, Enum):
    LOWER = "lower"
    UPPER = "upper"


class CornerClass(str, Enum):
    NO_VERTEX = "no_vertex"
    FAKE = "fake"
    HIDDEN = "hidden"
    VIOLATION = "violation"


def _cross(o: Point2, a: Point2, b: Point2) -> Fraction:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def _area2(pts: Sequence[Point2]) -> Fraction:
    n = len(pts)
    return sum(pts[i].x * pts[(i + 1) % n].y - pts[(i + 1) % n].x * pts[i].y for i in range(n))


def _on_segment(p: Point2, a: Point2, b: Point2) -> bool:
    return (
        _cross(a, b, p) == 0
        and min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def _segments_meet(a: Point2, b: Point2, c: Point2, d: Point2) -> bool:
    d1, d2 = _cross(c, d, a), _cross(c, d, b)
    d3, d4 = _cross(a, b, c), _cross(a, b, d)
    if ((d1 > 0) != (d2 > 0)) and d1 and d2 and ((d3 > 0) != (d4 > 0)) and d3 and d4:
        return True
    return _on_segment(a, c, d) or _on_segment(b, c, d) or _on_segment(c, a, b) or _on_segment(d, a, b)


def primitive_vector(dx: Fraction, dy: Fraction) -> Tuple[int, int]:
    """The primitive integer vector pointing along the rational direction ``(dx, dy)``."""
    dx, dy = as_fraction(dx), as_fraction(dy)
    if not dx and not dy:
        raise GeometryError("zero direction vector")
    den = dx.denominator * dy.denominator // math.gcd(dx.denominator, dy.denominator)
    a, b = int(dx * den), int(dy * den)
    g = math.gcd(a, b)
    return a // g, b // g


@dataclass(frozen=True)
class BoundaryChain:
    """x-monotone polyline of the lower or upper boundary, left to right."""

    side: Side
    breakpoints: Tuple[Point2, ...]

    @property
    def slopes(self) -> Tuple[Fraction, ...]:
        pts = self.breakpoints
        return tuple((b.y - a.y) / (b.x - a.x) for a, b in zip(pts, pts[1:]))

    @property
    def xs(self) -> Tuple[Fraction, ...]:
        return tuple(p.x for p in self.breakpoints)

    def y_at(self, x: RationalLike) -> Fraction:
        x = as_fraction(x)
        pts = self.breakpoints
        if not pts[0].x <= x <= pts[-1].x:
            raise BoundaryError(f"x = {format_rational(x)} is outside the chain")
        for a, b in zip(pts, pts[1:]):
            if a.x <= x <= b.x:
                return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x)
        raise AssertionError("unreachable")

    def point_at(self, x: RationalLike) -> Point2:
        x = as_fraction(x)
        return Point2(x, self.y_at(x))

    def slope_jump(self, x: Fraction) -> Fraction:
        xs = self.xs
        if x in xs[1:-1]:
            i = xs.index(x)
            s = self.slopes
            return s[i] - s[i - 1]
        return Fraction(0)


class Polygon:
    """A simple, compact, vertically convex polygon with exact vertices."""

    __slots__ = ("vertices", "cuts", "lower", "upper")

    def __init__(
        self, vertices: Iterable[Sequence[RationalLike]], cuts: Iterable[RationalLike] = (), *, check_simple: bool = True
    ):
        cut_set = tuple(sorted({as_fraction(c) for c in cuts}))
        self.cuts = cut_set
        self.vertices = _normalize(vertices, cut_set, check_simple)
        self.lower, self.upper = _chains(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, Polygon):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return "Polygon([" + ", ".join(str(v) for v in self.vertices) + "])"

    @property
    def xmin(self) -> Fraction:
        return self.lower.breakpoints[0].x

    @property
    def xmax(self) -> Fraction:
        return self.lower.breakpoints[-1].x

    def chain(self, side: Side | str) -> BoundaryChain:
        return self.lower if Side(side) is Side.LOWER else self.upper

    def with_cuts(self, cuts: Iterable[RationalLike]) -> "Polygon":
        extra = {as_fraction(c) for c in cuts}
        if extra <= set(self.cuts):
            return self
        return Polygon(self.vertices, set(self.cuts) | extra)

    def area(self) -> Fraction:
        return _area2(self.vertices) / 2

    def slice(self, x: RationalLike) -> Tuple[Fraction, Fraction]:
        """``(min y, max y)`` over the vertical line through ``x``."""
        return self.lower.y_at(x), self.upper.y_at(x)

    def contains_interior(self, p: Point2) -> bool:
        if not self.xmin < p.x < self.xmax:
            return False
        lo, hi = self.slice(p.x)
        return lo < p.y < hi

    def turn(self, i: int) -> Fraction:
        """Cross product of the two edges at vertex ``i``; positive at convex corners."""
        n = len(self.vertices)
        return _cross(self.vertices[i - 1], self.vertices[i], self.vertices[(i + 1) % n])

    def is_convex(self) -> bool:
        return all(self.turn(i) >= 0 for i in range(len(self.vertices)))

    def edges(self) -> List[Tuple[Point2, Point2]]:
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]


def _normalize(vertices, cuts: Tuple[Fraction, ...], check_simple: bool = True) -> Tuple[Point2, ...]:
    pts: List[Point2] = []
    for v in vertices:
        p = Point2.of(v[0], v[1])
        if not pts or pts[-1] != p:
            pts.append(p)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    if len(pts) < 3:
        raise GeometryError("a polygon needs at least three distinct vertices")
    a2 = _area2(pts)
    if a2 == 0:
        raise GeometryError("polygon has empty interior")
    if a2 < 0:
        pts.reverse()

    if cuts:
        split: List[Point2] = []
        for i, a in enumerate(pts):
            b = pts[(i + 1) % len(pts)]
            split.append(a)
            if a.x == b.x:
                continue
            inside = [c for c in cuts if min(a.x, b.x) < c < max(a.x, b.x)]
            inside.sort(reverse=a.x > b.x)
            for c in inside:
                split.append(Point2(c, a.y + (b.y - a.y) * (c - a.x) / (b.x - a.x)))
        pts = split

    keep = set(cuts)
    changed = True
    while changed and len(pts) > 3:
        changed = False
        n = len(pts)
        for i in range(n):
            prev, cur, nxt = pts[i - 1], pts[i], pts[(i + 1) % n]
            if _cross(prev, cur, nxt) != 0:
                continue
            if not _on_segment(cur, prev, nxt):
                raise GeometryError(f"polygon folds back on itself at {cur}")
            if cur.x in keep and prev.x != nxt.x:
                continue
            del pts[i]
            changed = True
            break

    n = len(pts)
    if check_simple:
        boxes = []
        for i in range(n):
            a, b = pts[i], pts[(i + 1) % n]
            boxes.append((min(a.x, b.x), max(a.x, b.x), min(a.y, b.y), max(a.y, b.y)))
        for i in range(n):
            x0, x1, y0, y1 = boxes[i]
            for k in range(i + 2, n):
                if i == 0 and k == n - 1:
                    continue
                u0, u1, v0, v1 = boxes[k]
                if u0 > x1 or x0 > u1 or v0 > y1 or y0 > v1:
                    continue
                if _segments_meet(pts[i], pts[(i + 1) % n], pts[k], pts[(k + 1) % n]):
                    raise GeometryError(f"polygon is not simple: edges at {pts[i]} and {pts[k]} meet")

    start = min(range(n), key=lambda i: pts[i])
    return tuple(pts[start:] + pts[:start])


def _chains(v: Tuple[Point2, ...]) -> Tuple[BoundaryChain, BoundaryChain]:
    n = len(v)
    signs = []
    for i in range(n):
        a, b = v[i], v[(i + 1) % n]
        signs.append((b.x > a.x) - (b.x < a.x))
    i = 0
    while i < n and signs[i] > 0:
        i += 1
    lower_end = i
    if i < n and signs[i] == 0:
        if v[(i + 1) % n].y < v[i].y:
            raise GeometryError("polygon is not vertically convex")
        i += 1
    upper_start = i
    while i < n and signs[i] < 0:
        i += 1
    upper_end = i
    if i < n and signs[i] == 0:
        i += 1
    if i != n or lower_end == 0 or upper_end == upper_start:
        raise GeometryError("polygon is not vertically convex (a vertical line meets it twice)")
    lower = v[: lower_end + 1]
    upper = tuple(reversed([v[k % n] for k in range(upper_start, upper_end + 1)]))
    return BoundaryChain(Side.LOWER, tuple(lower)), BoundaryChain(Side.UPPER, upper)


def boundary_chains(poly: Polygon) -> Tuple[BoundaryChain, BoundaryChain]:
    return poly.lower, poly.upper


def apply_polygon(g: GroupElement, cfg: LineConfig, poly: Polygon) -> Polygon:
    """Image of a polygon; edges are split on the cut lines first so the map stays exact."""
    g.check(cfg)
    split = poly.with_cuts(cfg.j)
    # g is a homeomorphism of the plane, so the image is simple again
    return Polygon([apply_point(g, cfg, p) for p in split.vertices], set(split.cuts), check_simple=False)


def _vertex_index(poly: Polygon, v: Sequence[RationalLike]) -> int:
    p = Point2.of(v[0], v[1])
    try:
        return poly.vertices.index(p)
    except ValueError:
        raise GeometryError(f"{p} is not a vertex of the polygon") from None


def is_vertex_smooth(poly: Polygon, v: Sequence[RationalLike]) -> bool:
    """Locally convex at ``v`` with primitive edge directions forming a lattice basis."""
    i = _vertex_index(poly, v)
    n = len(poly.vertices)
    prev, cur, nxt = poly.vertices[i - 1], poly.vertices[i], poly.vertices[(i + 1) % n]
    if _cross(prev, cur, nxt) <= 0:
        return False
    a = primitive_vector(cur.x - prev.x, cur.y - prev.y)
    b = primitive_vector(nxt.x - cur.x, nxt.y - cur.y)
    return abs(a[0] * b[1] - a[1] * b[0]) == 1


def _require_interior_abscissa(poly: Polygon, j: Fraction) -> None:
    if not poly.xmin < j < poly.xmax:
        if poly.xmin <= j <= poly.xmax:
            raise BoundaryError(f"x = {format_rational(j)} is an extreme abscissa of the polygon")
        raise BoundaryError(f"the line x = {format_rational(j)} misses the polygon")


def slope_jump(poly: Polygon, j: RationalLike, side: Side | str) -> Fraction:
    """Slope right of ``x = j`` minus slope left of it on one boundary chain."""
    j = as_fraction(j)
    _require_interior_abscissa(poly, j)
    return poly.chain(side).slope_jump(j)


def min_y_on_line(poly: Polygon, j: RationalLike) -> Fraction:
    j = as_fraction(j)
    if not poly.xmin <= j <= poly.xmax:
        raise BoundaryError(f"the line x = {format_rational(j)} misses the polygon")
    return poly.lower.y_at(j)


def wall_ladder(w_lower: int, multiplicities: Sequence[int]) -> List[int]:
    """Wall-crossing indices of the segments of one line, bottom to top."""
    if not multiplicities:
        raise ValueError("a cut line carries at least one marked point")
    ladder = [int(w_lower)]
    for m in multiplicities:
        if m <= 0:
            raise ValueError(f"multiplicity {m} is not positive")
        ladder.append(ladder[-1] + int(m))
    return ladder


def reanchor(poly: Polygon, j: RationalLike, w_adjacent: int) -> Polygon:
    """Apply ``t_j^w``: the coordinates in which the adjacent wall index becomes 0."""
    cfg = LineConfig((as_fraction(j),))
    return apply_polygon(generator_t(1, 1, int(w_adjacent)), cfg, poly)


def classify_wall_point(
    poly: Polygon, j: RationalLike, w_adjacent: int, side: Side | str, m_tilde: int = 0
) -> CornerClass:
    """Classify the boundary point on ``x = j`` after re-anchoring its wall index to zero.

    ``w_adjacent`` is the index of the segment touching the boundary point.
    On the upper side it may instead be given as the lower index together
    with the total multiplicity ``m_tilde`` of the line.  Re-anchoring adds
    the index to the slope jump: a zero residual gives ``NO_VERTEX``, a
    smooth residual vertex ``HIDDEN``, anything else ``VIOLATION``.
    """
    j = as_fraction(j)
    _require_interior_abscissa(poly, j)
    if Side(side) is Side.UPPER:
        w_adjacent += m_tilde
    moved = reanchor(poly, j, w_adjacent)
    chain = moved.chain(side)
    if chain.slope_jump(j) == 0:
        return CornerClass.NO_VERTEX
    return CornerClass.HIDDEN if is_vertex_smooth(moved, chain.point_at(j)) else CornerClass.VIOLATION


def corner_type(
    poly: Polygon, j: RationalLike, w_adjacent: int, side: Side | str, m_tilde: int = 0
) -> CornerClass | None:
    """Name the corner in the usual vocabulary; ``None`` if ``poly`` has no corner there."""
    cls = classify_wall_point(poly, j, w_adjacent, side, m_tilde)
    if slope_jump(poly, j, side) == 0 and cls is CornerClass.NO_VERTEX:
        return None
    if cls is CornerClass.NO_VERTEX:
        return CornerClass.FAKE
    return cls
