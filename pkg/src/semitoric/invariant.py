"""Representatives of the complete invariant and everything computed from them.

An ingredient is one representative of an orbit under ``Z^(n+1) x Q``.
:func:`canonicalize` picks a distinguished representative, so two
ingredients lie in the same orbit exactly when their canonical forms agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

from .affine_group import (
    GroupElement,
    LineConfig,
    apply_point,
    series_shift,
)
from .errors import (
    BoundaryError,
    ConfigurationError,
    PreconditionError,
    ValidationError,
)
from .polygon import (
    CornerClass,
    Polygon,
    Side,
    apply_polygon,
    classify_wall_point,
    is_vertex_smooth,
    min_y_on_line,
    wall_ladder,
)
from .rational import Point2, floor, format_rational
from .taylor import (
    STANDARD,
    SemilocalSeries,
    TaylorSeries,
    TaylorTuple,
    check_relations,
    complete_from_generators,
    cyclic_canonical,
    decompose,
    reconstruct,
)


@dataclass(frozen=True)
class MarkedPoint:
    position: Point2
    multiplicity: int
    label: TaylorTuple

    def __post_init__(self):
        object.__setattr__(self, "position", Point2.of(*self.position))
        if isinstance(self.multiplicity, bool) or int(self.multiplicity) != self.multiplicity or self.multiplicity < 1:
            raise ValueError(f"multiplicity must be a positive integer, got {self.multiplicity!r}")
        object.__setattr__(self, "multiplicity", int(self.multiplicity))
        if self.label.m != self.multiplicity:
            raise ValueError(
                f"label at {self.position} has {self.label.m} action series for multiplicity {self.multiplicity}"
            )


@dataclass(frozen=True)
class SemitoricIngredient:
    polygon: Polygon
    cfg: LineConfig
    w: Tuple[int, ...]
    marks: Tuple[MarkedPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "polygon", self.polygon.with_cuts(self.cfg.j))
        object.__setattr__(self, "w", tuple(int(v) for v in self.w))
        object.__setattr__(self, "marks", tuple(self.marks))
        if len(self.w) != len(self.cfg):
            raise ConfigurationError(f"{len(self.w)} wall indices for {len(self.cfg)} lines")

    @property
    def n_lines(self) -> int:
        return len(self.cfg)

    @property
    def degree(self) -> int:
        return min((mk.label.degree for mk in self.marks), default=0)

    def line_of(self, mark: MarkedPoint) -> int:
        """1-based line index of a mark."""
        return self.cfg.index(mark.position.x)

    def marks_on(self, a: int) -> List[MarkedPoint]:
        x = self.cfg.position(a)
        return [mk for mk in self.marks if mk.position.x == x]

    def m_tilde(self, a: int) -> int:
        return sum(mk.multiplicity for mk in self.marks_on(a))

    def ladder(self, a: int) -> List[int]:
        on_line = sorted(self.marks_on(a), key=lambda mk: mk.position.y)
        return wall_ladder(self.w[a - 1], [mk.multiplicity for mk in on_line])

    @property
    def is_simple(self) -> bool:
        return all(mk.multiplicity == 1 for mk in self.marks) and all(
            len(self.marks_on(a)) == 1 for a in range(1, self.n_lines + 1)
        )


# validation

ITEM_NAMES = {
    1: "cardinalities",
    2: "compact vertical slices",
    3: "marked points",
    4: "smooth vertices off the lines",
    5: "wall corners",
    6: "label constant terms",
    7: "label relations",
}


@dataclass(frozen=True)
class ItemResult:
    item: int
    failures: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def name(self) -> str:
        return ITEM_NAMES[self.item]

    def __str__(self):
        head = f"({self.item}) {self.name}: {'ok' if self.ok else 'FAIL'}"
        return "\n".join([head] + [f"    {f}" for f in self.failures])


@dataclass(frozen=True)
class ValidationReport:
    items: Tuple[ItemResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.items)

    def __bool__(self):
        return self.ok

    def item(self, n: int) -> ItemResult:
        return self.items[n - 1]

    def failed(self) -> List[int]:
        return [r.item for r in self.items if not r.ok]

    def __str__(self):
        return "\n".join(str(r) for r in self.items)


def _check_cardinalities(I: SemitoricIngredient) -> List[str]:
    lam, v = I.n_lines, len(I.marks)
    if lam == v == 0 or v >= lam >= 1:
        return []
    return [f"{v} marked points and {lam} lines"]


def _check_slices(I: SemitoricIngredient) -> List[str]:
    # every polygon here is compact, so each vertical slice is a closed segment
    lo, hi = I.polygon.xmin, I.polygon.xmax
    return [] if lo < hi else ["polygon has no width"]


def _check_marks(I: SemitoricIngredient) -> List[str]:
    out = []
    positions = [mk.position for mk in I.marks]
    for p, q in zip(positions, positions[1:]):
        if p == q:
            out.append(f"repeated marked point {p}")
        elif q < p:
            out.append(f"marked points {p} and {q} are out of order")
    for mk in I.marks:
        if mk.position.x not in I.cfg.j:
            out.append(f"{mk.position} is on none of the lines")
        if not I.polygon.contains_interior(mk.position):
            out.append(f"{mk.position} is not in the interior of the polygon")
    xs = {mk.position.x for mk in I.marks}
    for j in I.cfg.j:
        if j not in xs:
            out.append(f"line x = {format_rational(j)} carries no marked point")
    return out


def _check_smooth(I: SemitoricIngredient) -> List[str]:
    cuts = set(I.cfg.j)
    return [
        f"vertex {v} is not smooth"
        for v in I.polygon.vertices
        if v.x not in cuts and not is_vertex_smooth(I.polygon, v)
    ]


def _check_walls(I: SemitoricIngredient) -> List[str]:
    out = []
    for a, j in enumerate(I.cfg.j, start=1):
        m = I.m_tilde(a)
        for side in (Side.LOWER, Side.UPPER):
            try:
                cls = classify_wall_point(I.polygon, j, I.w[a - 1], side, m)
            except BoundaryError as exc:
                out.append(f"line {a}: {exc}")
                break
            if cls is CornerClass.VIOLATION:
                p = I.polygon.chain(side).point_at(j)
                adj = I.w[a - 1] + (m if side is Side.UPPER else 0)
                out.append(f"line {a}, {side.value} point {p}: not fake or hidden with wall index {adj}")
    return out


def _check_constants(I: SemitoricIngredient) -> List[str]:
    out = []
    for mk in I.marks:
        for mu, s in enumerate(mk.label.s):
            if s.constant_term != mk.position.y:
                out.append(
                    f"{mk.position}: s[{mu}] has constant term {format_rational(s.constant_term)}, "
                    f"expected {format_rational(mk.position.y)}"
                )
    return out


def _check_labels(I: SemitoricIngredient) -> List[str]:
    out = []
    for mk in I.marks:
        report = check_relations(mk.label)
        out.extend(f"{mk.position}: {v}" for v in report.violations)
    return out


_CHECKS = (
    _check_cardinalities,
    _check_slices,
    _check_marks,
    _check_smooth,
    _check_walls,
    _check_constants,
    _check_labels,
)


def validate(I: SemitoricIngredient) -> ValidationReport:
    return ValidationReport(tuple(ItemResult(n, tuple(check(I))) for n, check in enumerate(_CHECKS, start=1)))


def require_valid(I: SemitoricIngredient) -> None:
    report = validate(I)
    if not report.ok:
        raise ValidationError(f"ingredient fails items {report.failed()}", report)


# the group action and canonical forms


def act(g: GroupElement, I: SemitoricIngredient) -> SemitoricIngredient:
    g.check(I.cfg)
    marks = []
    for mk in I.marks:
        dx, dc = series_shift(g, I.cfg, I.line_of(mk))
        marks.append(MarkedPoint(apply_point(g, I.cfg, mk.position), mk.multiplicity, mk.label.shifted(dx, dc)))
    return SemitoricIngredient(
        apply_polygon(g, I.cfg, I.polygon),
        I.cfg,
        tuple(w - z for w, z in zip(I.w, g.z[1:])),
        tuple(marks),
    )


def canonical_element(I: SemitoricIngredient) -> GroupElement:
    """The unique group element taking ``I`` to its canonical representative."""
    n = I.n_lines
    zeroed = act(GroupElement((0,) + I.w), I)
    z0 = -floor(zeroed.polygon.lower.slopes[0])
    sheared = act(GroupElement((z0,) + (0,) * n), zeroed)
    b = -min(v.y for v in sheared.polygon.vertices)
    return GroupElement((z0,) + I.w, b)


def _canonical(I: SemitoricIngredient) -> SemitoricIngredient:
    moved = act(canonical_element(I), I)
    marks = tuple(
        MarkedPoint(mk.position, mk.multiplicity, cyclic_canonical(mk.label).canonical) for mk in moved.marks
    )
    return SemitoricIngredient(moved.polygon, moved.cfg, moved.w, marks)


def canonicalize(I: SemitoricIngredient) -> SemitoricIngredient:
    """Representative with all lower wall indices 0, leftmost lower slope in [0, 1), bottom at y = 0.

    Labels are rotated to their minimal cyclic form.
    """
    require_valid(I)
    return _canonical(I)


def orbits_equal(I1: SemitoricIngredient, I2: SemitoricIngredient) -> bool:
    if I1.cfg != I2.cfg or len(I1.marks) != len(I2.marks):
        return False
    if [mk.multiplicity for mk in I1.marks] != [mk.multiplicity for mk in I2.marks]:
        return False
    c1, c2 = _canonical(I1), _canonical(I2)
    if c1.polygon != c2.polygon or c1.w != c2.w:
        return False
    d = min(I1.degree, I2.degree)
    for m1, m2 in zip(c1.marks, c2.marks):
        if m1.position != m2.position:
            return False
        if cyclic_canonical(m1.label.truncate(d)).canonical != cyclic_canonical(m2.label.truncate(d)).canonical:
            return False
    return True


# extracted invariants


def heights(I: SemitoricIngredient) -> List[Fraction]:
    return [mk.label.s[0].constant_term - min_y_on_line(I.polygon, mk.position.x) for mk in I.marks]


def twisting_indices(I: SemitoricIngredient, convention: str = STANDARD) -> List[List[int]]:
    """Per mark, the twisting integer of every action series in the canonical rotation."""
    return [
        [decompose(s, convention)[1] for s in cyclic_canonical(mk.label).canonical.s]
        for mk in I.marks
    ]


def twist_propagate(
    k0: int, s0: SemilocalSeries, gens: Sequence[TaylorSeries], convention: str = STANDARD
) -> List[int]:
    """Twisting integers of a whole fiber from the first one and the generators."""
    full = complete_from_generators(reconstruct(s0, k0, 0, convention), gens)
    return [decompose(s, convention)[1] for s in full.s]


def semilocal_labels(I: SemitoricIngredient) -> List[Tuple[Tuple[SemilocalSeries, ...], Tuple[Tuple[TaylorSeries, ...], ...]]]:
    out = []
    for mk in I.marks:
        t = cyclic_canonical(mk.label).canonical
        out.append((tuple(SemilocalSeries.of(s) for s in t.s), t.g))
    return out


QUARTER_TURN = Fraction(1, 4)


@dataclass(frozen=True)
class ClassicalMark:
    """Classical data of one focus-focus value.

    ``series`` is the semi-local class with X and Y swapped.  The classical
    series differs from it by a quarter turn on the coefficient of the
    (swapped) Y variable; ``shift_turns`` records that shift in 2pi-units
    instead of applying it.
    """

    position: Point2
    series: TaylorSeries
    height: Fraction
    twisting_index: int
    epsilon: int
    reanchored: bool = False
    shift_turns: Fraction = field(default=-QUARTER_TURN)

    def shifted_series(self) -> TaylorSeries:
        """The swapped class with the quarter turn applied, in 2pi-units."""
        return self.series + TaylorSeries({(0, 1): self.shift_turns}, self.series.degree)


@dataclass(frozen=True)
class ClassicalInvariants:
    n_ff: int
    polygon: Polygon
    marks: Tuple[ClassicalMark, ...]


def classical_invariants(I: SemitoricIngredient) -> ClassicalInvariants:
    """The five invariants of the simple case.

    A line whose lower index is neither 0 nor -1 is first re-anchored to 0,
    which adds its index to the X-coefficient of the action series.
    """
    for mk in I.marks:
        if mk.multiplicity != 1:
            raise PreconditionError(f"mark {mk.position} has multiplicity {mk.multiplicity}; the input is not simple")
    for a in range(1, I.n_lines + 1):
        count = len(I.marks_on(a))
        if count != 1:
            raise PreconditionError(
                f"line {a} (x = {format_rational(I.cfg.position(a))}) carries {count} marks; the input is not simple"
            )
    hs = heights(I)
    out = []
    for mk, h in zip(I.marks, hs):
        a = I.line_of(mk)
        w = I.w[a - 1]
        s = mk.label.s[0]
        c10 = s.coeff(1, 0)
        if w in (0, -1):
            eps, reanchored = (1 if w == 0 else -1), False
        else:
            eps, reanchored = 1, True
            c10 += w
        k = floor(c10 - QUARTER_TURN) + (eps - 1) // 2
        out.append(ClassicalMark(mk.position, SemilocalSeries.of(s).representative.swap_xy(), h, k, eps, reanchored))
    return ClassicalInvariants(I.n_lines, I.polygon, tuple(out))
