"""Built-in example ingredients.

Mark heights and Taylor labels here are placeholders: they satisfy every
admissibility condition but are not computed from any actual system.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .affine_group import LineConfig
from .document import IngredientDocument
from .hp import check_s1
from .invariant import MarkedPoint, SemitoricIngredient
from .polygon import Polygon
from .rational import RationalLike, as_fraction
from .taylor import DEFAULT_DEGREE, TaylorSeries, TaylorTuple, complete_from_generators

HP_VERTICES = ((-2, -1), (0, 1), (2, 1), (0, -1))
HP_WALL_INDEX = -1
HP_NEAR = Fraction(1, 10)


def _series(terms, degree: int, flavor: str = "action") -> TaylorSeries:
    return TaylorSeries(terms, degree, flavor)


def placeholder_label(y: RationalLike, m: int, seed: int = 0, degree: int = DEFAULT_DEGREE) -> TaylorTuple:
    """A relation-satisfying label with constant term ``y``, built from generators."""
    y = as_fraction(y)
    s0 = _series({(0, 0): y, (1, 0): Fraction(1 + seed, 3), (0, 1): 1, (1, 1): Fraction(1, 2), (0, 2): Fraction(-1, 5 + seed)}, degree)
    gens = [
        _series({(0, 1): mu + 2, (1, 1): Fraction(1, mu + 2 + seed), (0, 2): Fraction(-1, 3)}, degree, "transition")
        for mu in range(m - 1)
    ]
    return complete_from_generators(s0, gens)


def toric_square(side: int = 2) -> IngredientDocument:
    poly = Polygon([(0, 0), (side, 0), (side, side), (0, side)])
    return IngredientDocument(SemitoricIngredient(poly, LineConfig(), (), ()), DEFAULT_DEGREE, False)


def hp_example(s1: RationalLike, variant: str, degree: int = DEFAULT_DEGREE) -> IngredientDocument:
    """Equal-radius spin family near ``s1 = 1/2``.

    Variant ``b`` (``s1 = 1/2``) has one doubly pinched fiber over ``(0, 0)``.
    Variant ``a`` (``0 < |s1 - 1/2| <= 1/10``) has two simple fibers on the
    same line, placed at heights ``-+|2 s1 - 1|``.
    """
    s1 = check_s1(s1)
    eps = s1 - Fraction(1, 2)
    if variant == "b":
        if eps:
            raise ValueError("variant b needs s1 = 1/2")
        marks = (MarkedPoint((0, 0), 2, placeholder_label(0, 2, degree=degree)),)
    elif variant == "a":
        if not 0 < abs(eps) <= HP_NEAR:
            raise ValueError(f"variant a needs 0 < |s1 - 1/2| <= {HP_NEAR}")
        y = 2 * abs(eps)
        marks = (
            MarkedPoint((0, -y), 1, placeholder_label(-y, 1, seed=0, degree=degree)),
            MarkedPoint((0, y), 1, placeholder_label(y, 1, seed=1, degree=degree)),
        )
    else:
        raise ValueError(f"unknown variant {variant!r}; expected 'a' or 'b'")
    cfg = LineConfig.of(0)
    I = SemitoricIngredient(Polygon(HP_VERTICES, cfg.j), cfg, (HP_WALL_INDEX,), marks)
    return IngredientDocument(I, degree, True)


FIG2_LINES = (1, 2, 3)
FIG2_WALLS = (-2, 1, -4)
FIG2_VERTICES = (
    (0, 0), (1, -3), (2, -4), (3, -6), (4, -3),
    (4, 1), (3, 3), (2, 4), (1, 2), (0, 1),
)
FIG2_MARKS = (((1, 0), 1), ((2, -1), 1), ((2, 1), 1), ((3, -2), 5))


def fig2(degree: int = 6) -> IngredientDocument:
    """Three lines, lower indices (-2, 1, -4), four marks, a 5-fold fiber on the last line."""
    cfg = LineConfig(FIG2_LINES)
    marks = tuple(
        MarkedPoint(pos, m, placeholder_label(pos[1], m, seed=i, degree=degree))
        for i, (pos, m) in enumerate(FIG2_MARKS)
    )
    I = SemitoricIngredient(Polygon(FIG2_VERTICES, cfg.j), cfg, FIG2_WALLS, marks)
    return IngredientDocument(I, degree, True)


def simple_chain(walls: Sequence[int] = (0, 0), degree: int = 4) -> IngredientDocument:
    """A simple ingredient: two upward cuts, one mark each, on a convex hexagon."""
    cfg = LineConfig((1, 2))
    poly = Polygon([(0, 0), (3, 0), (3, 2), (2, 3), (1, 3), (0, 2)], cfg.j)
    marks = (
        MarkedPoint((1, 1), 1, placeholder_label(1, 1, seed=0, degree=degree)),
        MarkedPoint((2, 1), 1, placeholder_label(1, 1, seed=1, degree=degree)),
    )
    I = SemitoricIngredient(poly, cfg, tuple(walls), marks)
    return IngredientDocument(I, degree, True)
