"""Exact computations with the complete invariant of semitoric systems."""

from importlib import resources

from .affine_group import GroupElement, LineConfig, apply_point, compose, inverse
from .document import IngredientDocument, parse, serialize
from .errors import SemitoricError
from .invariant import (
    MarkedPoint,
    SemitoricIngredient,
    act,
    canonicalize,
    classical_invariants,
    heights,
    orbits_equal,
    semilocal_labels,
    twisting_indices,
    validate,
)
from .polygon import Polygon
from .taylor import TaylorSeries, TaylorTuple

__version__ = "0.1.0"


def data_path(name: str):
    """Path of a bundled fixture document, e.g. ``data_path("fig2.json")``."""
    return resources.files(__name__) / "data" / name


__all__ = [
    "GroupElement",
    "IngredientDocument",
    "LineConfig",
    "MarkedPoint",
    "Polygon",
    "SemitoricError",
    "SemitoricIngredient",
    "TaylorSeries",
    "TaylorTuple",
    "act",
    "apply_point",
    "canonicalize",
    "classical_invariants",
    "compose",
    "data_path",
    "heights",
    "inverse",
    "orbits_equal",
    "parse",
    "semilocal_labels",
    "serialize",
    "twisting_indices",
    "validate",
]
