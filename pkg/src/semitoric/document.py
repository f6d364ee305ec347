"""Canonical JSON documents for ingredients.

Rationals are reduced ``"p/q"`` strings, series are lists of
``[p, q, "coeff"]`` triples sorted by exponent, keys come in a fixed order
and there is no insignificant whitespace, so serialising a parsed document
is byte-stable.  A label may be given in full or as the first action series
plus the generators ``g[mu][mu+1]``; partial labels are completed on parse.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Dict, List

from .affine_group import LineConfig
from .errors import (
    ConfigurationError,
    DocumentSyntaxError,
    GeometryError,
    InvertibilityError,
    SchemaError,
    VersionError,
)
from .invariant import MarkedPoint, SemitoricIngredient
from .polygon import Polygon
from .rational import format_rational, parse_rational
from .taylor import (
    ACTION,
    DEFAULT_DEGREE,
    TRANSITION,
    TaylorSeries,
    TaylorTuple,
    complete_from_generators,
)

FORMAT_VERSION = "semitoric/1"
TOP_KEYS = (
    "format_version",
    "degree_cap",
    "placeholder_labels",
    "polygon",
    "lines",
    "lower_wall_indices",
    "marks",
)
MARK_KEYS = ("position", "multiplicity", "label")


@dataclass(frozen=True)
class IngredientDocument:
    ingredient: SemitoricIngredient
    degree_cap: int = DEFAULT_DEGREE
    placeholder_labels: bool = False


# parsing


def _reject_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ValueError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _object(value: Any, where: str, required, optional=()) -> Dict[str, Any]:
    if not isinstance(value, dict):
        raise SchemaError(where, "expected an object")
    for k in value:
        if k not in required and k not in optional:
            raise SchemaError(f"{where}.{k}", "unknown key")
    for k in required:
        if k not in value:
            raise SchemaError(f"{where}.{k}", "missing")
    return value


def _list(value: Any, where: str) -> List[Any]:
    if not isinstance(value, list):
        raise SchemaError(where, "expected a list")
    return value


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(where, "expected an integer")
    return value


def _rational(value: Any, where: str):
    if not isinstance(value, str):
        raise SchemaError(where, 'expected a rational string "p" or "p/q"')
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise SchemaError(where, str(exc)) from None


def _point(value: Any, where: str):
    pair = _list(value, where)
    if len(pair) != 2:
        raise SchemaError(where, "expected a pair of rationals")
    return (_rational(pair[0], f"{where}[0]"), _rational(pair[1], f"{where}[1]"))


def _series(value: Any, where: str, degree: int, flavor: str) -> TaylorSeries:
    seen = {}
    for i, term in enumerate(_list(value, where)):
        t = f"{where}[{i}]"
        term = _list(term, t)
        if len(term) != 3:
            raise SchemaError(t, 'expected [p, q, "coeff"]')
        p, q = _int(term[0], f"{t}[0]"), _int(term[1], f"{t}[1]")
        if p < 0 or q < 0:
            raise SchemaError(t, "negative exponent")
        if p + q > degree:
            raise SchemaError(t, f"total degree {p + q} exceeds the degree cap {degree}")
        if (p, q) in seen:
            raise SchemaError(t, f"repeated exponent ({p}, {q})")
        seen[(p, q)] = _rational(term[2], f"{t}[2]")
    return TaylorSeries(seen, degree, flavor)


def _label(value: Any, where: str, m: int, degree: int) -> TaylorTuple:
    if isinstance(value, dict) and "action0" in value:
        obj = _object(value, where, ("action0", "generators"))
        s0 = _series(obj["action0"], f"{where}.action0", degree, ACTION)
        gens = [
            _series(g, f"{where}.generators[{i}]", degree, TRANSITION)
            for i, g in enumerate(_list(obj["generators"], f"{where}.generators"))
        ]
        if len(gens) != m - 1:
            raise SchemaError(f"{where}.generators", f"expected {m - 1} generators for multiplicity {m}")
        try:
            return complete_from_generators(s0, gens)
        except InvertibilityError as exc:
            raise SchemaError(f"{where}.generators", str(exc)) from None
    obj = _object(value, where, ("action", "transition"))
    action = _list(obj["action"], f"{where}.action")
    rows = _list(obj["transition"], f"{where}.transition")
    if len(action) != m or len(rows) != m:
        raise SchemaError(where, f"expected {m} action series and a {m}x{m} transition array")
    s = tuple(_series(x, f"{where}.action[{i}]", degree, ACTION) for i, x in enumerate(action))
    g = []
    for i, row in enumerate(rows):
        row = _list(row, f"{where}.transition[{i}]")
        if len(row) != m:
            raise SchemaError(f"{where}.transition[{i}]", f"expected {m} series")
        g.append(tuple(_series(x, f"{where}.transition[{i}][{k}]", degree, TRANSITION) for k, x in enumerate(row)))
    return TaylorTuple(s, tuple(g))


def parse(text: str) -> IngredientDocument:
    try:
        raw = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    except ValueError as exc:
        raise SchemaError("document", str(exc)) from None
    if not isinstance(raw, dict):
        raise SchemaError("document", "expected an object")
    version = raw.get("format_version")
    if version != FORMAT_VERSION:
        raise VersionError(f"unsupported format_version {version!r}; expected {FORMAT_VERSION!r}")
    doc = _object(raw, "document", TOP_KEYS)
    degree = _int(doc["degree_cap"], "degree_cap")
    if degree < 1:
        raise SchemaError("degree_cap", "must be positive")
    placeholder = doc["placeholder_labels"]
    if not isinstance(placeholder, bool):
        raise SchemaError("placeholder_labels", "expected true or false")

    vertices = [_point(v, f"polygon[{i}]") for i, v in enumerate(_list(doc["polygon"], "polygon"))]
    lines = [_rational(v, f"lines[{i}]") for i, v in enumerate(_list(doc["lines"], "lines"))]
    w = [_int(v, f"lower_wall_indices[{i}]") for i, v in enumerate(_list(doc["lower_wall_indices"], "lower_wall_indices"))]
    try:
        cfg = LineConfig(tuple(lines))
    except ConfigurationError as exc:
        raise SchemaError("lines", str(exc)) from None
    try:
        poly = Polygon(vertices, cfg.j)
    except GeometryError as exc:
        raise SchemaError("polygon", str(exc)) from None
    if len(w) != len(lines):
        raise SchemaError("lower_wall_indices", f"expected {len(lines)} entries")

    marks = []
    for i, mk in enumerate(_list(doc["marks"], "marks")):
        where = f"marks[{i}]"
        mk = _object(mk, where, MARK_KEYS)
        pos = _point(mk["position"], f"{where}.position")
        m = _int(mk["multiplicity"], f"{where}.multiplicity")
        if m < 1:
            raise SchemaError(f"{where}.multiplicity", "must be positive")
        label = _label(mk["label"], f"{where}.label", m, degree)
        marks.append(MarkedPoint(pos, m, label))
    return IngredientDocument(SemitoricIngredient(poly, cfg, tuple(w), tuple(marks)), degree, placeholder)


# serialisation


def _dump_series(s: TaylorSeries) -> List[Any]:
    return [[p, q, format_rational(c)] for (p, q), c in s.terms()]


def _dump_point(p) -> List[str]:
    return [format_rational(p[0]), format_rational(p[1])]


def to_json_object(doc: IngredientDocument) -> Dict[str, Any]:
    I = doc.ingredient
    marks = []
    for mk in I.marks:
        label = mk.label.truncate(doc.degree_cap) if mk.label.degree > doc.degree_cap else mk.label
        marks.append({
            "position": _dump_point(mk.position),
            "multiplicity": mk.multiplicity,
            "label": {
                "action": [_dump_series(s) for s in label.s],
                "transition": [[_dump_series(g) for g in row] for row in label.g],
            },
        })
    return {
        "format_version": FORMAT_VERSION,
        "degree_cap": doc.degree_cap,
        "placeholder_labels": doc.placeholder_labels,
        "polygon": [_dump_point(v) for v in I.polygon.vertices],
        "lines": [format_rational(j) for j in I.cfg.j],
        "lower_wall_indices": list(I.w),
        "marks": marks,
    }


def serialize(doc: IngredientDocument) -> str:
    return json.dumps(to_json_object(doc), separators=(",", ":"), ensure_ascii=False) + "\n"


def load(path) -> IngredientDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def with_ingredient(doc: IngredientDocument, ingredient: SemitoricIngredient) -> IngredientDocument:
    return IngredientDocument(ingredient, doc.degree_cap, doc.placeholder_labels)
