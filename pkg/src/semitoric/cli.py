"""Command line interface.

Exit codes: 0 success or true, 1 false or validation failure, 2 usage or
precondition error, 3 unreadable document.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from typing import List, Optional

from . import fixtures
from .affine_group import parse_element
from .document import IngredientDocument, load, serialize, with_ingredient
from .errors import ParseError, PreconditionError, SemitoricError, ValidationError
from .hp import sample_hp
from .invariant import act, canonicalize, classical_invariants, orbits_equal, validate
from .polygon import wall_ladder
from .rational import format_rational, parse_rational
from .render import RenderOptions, render_svg

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 3


class _Usage(Exception):
    pass


def write_atomic(path: str, text: str) -> None:
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".semitoric-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _rational_arg(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _cut_arg(text: str):
    try:
        a, z = text.split(":")
        return int(a), int(z)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LINE:POWER, got {text!r}") from None


def _load(path: str) -> IngredientDocument:
    try:
        return load(path)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def cmd_validate(args) -> int:
    report = validate(_load(args.file).ingredient)
    print(report)
    print("valid" if report.ok else "invalid")
    return EXIT_OK if report.ok else EXIT_FALSE


def cmd_canon(args) -> int:
    doc = _load(args.file)
    _emit(serialize(with_ingredient(doc, canonicalize(doc.ingredient))), args.output)
    return EXIT_OK


def cmd_eq(args) -> int:
    docs = [_load(args.file1), _load(args.file2)]
    for path, doc in zip((args.file1, args.file2), docs):
        report = validate(doc.ingredient)
        if not report.ok:
            print(f"{path} is not a valid ingredient:\n{report}", file=sys.stderr)
            return EXIT_FALSE
    same = orbits_equal(docs[0].ingredient, docs[1].ingredient)
    print("true" if same else "false")
    return EXIT_OK if same else EXIT_FALSE


def cmd_act(args) -> int:
    doc = _load(args.file)
    g = parse_element(doc.ingredient.n_lines, args.T, args.t, args.shift)
    _emit(serialize(with_ingredient(doc, act(g, doc.ingredient))), args.output)
    return EXIT_OK


def cmd_extract(args) -> int:
    doc = _load(args.file)
    report = validate(doc.ingredient)
    if not report.ok:
        raise ValidationError("document is not a valid ingredient", report)
    inv = classical_invariants(doc.ingredient)
    marks = []
    for mk in inv.marks:
        marks.append({
            "position": [format_rational(mk.position.x), format_rational(mk.position.y)],
            "series": [[p, q, format_rational(c)] for (p, q), c in mk.series.terms()],
            "series_shift_turns": format_rational(mk.shift_turns),
            "height": format_rational(mk.height),
            "twisting_index": mk.twisting_index,
            "epsilon": mk.epsilon,
            "reanchored": mk.reanchored,
        })
    obj = {
        "n_ff": inv.n_ff,
        "polygon": [[format_rational(v.x), format_rational(v.y)] for v in inv.polygon.vertices],
        "marks": marks,
    }
    print(json.dumps(obj, separators=(",", ":")))
    return EXIT_OK


def cmd_complete(args) -> int:
    _emit(serialize(_load(args.file)), args.output)
    return EXIT_OK


def cmd_ladder(args) -> int:
    try:
        ms = [int(v) for v in args.multiplicities.split(",") if v]
        ladder = wall_ladder(args.w, ms)
    except ValueError as exc:
        raise _Usage(str(exc)) from None
    print(",".join(str(v) for v in ladder))
    return EXIT_OK


def cmd_render(args) -> int:
    doc = _load(args.file)
    write_atomic(args.output, render_svg(doc.ingredient, RenderOptions(lattice=args.lattice)))
    return EXIT_OK


def cmd_example(args) -> int:
    try:
        if args.name == "hp":
            s1 = args.s1 if args.s1 is not None else (parse_rational("1/2") if args.variant == "b" else parse_rational("51/100"))
            doc = fixtures.hp_example(s1, args.variant)
        elif args.name == "fig2":
            doc = fixtures.fig2()
        else:
            doc = fixtures.toric_square()
    except ValueError as exc:
        raise _Usage(str(exc)) from None
    _emit(serialize(doc), args.output)
    return EXIT_OK


def cmd_sample(args) -> int:
    try:
        sample = sample_hp(args.s1, args.n)
    except ValueError as exc:
        raise _Usage(str(exc)) from None
    rows = list(sample.critical) if args.critical else list(sample.values)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", "y"])
        writer.writerows([repr(x), repr(y)] for x, y in rows)
        text = buf.getvalue()
    else:
        text = json.dumps({"s1": format_rational(sample.s1), "points": [list(r) for r in rows]}) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semitoric", description="Exact tools for semitoric ingredients.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("validate", help="check the admissibility conditions")
    c.add_argument("file")
    c.set_defaults(func=cmd_validate)

    c = sub.add_parser("canon", help="write the canonical representative")
    c.add_argument("file")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_canon)

    c = sub.add_parser("eq", help="exit 0 iff the two documents lie in one orbit")
    c.add_argument("file1")
    c.add_argument("file2")
    c.set_defaults(func=cmd_eq)

    c = sub.add_parser("act", help="apply a group element")
    c.add_argument("file")
    c.add_argument("--T", type=int, default=0, metavar="Z0", help="power of the global shear")
    c.add_argument("--t", type=_cut_arg, action="append", default=[], metavar="A:Z", help="power of the cut on line A")
    c.add_argument("--shift", type=_rational_arg, default=parse_rational("0"), metavar="P/Q")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_act)

    c = sub.add_parser("extract", help="classical invariants of a simple ingredient")
    c.add_argument("file")
    c.set_defaults(func=cmd_extract)

    c = sub.add_parser("complete", help="fill labels given by generators")
    c.add_argument("file")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_complete)

    c = sub.add_parser("ladder", help="wall indices of one line, bottom to top")
    c.add_argument("w", type=int)
    c.add_argument("multiplicities", help="comma-separated, bottom to top")
    c.set_defaults(func=cmd_ladder)

    c = sub.add_parser("render", help="draw an SVG")
    c.add_argument("file")
    c.add_argument("-o", "--output", required=True)
    c.add_argument("--lattice", action="store_true")
    c.set_defaults(func=cmd_render)

    c = sub.add_parser("example", help="print a built-in fixture")
    c.add_argument("name", choices=["hp", "fig2", "square"])
    c.add_argument("--s1", type=_rational_arg)
    c.add_argument("--variant", choices=["a", "b"], default="b")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_example)

    c = sub.add_parser("sample", help="sample the momentum map of a built-in family")
    c.add_argument("family", choices=["hp"])
    c.add_argument("--s1", type=_rational_arg, required=True)
    c.add_argument("-n", type=int, default=1000)
    c.add_argument("--format", choices=["csv", "json"], default="csv")
    c.add_argument("--critical", action="store_true", help="output the focus-focus values instead")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_sample)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.report is not None:
            print(exc.report, file=sys.stderr)
        return EXIT_FALSE
    except (PreconditionError, _Usage) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SemitoricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
