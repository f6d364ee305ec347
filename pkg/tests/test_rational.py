from fractions import Fraction

import pytest
from hypothesis import given

from semitoric.rational import Interval, as_fraction, format_rational, parse_rational

from .strategies import rationals


@pytest.mark.parametrize("text, value", [("0", 0), ("-3", -3), ("7/2", Fraction(7, 2)), ("-1/12", Fraction(-1, 12))])
def test_parse(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["2/4", "1/0", "-0", "+1", "01", "1/-2", " 1", "1.5", ""])
def test_parse_rejects_non_canonical(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_lenient_parse():
    assert parse_rational(" 2/4 ", strict=False) == Fraction(1, 2)


def test_floats_and_bools_are_refused():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        as_fraction(True)


def test_interval_must_be_nonempty():
    with pytest.raises(ValueError):
        Interval(1, 1)


@given(rationals)
def test_format_parse_round_trip(q):
    assert parse_rational(format_rational(q)) == q
