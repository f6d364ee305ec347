from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from semitoric.errors import InvertibilityError
from semitoric.taylor import (
    ALTERNATE,
    STANDARD,
    TRANSITION,
    SemilocalSeries,
    TaylorSeries,
    TaylorTuple,
    check_relations,
    complete_from_generators,
    compose_y,
    cyclic_canonical,
    decompose,
    graded_exponents,
    invert_y,
    psi,
    reconstruct,
)

from .strategies import series, transition_series

X = TaylorSeries.X(8)
Y = TaylorSeries.Y(8)


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def test_graded_order():
    assert graded_exponents(2) == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]


def test_arithmetic_and_truncation():
    s = (X + Y) ** 2
    assert s == TaylorSeries({(2, 0): 1, (1, 1): 2, (0, 2): 1}, 8)
    assert (Y ** 9).is_zero()
    assert str(X - 2 * Y + Fraction(1, 3)) == "1/3 - 2*Y + X"


def test_invert_y_plus_y_squared():
    inv = invert_y(Y + Y ** 2)
    assert inv.truncate(3) == (Y - Y ** 2 + 2 * Y ** 3).truncate(3)
    # the branch (-1 + sqrt(1 + 4Y)) / 2 has Catalan coefficients with alternating signs
    for n in range(1, 9):
        assert inv.coeff(0, n) == (-1) ** (n - 1) * catalan(n - 1)


def test_invert_y_rejects_bad_series():
    with pytest.raises(InvertibilityError):
        invert_y(Y + 1)
    with pytest.raises(InvertibilityError):
        invert_y(X + Y ** 2)
    with pytest.raises(InvertibilityError):
        invert_y(-Y)


def test_compose_examples():
    assert compose_y(Y + X * Y, 2 * Y) == 2 * Y + 2 * X * Y
    assert compose_y(X + Y ** 2, Y + X).truncate(2) == (X + X ** 2 + 2 * X * Y + Y ** 2).truncate(2)


def test_check_relations_reports_location():
    s0 = TaylorSeries({(0, 1): 1})
    t = complete_from_generators(s0, [2 * Y])
    assert check_relations(t).ok
    bad = TaylorTuple((t.s[0], t.s[1] + TaylorSeries({(2, 1): 1})), t.g)
    report = check_relations(bad)
    assert not report.ok
    assert {v.relation for v in report.violations} == {"ii"}
    assert report.violations[0].exponent == (2, 1)


def test_complete_m2_by_hand():
    t = complete_from_generators(TaylorSeries({(0, 1): 1}), [2 * Y])
    assert t.s[1] == TaylorSeries({(0, 1): Fraction(1, 2)})
    assert t.g[1][0] == Fraction(1, 2) * Y


def test_all_series_share_the_constant():
    t = complete_from_generators(TaylorSeries({(0, 0): 3, (0, 1): 1, (1, 0): 1}), [Y + X * Y, 2 * Y - Y ** 2])
    assert {s.constant_term for s in t.s} == {3}


@settings(max_examples=40, deadline=None)
@given(series(4, constant=False), series(4, constant=False), series(4, constant=False))
def test_compose_is_associative(f, g, h):
    assert compose_y(f, compose_y(g, h)) == compose_y(compose_y(f, g), h)


@settings(max_examples=40, deadline=None)
@given(transition_series(5))
def test_invert_is_two_sided(g):
    inv = invert_y(g)
    y = TaylorSeries.Y(5)
    assert compose_y(g, inv) == y
    assert compose_y(inv, g) == y


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([1, 2, 3, 5]), st.data())
def test_completion_satisfies_relations(m, data):
    s0 = data.draw(series(4))
    gens = [data.draw(transition_series(4)) for _ in range(m - 1)]
    t = complete_from_generators(s0, gens)
    assert check_relations(TaylorTuple(t.s, t.g)).ok
    assert t.generators() == tuple(g.with_flavor(TRANSITION) for g in gens)
    assert {s.constant_term for s in t.s} == {s0.constant_term}


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.data())
def test_cyclic_canonical_ignores_rotation(m, data):
    t = complete_from_generators(data.draw(series(3)), [data.draw(transition_series(3)) for _ in range(m - 1)])
    z = data.draw(st.integers(0, 10))
    rotated = t.rotate(z)
    assert check_relations(TaylorTuple(rotated.s, rotated.g)).ok
    assert cyclic_canonical(rotated).canonical == cyclic_canonical(t).canonical


def test_decompose_example():
    s = TaylorSeries({(1, 0): Fraction(23, 10), (0, 0): 5, (0, 1): 1})
    cls, k, c = decompose(s)
    assert cls == SemilocalSeries(TaylorSeries({(1, 0): Fraction(3, 10), (0, 1): 1}))
    assert (k, c) == (2, 5)
    assert decompose(TaylorSeries())[1:] == (0, 0)
    assert decompose(s, ALTERNATE)[1] == 2


def test_alternate_window():
    cls = SemilocalSeries.of(TaylorSeries({(1, 0): Fraction(1, 8)}))
    assert psi(cls, STANDARD).coeff(1, 0) == Fraction(1, 8)
    assert psi(cls, ALTERNATE).coeff(1, 0) == Fraction(9, 8)


@given(series(4), st.sampled_from([STANDARD, ALTERNATE]))
def test_decompose_round_trip(s, convention):
    assert reconstruct(*decompose(s, convention), convention) == s


@given(series(4), st.integers(-9, 9), st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5)))
def test_reconstruct_round_trip(s, k, c):
    cls = SemilocalSeries.of(s)
    assert decompose(reconstruct(cls, k, c)) == (cls, k, c)
