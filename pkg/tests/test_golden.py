from fractions import Fraction
import math

import pytest
from hypothesis import given, settings, strategies as st

from icoschur.golden import (
    ONE,
    TAU,
    TAU_CONJ,
    TAU_FLOAT,
    ZERO,
    GoldenNumber,
    ScaledGoldenMatrix,
    frame_check,
    galois_conjugate,
    golden_sqrt,
    parse_golden,
)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30)
goldens = st.builds(GoldenNumber, fractions, fractions)
nonzero = goldens.filter(bool)


@settings(max_examples=1000, deadline=None)
@given(goldens, goldens, goldens)
def test_field_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + ZERO == x and x * ONE == x
    assert x - x == ZERO


@settings(max_examples=1000, deadline=None)
@given(goldens, goldens)
def test_conjugation_is_a_ring_homomorphism(x, y):
    assert galois_conjugate(x + y) == galois_conjugate(x) + galois_conjugate(y)
    assert galois_conjugate(x * y) == galois_conjugate(x) * galois_conjugate(y)
    assert galois_conjugate(galois_conjugate(x)) == x


@settings(max_examples=1000, deadline=None)
@given(nonzero)
def test_inverse(x):
    assert x * x.inverse() == ONE
    assert x / x == ONE


@settings(max_examples=300, deadline=None)
@given(goldens, goldens)
def test_norm_is_multiplicative_and_float_consistent(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert math.isclose(float(x * y), float(x) * float(y), rel_tol=1e-9, abs_tol=1e-9)


@settings(max_examples=300, deadline=None)
@given(goldens)
def test_exact_sign_matches_float(x):
    f = float(x)
    if abs(f) > 1e-9:
        assert x.sign() == (1 if f > 0 else -1)
    assert (x < ZERO) == (x.sign() < 0)


@given(goldens)
def test_text_round_trip(x):
    assert parse_golden(str(x)) == x


def test_tau_identities():
    assert TAU * TAU == TAU + 1
    assert TAU * TAU_CONJ == -1
    assert TAU + TAU_CONJ == ONE
    assert (1 + TAU) / TAU == TAU
    assert math.isclose(float(TAU), TAU_FLOAT)


def test_canonical_text():
    assert str(GoldenNumber(Fraction(1, 2), Fraction(-3, 4))) == "1/2 + -3/4*tau"
    assert str(GoldenNumber(Fraction(2, 4), 0)) == "1/2 + 0*tau"


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_rejects_floats():
    with pytest.raises(TypeError):
        TAU + 0.5


def test_golden_sqrt():
    assert golden_sqrt(GoldenNumber(16)) == GoldenNumber(4)
    assert golden_sqrt((1 + TAU) * (1 + TAU)) == 1 + TAU
    assert golden_sqrt(4 + 2 * TAU) is None
    assert golden_sqrt(GoldenNumber(-1)) is None


def test_scaled_matrix_frame_check():
    m = ScaledGoldenMatrix([[1, TAU], [-TAU, 1]], norm_squared=2 + TAU)
    assert frame_check(m)
    bad = ScaledGoldenMatrix([[1, TAU], [TAU, 1]], norm_squared=2 + TAU)
    assert not frame_check(bad)
