"""Integrand containers: monomial products, normalization, equal-time constants."""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import integrand_sums
from singint import (D0, ZERO, D_AT_ZERO, DDDOT_AT_ZERO, DDOT_AT_ZERO,
                     IntegrandMonomial, IntegrandSum, ValuePoly,
                     integrand_sum, mono, mul_monomials)
from singint.integrand import local_value


def test_equal_time_values():
    assert D_AT_ZERO == ValuePoly.monomial(Fraction(1, 2), w=-1)
    assert DDOT_AT_ZERO == ZERO
    assert DDDOT_AT_ZERO == ValuePoly.monomial(Fraction(1, 2), w=1) - D0


def test_local_value_folds_powers():
    assert local_value(2) == D_AT_ZERO * D_AT_ZERO
    assert local_value(0, 1, 0) == ZERO
    assert local_value(1, 0, 1) == D_AT_ZERO * DDDOT_AT_ZERO
    assert local_value() == ValuePoly.rational(1)


def test_negative_powers_rejected():
    with pytest.raises(ValueError):
        mono(-1, 0, 0, 0)
    with pytest.raises(ValueError):
        IntegrandMonomial(0, 0, 0, -2, coeff=ValuePoly.rational(1))


def test_shape_and_bare_measure():
    t = mono(1, 2, 0, 1, coeff=Fraction(3, 2))
    assert t.shape == (1, 2, 0, 1)
    assert not t.is_bare_measure
    assert mono(0, 0, 0, 0, coeff=5).is_bare_measure


def test_factors_text_elides_unit_powers():
    assert mono(2, 0, 1, 0).factors_text() == "D^2 ddD"
    assert mono(1, 1, 0, 2).factors_text() == "D dD delta^2"
    assert mono(0, 0, 0, 0).factors_text() == ""


def test_monomial_product_adds_powers_and_multiplies_coefficients():
    x = mono(1, 2, 0, 0, coeff=Fraction(1, 2))
    y = mono(0, 1, 1, 1, coeff=Fraction(4))
    z = mul_monomials(x, y)
    assert z.shape == (1, 3, 1, 1)
    assert z.coeff == ValuePoly.rational(2)
    assert x * y == z


def test_scaled_multiplies_only_the_coefficient():
    t = mono(2, 0, 0, 0, coeff=Fraction(1, 3)).scaled(D0)
    assert t.shape == (2, 0, 0, 0)
    assert t.coeff == ValuePoly.monomial(Fraction(1, 3), d0=1)


def test_normalize_merges_equal_shapes_and_drops_zeros():
    s = integrand_sum(
        mono(1, 0, 0, 0, coeff=Fraction(1, 2)),
        mono(2, 0, 0, 0, coeff=1),
        mono(1, 0, 0, 0, coeff=Fraction(1, 2)),
        mono(2, 0, 0, 0, coeff=-1),
    ).normalize()
    assert len(s) == 1
    assert s.terms[0].shape == (1, 0, 0, 0)
    assert s.terms[0].coeff == ValuePoly.rational(1)


def test_normalize_sorts_shapes_ascending():
    s = integrand_sum(
        mono(2, 0, 0, 0), mono(0, 2, 0, 0), mono(0, 0, 0, 1), mono(1, 1, 0, 0)
    ).normalize()
    assert [t.shape for t in s] == [
        (0, 0, 0, 1), (0, 2, 0, 0), (1, 1, 0, 0), (2, 0, 0, 0)]


def test_sum_arithmetic():
    x = integrand_sum(mono(1, 0, 0, 0))
    y = integrand_sum(mono(0, 2, 0, 0))
    assert (x + y).normalize() == (y + x).normalize()
    assert (x - x).normalize().is_zero
    assert x.scale(2).terms[0].coeff == ValuePoly.rational(2)
    assert (-x).terms[0].coeff == ValuePoly.rational(-1)


def test_sum_substitute_touches_every_coefficient():
    s = integrand_sum(
        mono(1, 0, 0, 0, coeff=D0),
        mono(2, 0, 0, 0, coeff=ValuePoly.monomial(1, a=1)),
    )
    bound = s.substitute({"d0": 0, "a": Fraction(1, 2)}).normalize()
    assert len(bound) == 1
    assert bound.terms[0].shape == (2, 0, 0, 0)
    assert bound.terms[0].coeff == Fraction(1, 2)


def test_equality_ignores_term_order_and_zero_terms():
    x = integrand_sum(mono(1, 0, 0, 0), mono(0, 2, 0, 0))
    y = integrand_sum(mono(0, 2, 0, 0), mono(1, 0, 0, 0), mono(3, 0, 0, 0, coeff=0))
    assert x == y
    assert hash(x) == hash(y)


@given(integrand_sums())
@settings(max_examples=200, deadline=None)
def test_normalize_idempotent_small(s):
    once = s.normalize()
    assert once.normalize() == once
    assert once == s.normalize()


@given(integrand_sums(), integrand_sums())
@settings(max_examples=150, deadline=None)
def test_normalize_respects_addition(x, y):
    assert (x + y).normalize() == (x.normalize() + y.normalize()).normalize()
