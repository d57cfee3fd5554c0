from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padichyp.padic import (INF, PadicNumber, PiElement, PrimeMismatch, padic_add, padic_from_rational,
                            padic_mul, vp, vp_rational)

from conftest import rationals


def test_vp():
    assert vp(250, 5) == 3
    assert vp(7, 5) == 0
    assert vp_rational(0, 5) == INF
    with pytest.raises(ValueError):
        vp(0, 5)
    assert vp_rational(Fraction(3, 49), 7) == -2


def test_embedding_examples():
    x = padic_from_rational(Fraction(1, 2), 7, 3)
    assert (x.valuation, x.unit, x.abs_precision) == (0, 172, 3)
    y = padic_from_rational(Fraction(7, 2), 7, 3)
    assert (y.valuation, y.unit) == (1, 25)
    s = padic_from_rational(3, 7, 3) + padic_from_rational(4, 7, 3)
    assert (s.valuation, s.unit) == (1, 1)


def test_digits_little_endian():
    x = padic_from_rational(Fraction(-1), 7, 4)
    assert x.digits() == [6, 6, 6, 6]
    y = padic_from_rational(Fraction(7 * 10), 7, 4)
    assert y.valuation == 1 and len(y.digits()) == 3


def test_precision_rules():
    x = PadicNumber(7, 1, 3, 5)
    y = PadicNumber(7, 2, 1, 4)
    assert (x * y).abs_precision == min(5 + 2, 4 + 1)
    assert (x + y).abs_precision == 4


def test_inexact_zero_and_exact_zero():
    z = PadicNumber.zero(5, 4)
    assert z.is_zero() and not z.is_exact_zero
    e = PadicNumber.exact_zero(5)
    assert e.is_exact_zero and e.digits() == []
    assert padic_from_rational(0, 5, 3).is_exact_zero


def test_prime_mismatch():
    with pytest.raises(PrimeMismatch):
        padic_add(padic_from_rational(1, 5, 3), padic_from_rational(1, 7, 3))


def test_pi_folding():
    a = PiElement(padic_from_rational(1, 7, 4), 3)
    b = PiElement(padic_from_rational(1, 7, 4), 5)
    c = a * b
    assert c.pi_exponent == 2
    assert c.coeff.agreement(padic_from_rational(-7, 7, 5)) >= 4
    inv = a.inverse()
    assert (a * inv).pi_exponent == 0


@given(rationals(), rationals())
def test_ring_homomorphism(x, y):
    p, N = 7, 6
    X, Y = padic_from_rational(x, p, N), padic_from_rational(y, p, N)
    if not X.is_exact_zero and not Y.is_exact_zero:
        assert (X + Y).agreement(padic_from_rational(x + y, p, N + 4)) >= (X + Y).abs_precision
        prod = padic_mul(X, Y)
        assert prod.agreement(padic_from_rational(x * y, p, N + 8)) >= prod.abs_precision


@given(rationals().filter(lambda r: r != 0))
def test_inverse(x):
    X = padic_from_rational(x, 5, 6)
    one = X * X.inverse()
    assert one.agreement(1) >= one.abs_precision


@given(rationals().filter(lambda r: r != 0))
def test_digits_length(x):
    X = padic_from_rational(x, 7, 6)
    assert len(X.digits()) == X.abs_precision - X.valuation
