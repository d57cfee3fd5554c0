from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padichyp.gamma import (DomainError, GammaPair, gamma_p, gamma_p_integer,
                            gamma_p_reflection_check, gamma_symbol, symbol_path,
                            symbol_reduction_independence_check, symplectic_check)

from conftest import zp_rationals


def test_integer_values():
    assert gamma_p(1, 7, 4).lift() == 7 ** 4 - 1
    assert gamma_p(2, 7, 4).lift() == 1
    assert gamma_p(6, 5, 4).lift() == 24


def test_frozen_direct_product(frozen):
    for row in frozen["gamma_p"]:
        x = Fraction(row["x"])
        assert gamma_p(x, row["p"], row["N"]).lift() == row["residue"], row


@pytest.mark.parametrize("p", [3, 5, 7, 13])
@pytest.mark.parametrize("K", [1, 3, 6])
def test_block_equals_direct(p, K):
    for m in list(range(0, 60)) + [p ** 3 + 5, 2 * p ** 4 + 1]:
        assert gamma_p_integer(m, p, K, "block") == gamma_p_integer(m, p, K, "direct")


def test_domain():
    with pytest.raises(DomainError):
        gamma_p(Fraction(1, 7), 7, 3)


@given(zp_rationals(7))
def test_reflection(x):
    assert gamma_p_reflection_check(x, 7, 6) >= 6


@given(zp_rationals(5), zp_rationals(5))
def test_continuity(x, y):
    # Gamma_p is 1-Lipschitz on Z_p
    from padichyp.padic import vp_rational
    d = vp_rational(x - y, 5)
    agree = gamma_p(x, 5, 6).agreement(gamma_p(y, 5, 6))
    assert agree >= min(d, 6)


def test_symbol_window():
    # in the window, gamma_p(x, y) = pi^mu Gamma_p(x)
    pair = GammaPair(Fraction(1, 6), Fraction(1, 6), 7)
    assert pair.mu == 1
    g = gamma_symbol(pair, N=5)
    assert g.pi_exponent == 1
    assert g.coeff.agreement(gamma_p(Fraction(1, 6), 7, 5)) >= 5


@given(st.integers(-20, 20), st.sampled_from([2, 3, 4, 5, 6]), st.integers(-21, 21))
def test_symplectic_and_paths(n, d, shift):
    p = 7
    y = Fraction(n, d)
    pair = GammaPair(p * y - shift, y, p)
    try:
        assert symplectic_check(pair, 6) >= 6
        assert symbol_reduction_independence_check(pair, 6)
    except DomainError:
        pass


def test_path_shape():
    pair = GammaPair(Fraction(1, 3) - 9, Fraction(1, 3), 7)
    path = symbol_path(pair, 0)
    assert path.n == 0 and 0 <= path.pi_exp
