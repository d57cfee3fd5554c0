from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padichyp.series import (VAR_INF, VAR_ONE, VAR_ZERO, RationalFunction, SeriesError,
                             SeriesMatrix2, TruncSeries, first_discrepancy, pade, series_substitute)

coeff = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))


def series(order=8):
    return st.lists(coeff, min_size=order + 1, max_size=order + 1).map(
        lambda c: TruncSeries(c, 0, order))


def test_geometric_inverse():
    f = TruncSeries([1, -1], 0, 10)
    g = f.inverse()
    assert [g[i] for i in range(11)] == [1] * 11


def test_order_min_rule():
    f = TruncSeries([1, 2, 3], 0, 5)
    g = TruncSeries([1], 0, 3)
    assert (f * g).order == 3
    assert (f + g).order == 3


def test_laurent_inverse():
    f = TruncSeries([0, 2, 1], 0, 6)
    g = f.inverse()
    assert g.lower == -1 and g[-1] == Fraction(1, 2)


def test_beyond_order_raises():
    f = TruncSeries([1], 0, 3)
    with pytest.raises(SeriesError):
        f[4]


def test_substitution_retags():
    f = TruncSeries([1, 2], 0, 4, VAR_ZERO)
    assert series_substitute(f, "one_minus").var == VAR_ONE
    assert series_substitute(f, "reciprocal").var == VAR_INF
    g = series_substitute(f, "power_p", 3)
    assert g.order == 14 and g[3] == 2 and g[1] == 0


def test_mixed_variables_rejected():
    with pytest.raises(SeriesError):
        TruncSeries([1], 0, 3, VAR_ZERO) + TruncSeries([1], 0, 3, VAR_ONE)


def test_rational_function_series_and_pade():
    r = RationalFunction([0, 1], [1, -1])        # lambda / (1 - lambda)
    s = r.series(12)
    assert [s[i] for i in range(13)] == [0] + [1] * 12
    back = pade(s, 2)
    assert back is not None and back.equals(r)


@given(series(), series())
def test_product_commutes(f, g):
    assert first_discrepancy(f * g, g * f) > 8


@given(series().filter(lambda f: f[0] != 0))
def test_inverse_identity(f):
    one = f * f.inverse()
    assert first_discrepancy(one, TruncSeries.constant(1, 8)) > 8


def test_matrix_inverse():
    A = SeriesMatrix2(((TruncSeries([1, 1], 0, 6), TruncSeries([0, 2], 0, 6)),
                       (TruncSeries([3], 0, 6), TruncSeries([1, 0, 1], 0, 6))))
    from padichyp.series import matrix_first_discrepancy
    assert matrix_first_discrepancy(A * A.inverse(), SeriesMatrix2.identity(6)) > 6
