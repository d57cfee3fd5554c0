from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from padichyp.hypergeo import (ParameterError, ParamTriple, PeriodOverflow, ResonanceError,
                               check_ode, condition_check, local_solution_at_ordinary, orbit,
                               ordinary_ode_residual, prime_step, solution_matrix)

from conftest import generic_triples


def test_prime_step():
    assert prime_step(F(1, 3), 7) == (F(1, 3), 2)
    a, mu = prime_step(F(1, 6), 7)
    assert 7 * a - F(1, 6) == mu and 0 <= mu < 7
    with pytest.raises(ParameterError):
        prime_step(F(1, 7), 7)


def test_orbit_period():
    rec = orbit(F(1, 3), 11)
    assert rec.period == 2 and rec.mu_sequence == [7, 3]
    with pytest.raises(PeriodOverflow):
        orbit(F(1, 23), 5, f_max=2)


def test_conditions_examples():
    assert condition_check("KD", (F(1, 6), F(1, 6), F(5, 6)), 7).passed
    assert not condition_check("KD", (0, 0, F(1, 2)), 7).passed
    assert condition_check("Young", (F(1, 3), F(2, 3)), 7).passed
    rep = condition_check("T2", (F(5, 6), F(5, 6), F(1, 6)), 7)
    assert not rep.passed and rep.failed_indices == [0]


def test_constant_terms():
    a = ParamTriple(F(1, 3), F(2, 5), F(3, 7))
    _, U0 = solution_matrix(0, a, 4)
    assert U0.const() == [[a[2] - a[1], a[2]], [1 - a[2], 0]]
    _, U1 = solution_matrix(1, a, 4)
    s = a[0] + a[1] - a[2]
    assert U1.const()[0] == [s, a[0] - a[2]]


def test_resonance_guard():
    with pytest.raises(ResonanceError):
        solution_matrix(0, (F(1, 3), F(1, 5), F(2)), 10)


@settings(max_examples=8)
@given(generic_triples())
def test_ode_residuals(t):
    for z in (0, 1, "inf"):
        assert check_ode(z, t, 20) == 21


def test_ordinary_point():
    a = (F(1, 3), F(2, 5), F(3, 7))
    C = local_solution_at_ordinary(F(1, 2), a, 12)
    assert ordinary_ode_residual(F(1, 2), a, C) > 11
