from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from padichyp import unitroot as ur
from padichyp.hypergeo import ParamTriple
from padichyp.padic import padic_from_rational

A0 = ParamTriple(F(1, 6), F(1, 6), F(5, 6))


def test_frozen_levels(frozen):
    for row in frozen["dwork_levels"]:
        a = ParamTriple(*(F(x) for x in row["params"]))
        c = ur.dwork_ratio(a, F(row["lambda"]), row["p"], 4, row["N"])
        for (s, val), ref in zip(c.levels, row["levels"]):
            assert s == ref["s"]
            assert val.valuation == ref["valuation"]
            assert val.with_precision(row["N"]).unit == ref["unit"]


def test_frozen_rhs(frozen):
    for row in frozen["kd_rhs"]:
        a = ParamTriple(*(F(x) for x in row["params"]))
        assert ur.kd_rhs(a, row["p"], row["N"]).lift() == row["residue"]
    for row in frozen["young_rhs"]:
        v = ur.young_rhs(F(row["a"]), F(row["b"]), row["p"], row["N"])
        assert v.lift() == row["residue"]


def test_lambda_zero_and_trivial_params():
    c = ur.dwork_ratio(A0, 0, 7, 4, 6)
    assert c.certified_value == padic_from_rational(1, 7, 6) and c.agreement_exponent == 6
    c = ur.dwork_ratio((0, 0, F(1, 2)), F(1, 3), 7, 3, 6)
    assert c.deepest.agreement(1) >= 6


def test_kd_rhs_symmetry_and_trivial():
    assert ur.kd_rhs((F(1, 6), F(1, 3), F(5, 6)), 7, 6) == ur.kd_rhs((F(1, 3), F(1, 6), F(5, 6)), 7, 6)
    assert ur.kd_rhs((0, 0, F(1, 2)), 7, 6).agreement(1) >= 6


def test_kd_verify_examples():
    r = ur.kd_verify(A0, 7)
    assert r.verdict == "pass" and r.agreement >= 4
    r = ur.kd_verify((0, 0, F(1, 2)), 7)
    assert r.verdict == "not applicable"
    r = ur.kd_verify((F(5, 6), F(5, 6), F(1, 6)), 7)
    assert r.verdict == "not applicable" and r.conditions["KD"]["failed_indices"] == [0]


def test_young_examples():
    r = ur.young_verify(F(1, 3), F(2, 3), 7)
    assert r.verdict == "pass"
    # mu_a odd
    assert ur.young_verify(F(1, 2), F(2, 3), 7).verdict == "not applicable"


def test_ratio_monotone_in_levels():
    exps = [ur.dwork_ratio(A0, 1, 7, s, 6).agreement_exponent for s in (2, 3, 4, 5)]
    assert exps == sorted(exps)


@settings(max_examples=15)
@given(st.integers(1, 20), st.integers(1, 6))
def test_small_lambda_matches_direct(n, d):
    lam = F(7 * n, d)
    if lam.denominator % 7 == 0:
        return
    c = ur.dwork_ratio(A0, lam, 7, 3, 6)
    assert c.deepest.agreement(ur.direct_ratio(A0, lam, 7, 60, 6)) >= 6


def test_identity_chain():
    rep = ur.xi_ratio_identity_check(A0, 7)
    assert rep.passed and rep.pi_cancelled
    assert [name for name, _ in rep.chain][-1] == "Koblitz-Diamond"
    assert all(c >= 6 for _, c in rep.chain)


def test_eta():
    e = ur.eta_singular_class(0, A0, 15)
    assert e[0] == (A0[2] - A0[1]) / A0[2]
    assert ur.riccati_residual(A0, e) == 15
    flat = ur.eta_singular_class(0, (F(1, 3), 0, F(3, 4)), 10)
    assert all(flat[i] == 0 for i in range(1, 11)) and flat[0] == 1


def test_fixed_point_trivial():
    from padichyp.padic import PadicNumber
    from padichyp.series import TruncSeries
    p = 7
    z = PadicNumber.zero(p, 6)
    zero = TruncSeries([z] * 6, 0, 5)
    C = TruncSeries([padic_from_rational(3, p, 6)] + [z] * 5, 0, 5)
    D = TruncSeries([padic_from_rational(2, p, 6)] + [z] * 5, 0, 5)
    res = ur.unit_root_fixed_point(zero, zero, C, D, p, 6)
    assert res.converged and res.iterations == 1
    assert res.eta[0].agreement(padic_from_rational(F(3, 2), p, 6)) >= 6


def test_fixed_point_against_eta():
    res, agree = ur.unit_root_check(A0, 7, 4)
    assert res.converged and agree >= 4
    finite = [v for v in res.step_valuations if v != float("inf")]
    assert all(b - a >= 1 for a, b in zip(finite, finite[1:]))


def test_search_finds_examples():
    t = ur.kd_triple_search(7)
    assert A0 in t and len(t) >= 5
    assert (F(1, 3), F(2, 3)) in ur.young_pair_search(7)
