import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from padichyp import _backend


def test_backend_selected():
    assert _backend.BACKEND in ("compiled", "python")


@pytest.mark.skipif(_backend.BACKEND != "compiled", reason="extension not built")
@settings(max_examples=40)
@given(st.sampled_from([5, 7, 11, 13]), st.integers(1, 11), st.integers(2, 12),
       st.integers(1, 11), st.integers(2, 12), st.integers(1, 11), st.integers(2, 12),
       st.integers(0, 2), st.integers(1, 50))
def test_partial_sums_equivalent(p, an, ad, bn, bd, cn, cd, lv, lu):
    if any(d % p == 0 for d in (ad, bd, cd)) or lu % p == 0:
        return
    args = (an, ad, bn, bd, -cn, cd, lv, lu, p, 6, 4, [p, p * p, p ** 3])
    try:
        want = _backend.hyper_partial_sums(*args, backend="python")
    except (ZeroDivisionError, OverflowError) as exc:
        with pytest.raises(type(exc)):
            _backend.hyper_partial_sums(*args)
        return
    assert _backend.hyper_partial_sums(*args) == want


@pytest.mark.skipif(_backend.BACKEND != "compiled", reason="extension not built")
def test_gamma_direct_equivalent():
    for p in (3, 5, 7, 13):
        for m in (0, 1, 2, 17, 500, 12345):
            assert _backend.gamma_p_direct(m, p, 6) == _backend.gamma_p_direct(m, p, 6, backend="python")


def test_forced_python_backend():
    env = dict(os.environ, PADICHYP_BACKEND="python")
    out = subprocess.run([sys.executable, "-c", "import padichyp; print(padichyp.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
