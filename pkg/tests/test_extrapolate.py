import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyppoisson.errors import NoConvergence
from hyppoisson.extrapolate import richardson_limit


def test_polynomial_is_exact():
    # four samples: both the full and the reduced fit reproduce a quadratic
    hs = [0.1, 0.05, 0.025, 0.0125]
    f = lambda h: 2.0 - 3 * h + 7 * h * h
    res = richardson_limit(hs, [f(h) for h in hs])
    assert res.value == pytest.approx(2.0, abs=1e-13)
    assert res.spread < 1e-12


def test_fractional_exponent():
    hs = [0.19, 0.0199, 0.001999]
    e = 1.5 + 0.5j
    f = lambda h: 1 + 2j + 0.3 * h + (0.7 - 0.1j) * h ** e
    res = richardson_limit(hs, [f(h) for h in hs], exponents=[1, e, 2])
    assert abs(res.value - (1 + 2j)) < 1e-13


def test_unstable_sequence_raises():
    hs = [0.5, 0.25, 0.125]
    with pytest.raises(NoConvergence):
        richardson_limit(hs, [np.sin(1 / h) for h in hs], rtol=1e-6)


def test_bad_input():
    with pytest.raises(ValueError):
        richardson_limit([0.1, 0.1], [1, 2])
    with pytest.raises(ValueError):
        richardson_limit([0.1], [1, 2])


@settings(max_examples=50, deadline=None)
@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5))
def test_linear_plus_quadratic_recovered(c0, c1, c2):
    hs = [0.2, 0.1, 0.05, 0.025]
    res = richardson_limit(hs, [c0 + c1 * h + c2 * h * h for h in hs], atol=1e-9)
    assert res.value == pytest.approx(c0, abs=1e-11)
