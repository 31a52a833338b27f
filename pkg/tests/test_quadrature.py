import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedmeans.errors import ToleranceNotMetError
from mixedmeans.quadrature import (QuadratureParams, circle_mean, integrate_interval,
                                   integrate_weighted_to_one, panels_toward_one)


def test_panels_cover_interval_and_shrink_toward_one():
    pts = panels_toward_one(0.0, 1 - 1e-6)
    assert pts[0] == 0.0 and pts[-1] == 1 - 1e-6
    gaps = [1 - p for p in pts[1:]]
    assert all(g1 < g0 for g0, g1 in zip(gaps, gaps[1:]))
    widths = np.diff(pts)
    assert all(w > 0 for w in widths)


@settings(max_examples=30, deadline=None)
@given(st.floats(-5, 3), st.floats(0.1, 1 - 1e-6))
def test_weighted_power_integral_matches_mpmath(alpha, x):
    f = lambda s: s ** 1.5 * (1 - s) ** alpha
    v, _ = integrate_interval(f, 0.0, x, QuadratureParams(rtol=1e-12, atol=1e-300))
    ref = float(mpmath.quad(lambda s: s ** 1.5 * (1 - s) ** alpha, [0, x]))
    assert v == pytest.approx(ref, rel=1e-10)


def test_weighted_to_one_is_a_beta_function():
    v, _ = integrate_weighted_to_one(lambda s: s ** 2, -0.5)
    assert v == pytest.approx(math.exp(math.lgamma(3) + math.lgamma(0.5) - math.lgamma(3.5)), rel=1e-12)


def test_circle_mean_of_trig_polynomial():
    v, _, ok = circle_mean(lambda t: 3 + np.cos(5 * t) ** 2)
    assert ok and v == pytest.approx(3.5, rel=1e-14)


def test_failure_to_converge_raises():
    with pytest.raises(ToleranceNotMetError):
        integrate_interval(lambda s: math.sin(1 / s) / s, 1e-9, 1.0, QuadratureParams(rtol=1e-13, max_evals=500))


def test_panels_reaching_one_terminate():
    assert panels_toward_one(0.0, 1.0) == [0.0, 0.5, 1.0]
