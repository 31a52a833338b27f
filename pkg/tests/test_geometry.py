import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedmeans import geometry as geo
from mixedmeans import series as ps
from mixedmeans.errors import DomainError
from mixedmeans.geometry import Kind

AREA_EX = ps.construct([0, 1, 0.5])
LENGTH_EX = ps.construct([8, 12, 6, 1])


def length_oracle(coeffs, r):
    d = np.polynomial.polynomial.polyder(np.asarray(coeffs, dtype=complex))
    speed = lambda t: abs(np.polynomial.polynomial.polyval(r * mpmath.exp(1j * t), d)) * r
    return float(mpmath.quad(speed, [0, math.pi / 2, math.pi, 3 * math.pi / 2, 2 * math.pi]))


def test_radius_and_beta_domains():
    for r in (0.0, 1.0, -0.1, 1.5):
        with pytest.raises(DomainError):
            geo.area(AREA_EX, r)
    with pytest.raises(DomainError):
        geo.mixed_ratio("area", AREA_EX, 0.5, 1.5)


def test_monomial_closed_forms():
    f = ps.monomial(4, 3, 2)
    assert geo.area(f, 0.5).value == pytest.approx(math.pi * 9 * 0.5 ** 4, rel=1e-15)
    assert geo.length_boundary(f, 0.5).value == pytest.approx(2 * math.pi * 3 * 0.25, rel=1e-15)
    # the Dirichlet integral counts the doubly covered image twice
    assert geo.area_dirichlet(f, 0.5).value == pytest.approx(2 * geo.area(f, 0.5).value, rel=1e-14)


def test_constant_map_has_no_area_or_length():
    f = ps.construct([2.5])
    assert geo.area(f, 0.7).value == 0.0
    assert geo.length_boundary(f, 0.7).value == 0.0


@pytest.mark.parametrize("r", [0.3, 0.7, 0.95])
def test_example_length_against_mpmath(r):
    for f in (AREA_EX, LENGTH_EX):
        got = geo.length_boundary(f, r).value
        assert got == pytest.approx(length_oracle(f.coeffs, r), rel=1e-10)


def test_area_example_dirichlet_value():
    # pi (r^2 + r^4/2) for z + z^2/2
    r = 0.6
    assert geo.area(AREA_EX, r).value == pytest.approx(math.pi * (r**2 + r**4 / 2), rel=1e-15)


def test_evaluator_path_matches_series_path():
    ev = geo.DiskEvaluator(eval=lambda z: z + 0.5 * z * z, eval_deriv=lambda z: 1 + z)
    for r in (0.4, 0.9):
        assert geo.area_dirichlet(ev, r).value == pytest.approx(geo.area_dirichlet(AREA_EX, r).value, rel=1e-11)
        assert geo.length_boundary(ev, r).value == pytest.approx(geo.length_boundary(AREA_EX, r).value, rel=1e-10)


def test_length_with_critical_point_on_circle():
    # f' = 1 + z vanishes at z = -1, so |f'| has a kink on r close to 1
    r = 0.999
    assert geo.length_boundary(AREA_EX, r).value == pytest.approx(length_oracle(AREA_EX.coeffs, r), rel=1e-9)


def test_raster_agrees_with_dirichlet_for_univalent_map():
    for r in (0.3, 0.6, 0.9):
        ras = geo.area_image_raster(AREA_EX, r, 512)
        d = geo.area_dirichlet(AREA_EX, r)
        assert abs(ras.value - d.value) <= ras.error_bound + d.error_bound


def test_raster_sees_set_area_of_double_cover():
    ras = geo.area_image_raster(ps.monomial(0, 1, 2), 0.8, 256)
    assert abs(ras.value - math.pi * 0.8 ** 4) <= ras.error_bound


def test_phi_limits_at_zero():
    assert geo.phi_at_zero("area", LENGTH_EX, 1.0) == pytest.approx(144.0)
    assert geo.phi_at_zero("length", LENGTH_EX, 1.0) == pytest.approx(12.0)
    assert geo.phi_at_zero("length", LENGTH_EX, 0.5) == 0.0
    assert geo.phi_at_zero("area", ps.monomial(0, 1, 2), 1.0) == 0.0


univalent_c = st.floats(-0.5, 0.5)


@settings(max_examples=40, deadline=None)
@given(univalent_c, st.floats(0.05, 0.95))
def test_isoperimetric_for_univalent_quadratics(c, r):
    f = ps.construct([0, 1, c])
    pa = geo.mixed_ratio(Kind.AREA, f, r, 1.0).value
    pl = geo.mixed_ratio(Kind.LENGTH, f, r, 1.0).value
    assert pa <= pl * pl * (1 + 1e-12)


@settings(max_examples=40, deadline=None)
@given(univalent_c, st.floats(0.0, 1.0), st.floats(0.05, 0.9), st.floats(0.01, 0.09))
def test_ratios_grow_with_radius(c, beta, r, dr):
    f = ps.construct([0, 1, c])
    for kind in Kind:
        lo = geo.mixed_ratio(kind, f, r, beta).value
        hi = geo.mixed_ratio(kind, f, r + dr, beta).value
        assert hi >= lo - 1e-12


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-2, 2), min_size=2, max_size=6), st.integers(1, 3), st.floats(0.1, 0.95))
def test_coefficient_lower_bound(tail, n, r):
    # pi r^(2n) |a_n|^2 <= Dirichlet area for any series starting at z^n
    c = [0.5] + [0.0] * (n - 1) + [1.0] + tail
    f = ps.construct(c)
    assert math.pi * r ** (2 * n) <= geo.area_dirichlet(f, r).value * (1 + 1e-14)
