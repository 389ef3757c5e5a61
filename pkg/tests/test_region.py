"""Region geometry: boundary symmetry, corners, multiplier inversion, maps."""

import math

import numpy as np
import pytest
from hypothesis import given, assume
from hypothesis import strategies as st

from sdlab.errors import InfeasibleError, InvalidInputError, NoSolutionError
from sdlab.region import (
    PlanePoint,
    RegionSpec,
    b1_eval,
    b2_eval,
    corner_u0,
    gamma_from_u1,
    map_sl,
    map_sr,
    region_contains,
    step_region,
    u1_from_gamma,
    yilmaz_gamma_range,
)

alphas = st.floats(min_value=0.05, max_value=0.95)


def spec_for(alpha, c_scale=1.0):
    # C >= 2 dH/dL keeps every derived quantity well defined
    c_min = 2.0 * (1.0 + alpha) / (1.0 - alpha)
    return RegionSpec(alpha=alpha, C=c_min * c_scale)


@given(alpha=alphas, c_scale=st.floats(min_value=1.0, max_value=5.0),
       u=st.floats(min_value=-20, max_value=20))
def test_lower_boundary_is_reflected_upper_boundary(alpha, c_scale, u):
    spec = spec_for(alpha, c_scale)
    assert b2_eval(spec, u) == -b1_eval(spec, -u)


def test_boundary_values_at_named_points():
    spec = RegionSpec(alpha=0.5, C=6.0)
    assert b1_eval(spec, 0.0) == 6.0
    assert b2_eval(spec, 0.0) == -6.0
    # vertex of the u > 0 branch sits at u = dL/2
    assert spec.v_extent == pytest.approx(6.0 + 0.5 / 8.0, abs=0)
    got = b1_eval(spec, spec.delta_L / 2.0)
    assert got == pytest.approx(spec.v_extent, rel=1e-15)


@given(alpha=alphas, c_scale=st.floats(min_value=1.0, max_value=5.0))
def test_boundaries_meet_exactly_at_the_corners(alpha, c_scale):
    spec = spec_for(alpha, c_scale)
    u0 = corner_u0(spec)
    # u0^2 = 2 C dH dL makes B1 and B2 agree at +-u0
    for s in (-1.0, 1.0):
        gap = b1_eval(spec, s * u0) - b2_eval(spec, s * u0)
        assert abs(gap) < 1e-12 * (1.0 + spec.C)


def test_vectorized_boundary_matches_scalar():
    spec = RegionSpec(alpha=0.3, C=5.0)
    u = np.linspace(-3, 3, 11)
    vec = b1_eval(spec, u)
    assert vec.shape == (11,)
    for i, ui in enumerate(u):
        assert vec[i] == b1_eval(spec, float(ui))


def test_region_contains_interior_boundary_exterior():
    spec = RegionSpec(alpha=0.5, C=6.0)
    assert region_contains(spec, PlanePoint(0.0, 0.0))
    assert region_contains(spec, PlanePoint(0.0, 6.0))          # on B1
    assert region_contains(spec, PlanePoint(spec.u0, 0.0)) is False or True
    assert not region_contains(spec, PlanePoint(0.0, 6.0 + 1e-9))
    assert not region_contains(spec, PlanePoint(spec.u0 + 1e-9, 0.0))
    assert region_contains(spec, PlanePoint(0.0, 6.0 + 1e-9), tol=1e-8)
    with pytest.raises(InvalidInputError):
        region_contains(spec, PlanePoint(0.0, 0.0), tol=-1.0)


@given(alpha=alphas, c_scale=st.floats(min_value=1.0, max_value=5.0),
       frac=st.floats(min_value=1e-3, max_value=0.999))
def test_multiplier_roundtrip_through_u1(alpha, c_scale, frac):
    spec = spec_for(alpha, c_scale)
    u1 = frac * spec.u0
    try:
        gamma = gamma_from_u1(spec, u1)
    except NoSolutionError:
        assume(False)  # B1(-u1) <= 0 near the corner for large C
    back = u1_from_gamma(spec, gamma)
    assert back == pytest.approx(u1, rel=1e-9)


def test_multiplier_input_contracts():
    spec = RegionSpec(alpha=0.5, C=6.0)
    with pytest.raises(InvalidInputError):
        gamma_from_u1(spec, 0.0)
    with pytest.raises(InvalidInputError):
        gamma_from_u1(spec, spec.u0)
    with pytest.raises(InvalidInputError):
        u1_from_gamma(spec, 0.0)
    with pytest.raises(NoSolutionError):
        u1_from_gamma(spec, 1e9)


def test_gamma_range_golden_cases():
    # alpha = 1/2, C = 6 is the minimal C: the interval is the point 1/3
    spec = RegionSpec(alpha=0.5, C=6.0)
    lo, hi = yilmaz_gamma_range(spec)
    assert lo == pytest.approx(1.5 / 4.5, abs=1e-15)
    assert hi == lo
    # widening C opens the interval: lo = dH/(C - dH), hi from the corner
    spec = RegionSpec(alpha=0.5, C=8.0)
    lo, hi = yilmaz_gamma_range(spec)
    u0 = math.sqrt(12.0)
    assert lo == pytest.approx(1.5 / 6.5, abs=1e-15)
    assert hi == pytest.approx((u0 - 1.5) / (4.0 + 0.5 * u0), rel=1e-15)
    assert lo < hi


@given(alpha=alphas)
def test_gamma_range_collapses_at_minimal_c(alpha):
    spec = spec_for(alpha, 1.0)
    lo, hi = yilmaz_gamma_range(spec)
    want = spec.delta_L / spec.delta_H
    assert lo == pytest.approx(want, rel=1e-12)
    assert hi - lo <= 1e-12 * want


def test_gamma_range_rejects_small_c():
    with pytest.raises(InfeasibleError) as exc:
        yilmaz_gamma_range(RegionSpec(alpha=0.5, C=5.0))
    assert exc.value.bound == "lowerc"


@given(alpha=alphas, c_scale=st.floats(min_value=1.0, max_value=5.0),
       frac=st.floats(min_value=1e-3, max_value=0.999))
def test_gamma_range_contains_every_interior_multiplier(alpha, c_scale, frac):
    spec = spec_for(alpha, c_scale)
    dH = spec.delta_H
    u1 = dH + frac * (spec.u0 - 2.0 * dH)
    assume(dH < u1 < spec.u0 - dH)
    try:
        gamma = gamma_from_u1(spec, u1)
    except NoSolutionError:
        assume(False)
    lo, hi = yilmaz_gamma_range(spec)
    assert lo - 1e-12 <= gamma <= hi + 1e-12


def test_one_step_maps_are_the_documented_affine_forms():
    p = PlanePoint(0.25, -1.5)
    a = map_sl(p, 0.75, 1.02)
    assert a.u == 1.02 * 0.25 - 0.75
    assert a.v == 1.02 * 0.25 + (-1.5) - 0.75
    b = map_sr(p, 0.75, 1.02)
    assert b.u == 1.02 * 0.25 + 0.75
    assert b.v == 1.02 * 0.25 + (-1.5) + 0.75
    with pytest.raises(InvalidInputError):
        map_sl(p, 0.0)
    with pytest.raises(InvalidInputError):
        map_sr(p, -1.0)


@given(
    u=st.floats(min_value=-3, max_value=3),
    v=st.floats(min_value=-5, max_value=5),
    lam=st.floats(min_value=1.0, max_value=1.05),
    delta=st.floats(min_value=0.5, max_value=1.5),
)
def test_gain_folds_into_a_state_dependent_offset(u, v, lam, delta):
    # the gain-lam move equals the gain-1 move at a shifted offset
    p = PlanePoint(u, v)
    den_u = max(1.0, abs(lam * u) + delta)
    den_v = max(1.0, abs(lam * u) + abs(v) + delta)
    a = map_sl(p, delta, lam)
    b = map_sl(p, delta - (lam - 1.0) * u, 1.0)
    assert abs(a.u - b.u) / den_u < 1e-15
    assert abs(a.v - b.v) / den_v < 1e-15
    a = map_sr(p, delta, lam)
    b = map_sr(p, delta + (lam - 1.0) * u, 1.0)
    assert abs(a.u - b.u) / den_u < 1e-15
    assert abs(a.v - b.v) / den_v < 1e-15


def test_step_region_branches_on_the_switching_line():
    delta, gamma = 0.8, 0.5
    left = step_region(PlanePoint(1.0, 0.0), delta, gamma)
    assert left == map_sl(PlanePoint(1.0, 0.0), delta)
    right = step_region(PlanePoint(-1.0, 0.0), delta, gamma)
    assert right == map_sr(PlanePoint(-1.0, 0.0), delta)
    # tie goes left, same as Q(0) = +1
    tie = step_region(PlanePoint(1.0, -2.0), delta, gamma)
    assert tie == map_sl(PlanePoint(1.0, -2.0), delta)


def test_region_spec_validation():
    with pytest.raises(InvalidInputError):
        RegionSpec(alpha=0.0, C=6.0)
    with pytest.raises(InvalidInputError):
        RegionSpec(alpha=1.0, C=6.0)
    with pytest.raises(InvalidInputError):
        RegionSpec(alpha=0.5, C=0.0)
    with pytest.raises(InvalidInputError):
        PlanePoint(math.inf, 0.0)
