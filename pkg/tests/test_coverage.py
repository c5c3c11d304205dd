import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hapfso.coverage import (MfsoConfig, extended_radius, geometry, slant_distance_to_J,
                             tan_gamma, tan_theta, theta_radicand)
from hapfso.errors import AngleOverflowError, GeometryInfeasibleError
from hapfso.link_budget import LinkBudgetParams, principal_radius

import oracles

P = LinkBudgetParams()
deg = math.radians


def test_config_validation():
    with pytest.raises(ValueError):
        MfsoConfig(0.0)
    with pytest.raises(ValueError):
        MfsoConfig(deg(37), m=-1)
    with pytest.raises(ValueError):
        MfsoConfig(deg(37), m=3)
    with pytest.raises(ValueError):
        MfsoConfig(deg(37), m=2.5, beta=deg(10))
    assert MfsoConfig(deg(37)).n_serving == 1
    assert MfsoConfig(deg(37), 13, deg(17)).n_serving == 14


def test_tan_gamma_values():
    assert tan_gamma(deg(37), 2) == pytest.approx(0.0, abs=1e-16)
    assert tan_gamma(deg(37), 10_000) == pytest.approx(math.tan(deg(18.5)), rel=1e-6)
    assert tan_gamma(deg(37), 13) == pytest.approx(0.3248725876195935, rel=1e-15)
    with pytest.raises(ValueError):
        tan_gamma(deg(37), 0)


def test_tan_theta_zero_at_radicand_boundary():
    a, m = deg(37), 13
    beta = 2 * math.asin(math.sin(a / 2) * math.sin(math.pi / m))
    assert tan_theta(a, beta, m) == pytest.approx(0.0, abs=1e-7)
    assert tan_theta(deg(30), deg(30), 2) == pytest.approx(0.0, abs=1e-7)


def test_tan_theta_matches_oracle_tilt():
    # angle between the chord midpoint ray and the tilted supplementary axis
    assert tan_theta(deg(37), deg(16), 13) == pytest.approx(0.11777758761889288, rel=1e-12)


def test_tan_theta_infeasible_when_cone_too_narrow():
    with pytest.raises(GeometryInfeasibleError):
        tan_theta(deg(37), deg(2), 13)
    assert theta_radicand(deg(37), deg(2), 13) < 0


def test_m_zero_is_principal_footprint():
    cfg = MfsoConfig(deg(37))
    assert extended_radius(P, cfg) == principal_radius(P, deg(37))


def test_extended_radius_reference_rows():
    # beta here is the widest power-feasible value for each ring size
    assert extended_radius(P, MfsoConfig(deg(37), 13, deg(17))) == pytest.approx(11929, abs=5)
    assert extended_radius(P, MfsoConfig(deg(37), 16, deg(16))) == pytest.approx(12174, abs=5)
    assert extended_radius(P, MfsoConfig(deg(37), 8, deg(18))) == pytest.approx(8946, abs=5)


def test_extended_radius_matches_oracle_pointwise():
    for a, m, b in [(37, 13, 16), (37, 16, 16), (37, 13, 17), (67, 16, 24), (20, 6, 12)]:
        closed = extended_radius(P, MfsoConfig(deg(a), m, deg(b)))
        ref = oracles.extended_radius(P.h, deg(a), m, deg(b))
        assert closed == pytest.approx(ref, rel=1e-9)
    assert extended_radius(P, MfsoConfig(deg(37), 13, deg(16))) == pytest.approx(11388.589, abs=1e-3)


def test_geometry_intermediates_consistent():
    g = geometry(P, MfsoConfig(deg(37), 13, deg(17)))
    assert g.l_j == math.sqrt(P.h ** 2 + g.r_ext ** 2)
    assert g.r_alpha == principal_radius(P, deg(37))
    assert g.tan_gamma == tan_gamma(deg(37), 13)


def test_horizon_is_an_error():
    with pytest.raises(AngleOverflowError):
        extended_radius(P, MfsoConfig(deg(170), 40, deg(60)))


@pytest.mark.parametrize("m,b", [(1, 30), (2, 40)])
def test_tiny_ring_gives_no_outward_radius(m, b):
    with pytest.raises(GeometryInfeasibleError):
        extended_radius(P, MfsoConfig(deg(37), m, deg(b)))


def test_slant_distance():
    assert slant_distance_to_J(P, 0.0) == P.h
    assert slant_distance_to_J(P, 6691.0) == pytest.approx(21089.6, abs=0.5)
    assert slant_distance_to_J(P, 11929.0) == pytest.approx(23287.357965213658, rel=1e-15)
    with pytest.raises(ValueError):
        slant_distance_to_J(P, -1.0)


def _feasible(a, m, b):
    try:
        return extended_radius(P, MfsoConfig(a, m, b))
    except GeometryInfeasibleError:
        return None


@settings(max_examples=60, deadline=None)
@given(st.integers(5, 60), st.integers(6, 30), st.integers(1, 60), st.integers(1, 60))
def test_extended_radius_nondecreasing_in_beta(a_deg, m, b1, b2):
    lo, hi = sorted((b1, b2))
    r_lo, r_hi = _feasible(deg(a_deg), m, deg(lo)), _feasible(deg(a_deg), m, deg(hi))
    if r_lo is not None and r_hi is not None:
        assert r_hi >= r_lo * (1 - 1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(5, 60), st.integers(6, 30), st.floats(3.5, 30.0))
def test_ring_extends_coverage_away_from_boundary(a_deg, m, margin_deg):
    # right at the feasibility threshold the joint ray can fall inside the
    # principal footprint; a few degrees above it the ring always helps
    a = deg(a_deg)
    b_min = 2 * math.asin(math.sin(a / 2) * math.sin(math.pi / m))
    b = b_min + deg(margin_deg)
    r = _feasible(a, m, b)
    if r is not None:
        assert r > principal_radius(P, a)


def test_continuity_at_radicand_boundary():
    a, m = deg(37), 13
    b0 = 2 * math.asin(math.sin(a / 2) * math.sin(math.pi / m))
    tg, ta = tan_gamma(a, m), math.tan(a / 2)
    t = tg * math.cos(math.pi / m)  # theta = 0
    at_boundary = P.h * (2 * t - ta * (1 - t * t)) / (1 - t * t + 2 * t * ta)
    # theta grows like the square root of the offset, so 1e-13 leaves ~1e-7 rad
    near = extended_radius(P, MfsoConfig(a, m, b0 * (1 + 1e-13)))
    assert near == pytest.approx(at_boundary, abs=1e-6 * P.h)
