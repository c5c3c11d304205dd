import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hapfso.errors import DegenerateBeamError
from hapfso.link_budget import (LinkBudgetParams, SupplementaryCap, border_power_principal,
                                cap_area, meets_requirement, principal_radius,
                                radiation_density, received_power, supplementary_power)

import oracles

P = LinkBudgetParams()
deg = math.radians


def test_defaults_match_reference_optics():
    assert (P.sigma, P.p_tx, P.r_rx, P.rho_rx, P.h) == (3.5e-6, 1.0, 2.0, 7.76e-8, 20_000.0)


@pytest.mark.parametrize("field,value", [("sigma", -1e-6), ("p_tx", 0.0), ("r_rx", -2.0),
                                         ("rho_rx", 0.0), ("h", 0.0), ("h", float("nan"))])
def test_params_reject_out_of_range(field, value):
    with pytest.raises(ValueError):
        LinkBudgetParams(**{field: value})


def test_params_allow_zero_attenuation():
    assert LinkBudgetParams(sigma=0.0).sigma == 0.0


def test_density_hemisphere_unit_distance():
    assert radiation_density(P, 1.0, math.pi) == pytest.approx(1 / (2 * math.pi), rel=1e-15)


def test_density_linear_in_power():
    p2 = LinkBudgetParams(p_tx=2.0)
    assert radiation_density(p2, 500.0, deg(20)) == pytest.approx(
        2 * radiation_density(P, 500.0, deg(20)), rel=1e-15)


def test_density_matches_integrated_cap():
    # quad over the ribbon construction, frozen
    assert radiation_density(P, 20_000.0, deg(37)) == pytest.approx(7.69960335463724e-09, rel=1e-9)


def test_density_times_cap_area_is_power():
    for a in (0.1, 0.7, 2.0, math.pi):
        assert radiation_density(P, 1234.0, a) * cap_area(1234.0, a) == pytest.approx(P.p_tx, rel=1e-14)


@pytest.mark.parametrize("fn,args", [(radiation_density, (1.0,)), (received_power, (1.0,))])
def test_zero_beam_is_degenerate(fn, args):
    with pytest.raises(DegenerateBeamError):
        fn(P, *args, 0.0)


@pytest.mark.parametrize("bw", [-0.1, math.pi + 1e-9])
def test_beam_outside_range_rejected(bw):
    with pytest.raises(ValueError):
        received_power(P, 100.0, bw)


def test_received_power_rejects_nonpositive_distance():
    with pytest.raises(ValueError):
        received_power(P, 0.0, 0.5)


def test_received_power_without_attenuation():
    p = LinkBudgetParams(sigma=0.0)
    expect = p.r_rx ** 2 / (2 * p.h ** 2 * (1 - math.cos(math.pi / 4)))
    assert received_power(p, p.h, math.pi / 2) == pytest.approx(expect, rel=1e-15)


def test_attenuation_factor_over_elevation():
    ratio = received_power(P, 20_000.0, deg(37)) / received_power(LinkBudgetParams(sigma=0.0), 20_000.0, deg(37))
    assert ratio == pytest.approx(0.9323938199059483, rel=1e-14)


def test_principal_border_power_brackets_widest_beam():
    assert border_power_principal(P, deg(37)) >= P.rho_rx
    assert border_power_principal(P, deg(38)) < P.rho_rx
    assert border_power_principal(P, deg(37)) == pytest.approx(8.082285201060819e-08, rel=1e-12)
    assert border_power_principal(P, deg(38)) == pytest.approx(7.619199825040167e-08, rel=1e-12)


def test_border_power_diverges_for_narrow_beam():
    assert border_power_principal(P, 1e-6) > 1e3


def test_border_power_rejects_full_aperture():
    with pytest.raises(ValueError):
        border_power_principal(P, math.pi)


def test_two_literal_forms_agree():
    # P R^2/(2L^2) * 1/(1-cos(a/2)) versus P R^2/(4L^2) * 2/(1-cos(a/2))
    for L in (20_000.0, 23_287.36, 31_000.0):
        for a in (deg(5), deg(37), deg(120)):
            form_a = math.exp(-P.sigma * L) * P.p_tx * P.r_rx ** 2 / (2 * L * L) / (1 - math.cos(a / 2))
            form_b = math.exp(-P.sigma * L) * P.p_tx * P.r_rx ** 2 / (4 * L * L) * 2 / (1 - math.cos(a / 2))
            got = received_power(P, L, a)
            assert got == pytest.approx(form_a, rel=1e-15)
            assert got == pytest.approx(form_b, rel=1e-15)


def test_received_power_matches_oracle():
    for L, a in [(21_000.0, 0.3), (40_000.0, 1.1), (20_000.0, math.pi)]:
        assert received_power(P, L, a) == pytest.approx(
            oracles.received_power(P.sigma, P.p_tx, P.r_rx, L, a), rel=1e-14)


@given(st.floats(1.0, 1e6), st.floats(1.0, 1e6), st.floats(1e-4, math.pi))
def test_received_power_decreases_with_distance(l1, l2, a):
    lo, hi = sorted((l1, l2))
    if hi > lo * (1 + 1e-12):
        assert received_power(P, hi, a) < received_power(P, lo, a)


@given(st.floats(1e-3, math.pi), st.floats(1e-3, math.pi))
def test_received_power_decreases_with_beam_width(a1, a2):
    lo, hi = sorted((a1, a2))
    if hi > lo * (1 + 1e-9):
        assert received_power(P, 25_000.0, hi) < received_power(P, 25_000.0, lo)


@given(st.floats(0.01, 10.0), st.floats(0.01, 10.0))
def test_received_power_increases_with_aperture_and_power(r_rx, p_tx):
    base = received_power(LinkBudgetParams(r_rx=r_rx, p_tx=p_tx), 25_000.0, 0.5)
    assert received_power(LinkBudgetParams(r_rx=r_rx * 1.01, p_tx=p_tx), 25_000.0, 0.5) > base
    assert received_power(LinkBudgetParams(r_rx=r_rx, p_tx=p_tx * 1.01), 25_000.0, 0.5) > base


def test_supplementary_power_conventions():
    L, b = 23_287.0, deg(17)
    assert supplementary_power(P, L, b, SupplementaryCap.HALF_BETA) == received_power(P, L, b)
    assert supplementary_power(P, L, b) == received_power(P, L, 2 * b)
    assert supplementary_power(P, L, b, "beta") == supplementary_power(P, L, b, SupplementaryCap.BETA)


def test_supplementary_cap_beyond_hemisphere_rejected():
    with pytest.raises(ValueError):
        supplementary_power(P, 20_000.0, deg(91))


def test_principal_radius_values():
    assert principal_radius(P, deg(37)) == pytest.approx(6691, abs=1)
    assert principal_radius(P, deg(67)) == pytest.approx(13237, abs=1)
    assert principal_radius(P, 0.0) == 0.0
    with pytest.raises(ValueError):
        principal_radius(P, math.pi)


def test_meets_requirement_is_inclusive():
    assert meets_requirement(P, P.rho_rx)
    assert not meets_requirement(P, math.nextafter(P.rho_rx, 0))
