"""Extended ground coverage of a multi-transceiver (mFSO) HAP payload.

A principal transceiver points at nadir with aperture ``alpha``. Around it,
``m`` identical supplementary transceivers of aperture ``beta`` are tilted
outward at even azimuths. Neighbouring supplementary footprints meet on the
extended coverage circle at the joint points J; the radius of that circle is
given in closed form below.

Angle names follow the construction: ``gamma`` is the elevation of the
midpoint M of the chord KK' (the two points where a supplementary cone cuts
the principal footprint rim), ``theta`` the angle between HM and the
supplementary axis, and ``xi`` the extra angle the joint ray opens beyond
the principal cone.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import AngleOverflowError, GeometryInfeasibleError
from .link_budget import LinkBudgetParams, principal_radius


@dataclass(frozen=True)
class MfsoConfig:
    """A candidate payload: principal aperture, ring size, supplementary aperture.

    ``beta`` is ignored (and may be None) when ``m == 0``.
    """
    alpha: float
    m: int = 0
    beta: Optional[float] = None

    def __post_init__(self):
        if not 0 < self.alpha < math.pi:
            raise ValueError(f"alpha must be in (0, pi), got {self.alpha}")
        if self.m < 0 or int(self.m) != self.m:
            raise ValueError(f"m must be a non-negative integer, got {self.m}")
        if self.m > 0 and (self.beta is None or not 0 < self.beta < math.pi):
            raise ValueError("m >= 1 needs a supplementary beam width in (0, pi)")

    @property
    def n_serving(self) -> int:
        return self.m + 1


@dataclass(frozen=True)
class GeometryIntermediates:
    tan_gamma: float
    tan_theta: float
    tan_half_xi_plus_alpha: float
    r_alpha: float
    r_ext: float
    l_j: float


def tan_gamma(alpha: float, m: int) -> float:
    if m < 1:
        raise ValueError("m must be >= 1")
    return math.tan(alpha / 2.0) * math.cos(math.pi / m)


def theta_radicand(alpha: float, beta: float, m: int) -> float:
    """sin^2(beta/2) - sin^2(alpha/2) sin^2(pi/m); negative means infeasible."""
    return math.sin(beta / 2.0) ** 2 - (math.sin(alpha / 2.0) * math.sin(math.pi / m)) ** 2


def tan_theta(alpha: float, beta: float, m: int) -> float:
    """Tangent of the tilt between HM and the supplementary axis.

    Raises:
        GeometryInfeasibleError: the supplementary cone is too narrow to pass
            through both rim points K and K'.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if not 0 < beta < math.pi:
        raise ValueError(f"beta must be in (0, pi), got {beta}")
    rad = theta_radicand(alpha, beta, m)
    if rad < 0:
        raise GeometryInfeasibleError(
            f"beta={math.degrees(beta):g} deg cannot reach both joint points "
            f"for alpha={math.degrees(alpha):g} deg, m={m}")
    return math.sqrt(rad) / math.cos(beta / 2.0)


def slant_distance_to_J(params: LinkBudgetParams, r_ext: float) -> float:
    if r_ext < 0:
        raise ValueError("r_ext must be >= 0")
    return math.hypot(params.h, r_ext)


def geometry(params: LinkBudgetParams, cfg: MfsoConfig) -> GeometryIntermediates:
    """All intermediate quantities of the extended-coverage construction.

    Raises:
        GeometryInfeasibleError: radicand negative, or the joint ray does not
            leave the principal footprint (non-positive radius).
        AngleOverflowError: the joint ray reaches the horizon.
    """
    r_alpha = principal_radius(params, cfg.alpha)
    if cfg.m == 0:
        return GeometryIntermediates(math.nan, math.nan, math.tan(cfg.alpha / 2.0),
                                     r_alpha, r_alpha, slant_distance_to_J(params, r_alpha))
    tg = tan_gamma(cfg.alpha, cfg.m)
    tt = tan_theta(cfg.alpha, cfg.beta, cfg.m)
    if tg * tt >= 1.0:
        raise AngleOverflowError("supplementary axis at or beyond the horizon")
    t = (tg + tt) / (1.0 - tg * tt) * math.cos(math.pi / cfg.m)
    ta = math.tan(cfg.alpha / 2.0)
    den = 1.0 - t * t + 2.0 * t * ta
    if den <= 0:
        raise AngleOverflowError("extended coverage ray at or above the horizon")
    r_ext = params.h * (2.0 * t - ta * (1.0 - t * t)) / den
    if r_ext <= 0:
        raise GeometryInfeasibleError("joint ray does not reach the ground outward")
    return GeometryIntermediates(tg, tt, t, r_alpha, r_ext, slant_distance_to_J(params, r_ext))


def extended_radius(params: LinkBudgetParams, cfg: MfsoConfig) -> float:
    """Radius (m) of the largest ground circle covered by the mFSO footprints.

    For ``m == 0`` this is the principal footprint radius.
    """
    return geometry(params, cfg).r_ext
