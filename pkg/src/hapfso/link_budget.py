"""HAP-to-ground optical link budget.

A serving transmitter spreads its power uniformly over the spherical cap cut
by its beam cone; a ground receiver collects the share falling on its
aperture, further attenuated along the slant path (Beer-Lambert).

All angles are full cone apertures in radians. Distances in meters, powers
in watts.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DegenerateBeamError


@dataclass(frozen=True)
class LinkBudgetParams:
    """Optical constants of the HAP-ground downlink.

    Attributes:
        sigma: Atmospheric attenuation coefficient (1/m).
        p_tx: Laser transmit power of a serving transceiver (W).
        r_rx: Ground receiver aperture radius (m).
        rho_rx: Required received power at a ground receiver (W).
        h: HAP elevation (m).
    """
    sigma: float = 3.5e-6
    p_tx: float = 1.0
    r_rx: float = 2.0
    rho_rx: float = 7.76e-8
    h: float = 20_000.0

    def __post_init__(self):
        if not self.sigma >= 0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")
        for name in ("p_tx", "r_rx", "rho_rx", "h"):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"{name} must be > 0, got {value}")


class SupplementaryCap(str, enum.Enum):
    """Half-angle of the spherical cap used for a supplementary beam's power.

    ``BETA`` spreads the supplementary power over a cap of half-angle beta,
    which is how the published configuration tables were computed.
    ``HALF_BETA`` applies the same rule as the principal beam (half-angle
    beta/2).
    """
    BETA = "beta"
    HALF_BETA = "half-beta"


def _check_beam(beam_width: float) -> None:
    if beam_width == 0:
        raise DegenerateBeamError("beam width must be > 0")
    if not 0 < beam_width <= math.pi:
        raise ValueError(f"beam width must be in (0, pi], got {beam_width}")


def cap_area(r: float, beam_width: float) -> float:
    """Area of the sphere of radius ``r`` inside a cone of aperture ``beam_width``."""
    return 2.0 * math.pi * r * r * (1.0 - math.cos(beam_width / 2.0))


def radiation_density(params: LinkBudgetParams, r: float, alpha: float) -> float:
    """Power density (W/m^2) at distance ``r`` inside a beam of aperture ``alpha``."""
    if not r > 0:
        raise ValueError(f"distance must be > 0, got {r}")
    _check_beam(alpha)
    return params.p_tx / cap_area(r, alpha)


def received_power(params: LinkBudgetParams, slant_distance: float,
                   beam_width: float) -> float:
    """Power (W) collected by a ground aperture at ``slant_distance``.

    Serves both principal and supplementary beams.

    Args:
        params: Link constants.
        slant_distance: Transmitter-receiver distance (m).
        beam_width: Full cone aperture of the transmitting beam (rad).

    Returns:
        exp(-sigma L) * P_tx * R_rx^2 / (2 L^2 (1 - cos(beam_width/2))).
    """
    if not slant_distance > 0:
        raise ValueError(f"slant distance must be > 0, got {slant_distance}")
    _check_beam(beam_width)
    L = slant_distance
    return (math.exp(-params.sigma * L) * params.p_tx * params.r_rx ** 2
            / (2.0 * L * L * (1.0 - math.cos(beam_width / 2.0))))


def border_power_principal(params: LinkBudgetParams, alpha: float) -> float:
    """Received power on the rim of the principal footprint.

    This is the minimum over the footprint, since the rim is farthest
    from the HAP.
    """
    if not alpha < math.pi:
        raise ValueError("principal beam must be narrower than pi")
    _check_beam(alpha)
    return received_power(params, params.h / math.cos(alpha / 2.0), alpha)


def supplementary_power(params: LinkBudgetParams, slant_distance: float, beta: float,
                        cap: SupplementaryCap = SupplementaryCap.BETA) -> float:
    """Power a supplementary beam of aperture ``beta`` delivers at ``slant_distance``."""
    if SupplementaryCap(cap) is SupplementaryCap.HALF_BETA:
        return received_power(params, slant_distance, beta)
    if beta > math.pi / 2:
        raise ValueError("cap half-angle beta must not exceed a hemisphere")
    return received_power(params, slant_distance, 2.0 * beta)


def principal_radius(params: LinkBudgetParams, alpha: float) -> float:
    """Ground radius of the principal footprint, H tan(alpha/2)."""
    if not 0 <= alpha < math.pi:
        raise ValueError(f"alpha must be in [0, pi), got {alpha}")
    return params.h * math.tan(alpha / 2.0)


def meets_requirement(params: LinkBudgetParams, power: float) -> bool:
    """True when ``power`` reaches the receiver sensitivity."""
    return power >= params.rho_rx

