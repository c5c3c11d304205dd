"""HAP energy budget and daily network cost.

Energies are in Wh/day, powers in W, masses in kg; costs are unitless
currency per day. Solar energy is free, so the daily cost is amortization
plus maintenance only.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

HOURS_PER_DAY = 24.0


@dataclass(frozen=True)
class EnergyParams:
    """Power draws and masses of a HAP and its payload.

    Attributes:
        rho_avion: Avionics power per carried mass (W/kg).
        rho_pat: Pointing/acquisition/tracking system shared by serving transceivers (W).
        rho_hcm: Heating, cooling and management per serving transceiver (W).
        rho_fso_tx: Laser source of a serving transceiver (W).
        rho_inter: One inter-HAP transceiver, all-in (W).
        mu_hap: Platform mass without transceivers (kg).
        mu_fso: Mass of one transceiver (kg).
        e_solar: Daily harvested solar energy (Wh/day).
    """
    rho_avion: float = 2.0
    rho_pat: float = 15.0
    rho_hcm: float = 20.0
    rho_fso_tx: float = 1.0
    rho_inter: float = 35.1
    mu_hap: float = 500.0
    mu_fso: float = 6.3
    e_solar: float = 50_000.0

    def __post_init__(self):
        for name, value in vars(self).items():
            if not value >= 0:
                raise ValueError(f"{name} must be >= 0, got {value}")


INTER_LASER_POWER = 0.1  # W, inter-HAP laser source folded into rho_inter


@dataclass(frozen=True)
class CostParams:
    """Amortization and maintenance constants.

    Attributes:
        amort_hap: Daily amortization of one HAP.
        amort_fso: Daily amortization of one transceiver.
        maint_onetime: Cost of one lower/maintain/relaunch cycle.
        maint_cycle_days: Days between maintenance cycles.
    """
    amort_hap: float = 100.0
    amort_fso: float = 10.0
    maint_onetime: float = 1000.0
    maint_cycle_days: float = 365.0

    def __post_init__(self):
        for name, value in vars(self).items():
            if not value > 0:
                raise ValueError(f"{name} must be > 0, got {value}")

    @property
    def maint_daily(self) -> float:
        return self.maint_onetime / self.maint_cycle_days


@dataclass(frozen=True)
class CostBreakdown:
    amortization: float
    maintenance: float
    total: float
    k: int
    l_inter: int
    m: int


def _check_counts(*counts):
    for c in counts:
        if c < 0:
            raise ValueError(f"counts must be >= 0, got {c}")


def daily_energy(energy: EnergyParams, n_serving: int, n_inter: int) -> float:
    """Daily consumption (Wh) of a HAP carrying the given transceivers.

    Args:
        energy: Power and mass constants.
        n_serving: Serving transceivers (principal + supplementary).
        n_inter: Inter-HAP transceivers.

    Returns:
        24 h times the sum of avionics, serving payload and inter-HAP draws.
    """
    _check_counts(n_serving, n_inter)
    avionics = (energy.mu_hap + (n_serving + n_inter) * energy.mu_fso) * energy.rho_avion
    serving = n_serving * (energy.rho_fso_tx + energy.rho_hcm) + energy.rho_pat
    inter = energy.rho_inter * n_inter
    return (avionics + serving + inter) * HOURS_PER_DAY


def solar_feasible(energy: EnergyParams, n_serving: int, n_inter: int) -> bool:
    """True when the daily draw does not exceed the harvested solar energy."""
    return daily_energy(energy, n_serving, n_inter) <= energy.e_solar


def network_cost(cost: CostParams, k: int, m: int, l_inter: int) -> CostBreakdown:
    """Daily cost of K identical mFSO HAPs joined by ``l_inter`` inter-HAP links.

    Each link uses one transceiver at both ends.
    """
    _check_counts(k, m, l_inter)
    amortization = k * (cost.amort_hap + (m + 1) * cost.amort_fso) + 2 * l_inter * cost.amort_fso
    maintenance = k * cost.maint_daily
    return CostBreakdown(amortization, maintenance, amortization + maintenance, k, l_inter, m)


def general_cost(cost: CostParams, serving: Sequence[int], inter: Sequence[int],
                 days: Sequence[float]) -> float:
    """Daily cost for arbitrary per-HAP transceiver counts and in-space durations."""
    if not len(serving) == len(inter) == len(days):
        raise ValueError("per-HAP sequences must have equal length")
    k = len(serving)
    return (k * cost.amort_hap + (sum(serving) + sum(inter)) * cost.amort_fso
            + sum(cost.maint_onetime / d for d in days))


def hap_lower_bound_ratio(n_nodes: int, w: int) -> float:
    if w < 1:
        raise ValueError("w must be >= 1")
    return n_nodes / w


def hap_lower_bound(n_nodes: int, w: int) -> int:
    """Fewest HAPs able to serve ``n_nodes`` with ``w`` wavelengths each."""
    if w < 1:
        raise ValueError("w must be >= 1")
    return -(-n_nodes // w)
