"""Exhaustive grid search for the cheapest mFSO configuration.

The real network cost depends on the traffic, so candidates are ranked by an
overestimate: the HAP count needed to tile the area with square cells that
fit inside one extended footprint and hold at most W ground nodes, times the
per-HAP cost with every HAP carrying V inter-HAP transceivers.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, replace
from typing import Iterator, Optional

from .coverage import MfsoConfig, extended_radius, slant_distance_to_J, theta_radicand
from .energy import CostParams, EnergyParams
from .errors import (AngleOverflowError, GeometryInfeasibleError,
                     NoFeasibleAlphaError, NoFeasibleBetaError)
from .link_budget import (LinkBudgetParams, SupplementaryCap, border_power_principal,
                          meets_requirement, principal_radius, supplementary_power)

DEFAULT_STEP = math.radians(1.0)


@dataclass(frozen=True)
class OptimizerInputs:
    """Everything the configuration search depends on.

    Attributes:
        link: Optical constants.
        energy: Power/mass constants and solar budget.
        cost: Amortization and maintenance constants.
        v_max: Inter-HAP links allowed per HAP.
        w: Wavelengths per WDM link (also ground nodes per HAP).
        n_nodes: Number of ground FSO nodes.
        area: Surface of the served region (m^2).
        cap: Supplementary power convention.
    """
    link: LinkBudgetParams = LinkBudgetParams()
    energy: EnergyParams = EnergyParams()
    cost: CostParams = CostParams()
    v_max: int = 10
    w: int = 40
    n_nodes: int = 480
    area: float = 1e10
    cap: SupplementaryCap = SupplementaryCap.BETA

    def __post_init__(self):
        if self.v_max < 0:
            raise ValueError("v_max must be >= 0")
        if self.w < 1:
            raise ValueError("w must be >= 1")
        if self.n_nodes < 0:
            raise ValueError("n_nodes must be >= 0")
        if not self.area > 0:
            raise ValueError("area must be > 0")
        object.__setattr__(self, "cap", SupplementaryCap(self.cap))

    def with_v(self, v: int) -> "OptimizerInputs":
        return replace(self, v_max=v)


@dataclass(frozen=True)
class OptimalConfig:
    cfg: MfsoConfig
    r_ext: float
    k_hat: int
    estimated_cost: float


def _grid(step: float) -> Iterator[tuple[int, float]]:
    if not step > 0:
        raise ValueError("step must be > 0")
    k = 1
    while k * step < math.pi:
        yield k, k * step
        k += 1


def alpha_max(link: LinkBudgetParams, step: float = DEFAULT_STEP) -> float:
    """Widest grid principal aperture whose footprint rim still gets rho_rx.

    Border power falls monotonically with alpha, so the feasible grid values
    form a prefix and the scan stops at the first failure.

    Raises:
        NoFeasibleAlphaError: even the first grid angle fails.
    """
    best = None
    for _, alpha in _grid(step):
        if not meets_requirement(link, border_power_principal(link, alpha)):
            break
        best = alpha
    if best is None:
        raise NoFeasibleAlphaError(
            f"no principal beam of {math.degrees(step):g} deg or more reaches rho_rx")
    return best


@functools.lru_cache(maxsize=65536)
def _beta_scan(link: LinkBudgetParams, alpha: float, m: int, step: float,
               cap: SupplementaryCap) -> Optional[float]:
    last = None
    for _, beta in _grid(step):
        if theta_radicand(alpha, beta, m) < 0:
            # cone still too narrow to reach K and K'; keep widening
            if last is None:
                continue
            break
        if cap is SupplementaryCap.BETA and beta > math.pi / 2:
            break
        try:
            r_ext = extended_radius(link, MfsoConfig(alpha, m, beta))
        except AngleOverflowError:
            break
        except GeometryInfeasibleError:
            if last is None:
                continue
            break
        power = supplementary_power(link, slant_distance_to_J(link, r_ext), beta, cap)
        if not meets_requirement(link, power):
            break
        last = beta
    return last


def beta_max(link: LinkBudgetParams, alpha: float, m: int, step: float = DEFAULT_STEP,
             cap: SupplementaryCap = SupplementaryCap.BETA) -> float:
    """Widest grid supplementary aperture whose joint points still get rho_rx.

    Widens beta one step at a time from the first geometrically feasible
    value and returns the last value before the power requirement fails
    (or the joint ray would reach the horizon).

    Raises:
        NoFeasibleBetaError: no grid beta is both feasible and powered.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    result = _beta_scan(link, alpha, m, step, SupplementaryCap(cap))
    if result is None:
        raise NoFeasibleBetaError(
            f"no supplementary beam for alpha={math.degrees(alpha):g} deg, m={m}")
    return result


def m_upper_bound(energy: EnergyParams, v_max: int) -> int:
    """Most supplementary transceivers the solar budget supports with V inter-HAP links."""
    per_serving = energy.mu_fso * energy.rho_avion + energy.rho_hcm + energy.rho_fso_tx
    fixed = (v_max * energy.mu_fso * energy.rho_avion + v_max * energy.rho_inter
             + energy.mu_hap * energy.rho_avion + energy.rho_pat)
    bound = (energy.e_solar / 24.0 - fixed) / per_serving - 1.0
    return max(0, math.floor(bound))


def estimate_hap_count(r_ext: float, inputs: OptimizerInputs) -> int:
    """Square-cell overestimate of the HAP count for coverage radius ``r_ext``."""
    if not r_ext > 0:
        raise ValueError("r_ext must be > 0")
    return math.ceil(max(inputs.n_nodes / inputs.w, inputs.area / (2.0 * r_ext * r_ext)))


def estimate_cost(k_hat: int, m: int, inputs: OptimizerInputs) -> float:
    c = inputs.cost
    return k_hat * (c.amort_hap + (m + inputs.v_max + 1) * c.amort_fso + c.maint_daily)


def candidates(inputs: OptimizerInputs, step: float = DEFAULT_STEP) -> Iterator[OptimalConfig]:
    """Every evaluated grid point, principal aperture descending then m ascending.

    A ring whose extended radius does not exceed the bare principal footprint
    adds transceivers without adding coverage and is not emitted.
    """
    a_max = alpha_max(inputs.link, step)
    n_alpha = round(a_max / step)
    m_top = m_upper_bound(inputs.energy, inputs.v_max)
    for k in range(n_alpha, 0, -1):
        alpha = k * step
        r_alpha = principal_radius(inputs.link, alpha)
        for m in range(0, m_top + 1):
            if m == 0:
                cfg, r_ext = MfsoConfig(alpha), r_alpha
            else:
                try:
                    beta = beta_max(inputs.link, alpha, m, step, inputs.cap)
                except NoFeasibleBetaError:
                    continue
                cfg = MfsoConfig(alpha, m, beta)
                r_ext = extended_radius(inputs.link, cfg)
                if r_ext <= r_alpha:
                    continue
            k_hat = estimate_hap_count(r_ext, inputs)
            yield OptimalConfig(cfg, r_ext, k_hat, estimate_cost(k_hat, m, inputs))


def _rank(c: OptimalConfig):
    return (c.estimated_cost, c.cfg.m, -c.cfg.alpha)


def find_optimal_mfso(inputs: OptimizerInputs, step: float = DEFAULT_STEP) -> OptimalConfig:
    """Cheapest configuration by estimated daily cost.

    Ties go to fewer supplementary transceivers, then to the wider principal beam.

    Raises:
        NoFeasibleAlphaError: no principal beam meets the power requirement.
    """
    return min(candidates(inputs, step), key=_rank)
