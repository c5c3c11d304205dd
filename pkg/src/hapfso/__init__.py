"""Planning toolkit for HAP networks serving ground FSO nodes."""
from .coverage import MfsoConfig, extended_radius, geometry
from .energy import CostParams, EnergyParams, daily_energy, network_cost
from .link_budget import LinkBudgetParams, SupplementaryCap
from .optimizer import OptimalConfig, OptimizerInputs, find_optimal_mfso

__version__ = "0.1.0"

__all__ = [
    "MfsoConfig", "extended_radius", "geometry", "CostParams", "EnergyParams",
    "daily_energy", "network_cost", "LinkBudgetParams", "SupplementaryCap",
    "OptimalConfig", "OptimizerInputs", "find_optimal_mfso",
]
