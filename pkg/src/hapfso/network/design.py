"""End-to-end planning loop over the inter-HAP link budget V."""
from __future__ import annotations

import logging
from dataclasses import dataclass

from ..energy import CostBreakdown, network_cost, solar_feasible
from ..errors import DesignInfeasibleError, RoutingFailure
from ..optimizer import DEFAULT_STEP, OptimalConfig, OptimizerInputs, find_optimal_mfso
from .clustering import Cluster, cluster_nodes
from .scenario import Scenario
from .topology import (CONGESTION_WEIGHT, DEFAULT_L_HH, EXISTING_LINK_WEIGHT, HapTopology,
                       aggregate_demands, build_topology, haps_from_clusters)

log = logging.getLogger(__name__)

DEFAULT_V_CEILING = 64


@dataclass(frozen=True)
class NetworkPlan:
    scenario: Scenario
    config: OptimalConfig
    clusters: list[Cluster]
    topology: HapTopology
    cost: CostBreakdown
    v_used: int

    @property
    def k(self) -> int:
        return len(self.clusters)

    @property
    def l_inter(self) -> int:
        return len(self.topology.links)

    @property
    def avg_degree(self) -> float:
        return 2.0 * self.l_inter / self.k if self.k else 0.0

    def to_dict(self) -> dict:
        cfg = self.config.cfg
        return {
            "v_used": self.v_used,
            "config": {"alpha": cfg.alpha, "m": cfg.m, "beta": cfg.beta,
                       "r_ext": self.config.r_ext, "k_hat": self.config.k_hat,
                       "estimated_cost": self.config.estimated_cost},
            "clusters": [{"center": list(c.center), "members": c.member_ids, "radius": c.radius}
                         for c in self.clusters],
            "links": [{"a": ln.a, "b": ln.b, "length": ln.length,
                       "wavelengths_used": ln.wavelengths_used} for ln in self.topology.links],
            "lightpaths": [{"src": lp.src, "dst": lp.dst, "route": lp.route, "count": lp.count}
                           for lp in self.topology.lightpaths],
            "cost": {"amortization": self.cost.amortization,
                     "maintenance": self.cost.maintenance, "total": self.cost.total,
                     "k": self.cost.k, "m": self.cost.m, "l_inter": self.cost.l_inter},
        }


def design_network(inputs: OptimizerInputs, scenario: Scenario, *,
                   l_hh: float = DEFAULT_L_HH, wavelength_capacity: float = 1.0,
                   v_ceiling: int = DEFAULT_V_CEILING,
                   step: float = DEFAULT_STEP,
                   existing_weight: float = EXISTING_LINK_WEIGHT,
                   congestion: float = CONGESTION_WEIGHT) -> NetworkPlan:
    """Plan HAP positions, payloads and inter-HAP links for a scenario.

    Starts from ``inputs.v_max``. Whenever some lightpath bundle cannot be
    routed, V goes up by one and the whole pipeline reruns: a larger V
    tightens the energy budget and may shrink the coverage radius.

    Raises:
        DesignInfeasibleError: still unroutable at ``v_ceiling``, or V grew
            past what the solar budget can power even with a lone serving
            transceiver.
    """
    if inputs.v_max > v_ceiling:
        raise ValueError(f"initial V={inputs.v_max} above the ceiling {v_ceiling}")
    if inputs.n_nodes != scenario.n_nodes or inputs.area != scenario.area:
        raise ValueError("inputs.n_nodes/area disagree with the scenario")
    cached_radius, clusters, demands = None, None, None
    failure = None
    for v in range(inputs.v_max, v_ceiling + 1):
        opt = find_optimal_mfso(inputs.with_v(v), step)
        if not solar_feasible(inputs.energy, opt.cfg.n_serving, v):
            raise DesignInfeasibleError(
                v, f"solar budget cannot power V={v} inter-HAP links; last failure: {failure}")
        if opt.r_ext != cached_radius:
            clusters = cluster_nodes(scenario, opt.r_ext, inputs.w)
            demands = aggregate_demands(scenario, clusters, wavelength_capacity)
            cached_radius = opt.r_ext
        haps = haps_from_clusters(clusters, inputs.link.h)
        try:
            topo = build_topology(haps, demands, l_hh, v, inputs.w,
                                  existing_weight, congestion)
        except RoutingFailure as exc:
            log.info("V=%d: %s", v, exc)
            failure = exc
            continue
        cost = network_cost(inputs.cost, len(clusters), opt.cfg.m, len(topo.links))
        return NetworkPlan(scenario, opt, clusters, topo, cost, v)
    raise DesignInfeasibleError(v_ceiling, f"unroutable up to V={v_ceiling}: {failure}")
