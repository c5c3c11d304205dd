"""Network design: scenarios, clustering, routing and the V loop."""
from .clustering import Cluster, cluster_nodes
from .design import DEFAULT_V_CEILING, NetworkPlan, design_network
from .scenario import Demand, Node, Scenario, generate_scenario
from .topology import (DEFAULT_L_HH, Hap, HapTopology, Lightpath, LightpathDemand, Link,
                       aggregate_demands, build_topology, haps_from_clusters)
from .validate import plan_problems, validate_plan

__all__ = [
    "Cluster", "cluster_nodes", "DEFAULT_V_CEILING", "NetworkPlan", "design_network",
    "Demand", "Node", "Scenario", "generate_scenario", "DEFAULT_L_HH", "Hap", "HapTopology",
    "Lightpath", "LightpathDemand", "Link", "aggregate_demands", "build_topology",
    "haps_from_clusters", "plan_problems", "validate_plan",
]
