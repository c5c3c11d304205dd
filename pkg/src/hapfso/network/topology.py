"""Lightpath bundling and incremental inter-HAP topology construction.

Routing runs on the full mesh of HAP pairs within ``l_hh`` of each other.
Links already in the topology are cheaper than new ones, so a route opens a
new link only when every existing path with room is several hops longer.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from ..errors import RoutingFailure
from .clustering import Cluster
from .scenario import Scenario

NEW_LINK_WEIGHT = 1.0
# An existing hop costs EXISTING_LINK_WEIGHT * (1 + CONGESTION_WEIGHT * fill),
# fill being the direction's load after the demand over W. With these values
# any existing path of up to three hops beats one new link, and transit
# traffic drifts away from nearly full links instead of exhausting hubs.
EXISTING_LINK_WEIGHT = 0.2
CONGESTION_WEIGHT = 0.5
DEFAULT_L_HH = 88_000.0  # m, longest inter-HAP link meeting the BER target

# flows a hair above an integer multiple of the capacity are float noise
_CEIL_SLACK = 1e-9


@dataclass(frozen=True)
class Hap:
    id: int
    x: float
    y: float
    elevation: float


@dataclass(frozen=True)
class LightpathDemand:
    src: int
    dst: int
    flow: float  # Gbps
    count: int


@dataclass(frozen=True)
class Link:
    a: int
    b: int
    length: float
    wavelengths_used: int


@dataclass(frozen=True)
class Lightpath:
    src: int
    dst: int
    route: list[int]
    count: int


@dataclass(frozen=True)
class HapTopology:
    haps: list[Hap]
    links: list[Link]
    lightpaths: list[Lightpath]

    def degrees(self) -> dict[int, int]:
        deg = {h.id: 0 for h in self.haps}
        for link in self.links:
            deg[link.a] += 1
            deg[link.b] += 1
        return deg


def haps_from_clusters(clusters: list[Cluster], elevation: float) -> list[Hap]:
    return [Hap(i, c.center[0], c.center[1], elevation) for i, c in enumerate(clusters)]


def lightpath_count(flow: float, wavelength_capacity: float) -> int:
    if flow <= 0:
        return 0
    return max(1, math.ceil(flow / wavelength_capacity - _CEIL_SLACK))


def aggregate_demands(scenario: Scenario, clusters: list[Cluster],
                      wavelength_capacity: float = 1.0) -> list[LightpathDemand]:
    """Bundle node-to-node demands into lightpath demands between HAPs.

    HAP ids are cluster indices. Demands inside one cluster never leave the
    HAP and are dropped. The result is sorted by (src, dst).

    Raises:
        ValueError: a demand endpoint belongs to no cluster.
    """
    if not wavelength_capacity > 0:
        raise ValueError("wavelength_capacity must be > 0")
    home = {}
    for k, c in enumerate(clusters):
        for node in c.member_ids:
            home[node] = k
    flows: dict[tuple[int, int], float] = defaultdict(float)
    for d in scenario.demands:
        try:
            a, b = home[d.src], home[d.dst]
        except KeyError as exc:
            raise ValueError(f"node {exc.args[0]} is not in any cluster") from None
        if a != b:
            flows[(a, b)] += d.bandwidth
    out = []
    for (a, b), f in sorted(flows.items()):
        n = lightpath_count(f, wavelength_capacity)
        if n:
            out.append(LightpathDemand(a, b, f, n))
    return out


def _routing_order(demands: list[LightpathDemand]) -> list[LightpathDemand]:
    return sorted(demands, key=lambda d: (-d.count, d.src, d.dst))


def build_topology(haps: list[Hap], demands: list[LightpathDemand], l_hh: float,
                   v: int, w: int, existing_weight: float = EXISTING_LINK_WEIGHT,
                   congestion: float = CONGESTION_WEIGHT) -> HapTopology:
    """Route every lightpath demand, adding inter-HAP links as needed.

    Demands go largest first (ties by HAP pair). Each bundle takes one path:
    the cheapest on a graph where an existing link with at least ``count``
    spare wavelengths in the travel direction costs
    ``existing_weight * (1 + congestion * load_after / w)`` and a new link no
    longer than ``l_hh`` costs ``NEW_LINK_WEIGHT``. New links need a free
    slot (degree < ``v``) at both ends, counting any link the same path
    already opened.

    Raises:
        RoutingFailure: for the first demand that has no feasible path.
    """
    if v < 0 or w < 1:
        raise ValueError("need v >= 0 and w >= 1")
    if not (existing_weight > 0 and congestion >= 0):
        raise ValueError("need existing_weight > 0 and congestion >= 0")
    k = len(haps)
    for i, h in enumerate(haps):
        if h.id != i:
            raise ValueError("HAP ids must be 0..K-1 in order")
    xy = np.array([(h.x, h.y) for h in haps], dtype=float).reshape(-1, 2)
    dist = np.hypot(xy[:, None, 0] - xy[None, :, 0], xy[:, None, 1] - xy[None, :, 1])
    pairs = np.nonzero((dist <= l_hh) & ~np.eye(k, dtype=bool))

    linked = np.zeros((k, k), dtype=bool)
    load = np.zeros((k, k), dtype=int)  # lightpaths travelling a -> b
    degree = np.zeros(k, dtype=int)
    lightpaths = []

    for dem in _routing_order(demands):
        if not (0 <= dem.src < k and 0 <= dem.dst < k) or dem.src == dem.dst:
            raise ValueError(f"bad HAP pair {dem.src}->{dem.dst}")
        route = _route(dem, pairs, linked, load, degree, v, w,
                       existing_weight, congestion)
        if route is None:
            raise RoutingFailure(dem, f"no path for {dem.count} lightpath(s) "
                                      f"HAP {dem.src} -> HAP {dem.dst} at V={v}")
        for a, b in zip(route, route[1:]):
            if not linked[a, b]:
                linked[a, b] = linked[b, a] = True
                degree[a] += 1
                degree[b] += 1
            load[a, b] += dem.count
        lightpaths.append(Lightpath(dem.src, dem.dst, route, dem.count))

    links = []
    for a, b in zip(*np.nonzero(np.triu(linked))):
        links.append(Link(int(a), int(b), float(dist[a, b]),
                          int(max(load[a, b], load[b, a]))))
    return HapTopology(list(haps), links, lightpaths)


def _route(dem: LightpathDemand, pairs, linked, load, degree, v, w,
           existing_weight, congestion):
    """Cheapest feasible HAP sequence, or None.

    ``pairs`` lists every ordered in-range HAP pair. Search states are
    (HAP, entered over a new link?): state u is u itself, state u + K means
    u was reached over a link this path opens. Leaving such a HAP over
    another new link needs two free slots.
    """
    k = len(degree)
    if dem.count > w:
        return None
    ia, ib = pairs
    lk = linked[ia, ib]
    ld = load[ia, ib] + dem.count
    old = lk & (ld <= w)
    new = ~lk & (degree[ia] < v) & (degree[ib] < v)
    new_from_new = new & (degree[ia] <= v - 2)
    hop = existing_weight * (1.0 + congestion * ld[old] / w)
    n_new, n_nn = int(new.sum()), int(new_from_new.sum())

    rows = np.concatenate([ia[old], ia[old] + k, ia[new], ia[new_from_new] + k])
    cols = np.concatenate([ib[old], ib[old], ib[new] + k, ib[new_from_new] + k])
    data = np.concatenate([hop, hop, np.full(n_new + n_nn, NEW_LINK_WEIGHT)])
    graph = csr_matrix((data, (rows, cols)), shape=(2 * k, 2 * k))

    cost, pred = dijkstra(graph, directed=True, indices=dem.src, return_predecessors=True)
    end = dem.dst if cost[dem.dst] <= cost[k + dem.dst] else k + dem.dst
    if not np.isfinite(cost[end]):
        return None
    states = [end]
    while states[-1] != dem.src:
        states.append(int(pred[states[-1]]))
    route = [s % k for s in reversed(states)]
    if len(set(route)) != len(route):
        return None
    return route
