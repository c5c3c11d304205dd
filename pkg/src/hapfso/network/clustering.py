"""Capacity-limited disk cover of ground nodes.

Each cluster becomes one HAP: its center is the HAP's ground projection and
no member may be farther than the coverage radius from it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.spatial import cKDTree

from .scenario import Scenario


@dataclass(frozen=True)
class Cluster:
    center: tuple[float, float]
    member_ids: list[int]
    radius: float


def _within(pts: np.ndarray, center: np.ndarray, idx: list[int], radius: float) -> np.ndarray:
    idx = np.asarray(idx, dtype=int)
    d = np.hypot(pts[idx, 0] - center[0], pts[idx, 1] - center[1])
    return idx[d <= radius]


def cluster_nodes(scenario: Scenario, radius: float, w: int) -> list[Cluster]:
    """Greedy max-coverage clustering.

    Candidate centers are every node position plus, for every node, the
    centroid of the nodes within ``radius`` of it. At each round the candidate
    covering the most still-uncovered nodes wins, counting at most ``w`` of
    them; if it covers more than ``w`` nodes only the ``w`` nearest join.
    Among equally good candidates the one with the fewest uncovered nodes in
    range goes first, which fills sparse edges before dense interiors and
    avoids stranding small remnants. Remaining ties go to the lowest
    generating node id, node position before centroid. A candidate is
    retired once its generating node is covered.
    """
    if not radius > 0:
        raise ValueError("radius must be > 0")
    if w < 1:
        raise ValueError("w must be >= 1")
    ids = [n.id for n in scenario.nodes]
    n = len(ids)
    if n == 0:
        return []
    pts = scenario.coords()
    tree = cKDTree(pts)

    node_nbrs = tree.query_ball_point(pts, radius * (1 + 1e-12))
    centroids = np.array([pts[nb].mean(axis=0) for nb in node_nbrs])
    # candidate 2i is node i's position, 2i+1 the centroid of its neighbourhood
    centers = np.empty((2 * n, 2))
    centers[0::2] = pts
    centers[1::2] = centroids
    raw = tree.query_ball_point(centers, radius * (1 + 1e-12))
    cover = [_within(pts, centers[j], raw[j], radius) for j in range(2 * n)]

    rows = np.repeat(np.arange(2 * n), [c.size for c in cover])
    cols = np.concatenate(cover)
    incidence = sparse.csr_matrix((np.ones(cols.size), (rows, cols)), shape=(2 * n, n))

    uncovered = np.ones(n)
    alive = np.ones(2 * n, dtype=bool)
    clusters = []
    while uncovered.any():
        reach = incidence @ uncovered
        reach[~alive] = -1.0
        gain = np.minimum(reach, w)
        tied = np.flatnonzero(gain == gain.max())
        j = int(tied[np.argmin(reach[tied])])
        members = cover[j][uncovered[cover[j]] > 0]
        if members.size > w:
            d = np.hypot(pts[members, 0] - centers[j, 0], pts[members, 1] - centers[j, 1])
            members = members[np.lexsort((members, d))[:w]]
        uncovered[members] = 0.0
        alive[2 * members] = False
        alive[2 * members + 1] = False
        clusters.append(Cluster((float(centers[j, 0]), float(centers[j, 1])),
                                sorted(ids[i] for i in members), float(radius)))
    return clusters
