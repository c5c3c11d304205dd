"""Ground node layouts and traffic matrices.

Scenarios are drawn from a PCG64 generator so a seed reproduces the same
layout on every platform, and serialize to plain JSON.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np


@dataclass(frozen=True)
class Node:
    id: int
    x: float
    y: float


@dataclass(frozen=True)
class Demand:
    src: int
    dst: int
    bandwidth: float  # Gbps


@dataclass(frozen=True)
class Scenario:
    nodes: list[Node]
    demands: list[Demand] = field(default_factory=list)
    area_side: float = 100_000.0
    seed: int | None = None

    def __post_init__(self):
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise ValueError("node ids must be unique")
        for n in self.nodes:
            if not (0 <= n.x <= self.area_side and 0 <= n.y <= self.area_side):
                raise ValueError(f"node {n.id} lies outside the area")
        known = set(ids)
        for d in self.demands:
            if d.src not in known or d.dst not in known or d.src == d.dst:
                raise ValueError(f"bad demand endpoints {d.src}->{d.dst}")
            if not d.bandwidth >= 0:
                raise ValueError("demand bandwidth must be >= 0")

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def area(self) -> float:
        return self.area_side * self.area_side

    def coords(self) -> np.ndarray:
        return np.array([(n.x, n.y) for n in self.nodes], dtype=float).reshape(-1, 2)

    def traffic_sums(self) -> tuple[dict[int, float], dict[int, float]]:
        """Per-node outgoing and incoming totals (Gbps)."""
        out = {n.id: 0.0 for n in self.nodes}
        inc = {n.id: 0.0 for n in self.nodes}
        for d in self.demands:
            out[d.src] += d.bandwidth
            inc[d.dst] += d.bandwidth
        return out, inc

    def to_dict(self) -> dict:
        return {
            "nodes": [{"id": n.id, "x": n.x, "y": n.y} for n in self.nodes],
            "demands": [{"src": d.src, "dst": d.dst, "bandwidth": d.bandwidth}
                        for d in self.demands],
            "area_side": self.area_side,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        expected = {"nodes", "demands", "area_side", "seed"}
        unknown = set(data) - expected
        if unknown:
            raise ValueError(f"unknown scenario fields: {sorted(unknown)}")
        return cls(
            nodes=[Node(int(n["id"]), float(n["x"]), float(n["y"])) for n in data["nodes"]],
            demands=[Demand(int(d["src"]), int(d["dst"]), float(d["bandwidth"]))
                     for d in data.get("demands", [])],
            area_side=float(data["area_side"]),
            seed=data.get("seed"),
        )

    def dump(self, path: Union[str, Path]) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Scenario":
        return cls.from_dict(json.loads(Path(path).read_text()))


# keeps floating-point sums of scaled demands strictly under the capacity
_SCALE_GUARD = 1.0 - 1e-9


def generate_scenario(n_nodes: int, area_side: float = 100_000.0,
                      wavelength_capacity: float = 1.0, seed: int = 0,
                      demands_per_node: int = 4) -> Scenario:
    """Uniform random nodes on a square plus a capacity-respecting traffic matrix.

    Every node sends to ``demands_per_node`` distinct random peers with
    uniform random magnitudes. Each demand is then scaled down by the larger
    of its source's outgoing and its destination's incoming total (when that
    total exceeds one wavelength), so no node sends or receives more than
    ``wavelength_capacity``.
    """
    if n_nodes < 2:
        raise ValueError("need at least two nodes")
    rng = np.random.Generator(np.random.PCG64(seed))
    xy = rng.uniform(0.0, area_side, size=(n_nodes, 2))
    fanout = min(demands_per_node, n_nodes - 1)

    src, dst = [], []
    for i in range(n_nodes):
        peers = rng.choice(n_nodes - 1, size=fanout, replace=False)
        peers = np.where(peers >= i, peers + 1, peers)
        src.extend([i] * fanout)
        dst.extend(peers.tolist())
    src = np.asarray(src, dtype=int)
    dst = np.asarray(dst, dtype=int)
    raw = rng.uniform(0.0, 1.0, size=src.size)

    out = np.bincount(src, weights=raw, minlength=n_nodes)
    inc = np.bincount(dst, weights=raw, minlength=n_nodes)
    worst = np.maximum.reduce([out[src], inc[dst], np.full(src.size, wavelength_capacity)])
    bw = raw * (wavelength_capacity / worst) * _SCALE_GUARD

    nodes = [Node(i, float(x), float(y)) for i, (x, y) in enumerate(xy)]
    demands = [Demand(int(s), int(d), float(b)) for s, d, b in zip(src, dst, bw)]
    return Scenario(nodes, demands, float(area_side), seed)
