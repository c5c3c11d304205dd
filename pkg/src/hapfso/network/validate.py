"""Independent structural checks on a finished network plan.

Nothing here reuses the construction code paths: loads, degrees, flows and
costs are all recounted from the raw plan.
"""
from __future__ import annotations

import math
from collections import Counter, defaultdict

from ..coverage import slant_distance_to_J
from ..energy import CostParams, hap_lower_bound
from ..errors import InvariantViolation
from ..link_budget import (LinkBudgetParams, SupplementaryCap, border_power_principal,
                           meets_requirement, supplementary_power)

_REL = 1e-9


def plan_problems(plan, link: LinkBudgetParams, cost: CostParams, w: int,
                  l_hh: float, wavelength_capacity: float = 1.0,
                  cap: SupplementaryCap = SupplementaryCap.BETA) -> list[str]:
    """Every broken invariant of ``plan``, as readable strings (empty when valid)."""
    problems = []
    scenario, topo = plan.scenario, plan.topology
    clusters = plan.clusters
    k = len(clusters)
    r_ext = plan.config.r_ext

    # clustering
    seen = Counter(node for c in clusters for node in c.member_ids)
    pos = {n.id: (n.x, n.y) for n in scenario.nodes}
    for node in pos:
        if seen[node] != 1:
            problems.append(f"node {node} is in {seen[node]} clusters")
    for node in set(seen) - set(pos):
        problems.append(f"cluster member {node} is not a scenario node")
    for i, c in enumerate(clusters):
        if len(c.member_ids) > w:
            problems.append(f"cluster {i} has {len(c.member_ids)} members > W={w}")
        for node in c.member_ids:
            if node in pos:
                d = math.dist(pos[node], c.center)
                if d > r_ext * (1 + _REL):
                    problems.append(f"node {node} is {d:.1f} m from HAP {i} (R_ext {r_ext:.1f})")
    if k < hap_lower_bound(len(pos), w):
        problems.append(f"{k} HAPs below the lower bound {hap_lower_bound(len(pos), w)}")

    # worst-case receiver on the coverage circle still gets enough power
    cfg = plan.config.cfg
    if cfg.m == 0:
        power = border_power_principal(link, cfg.alpha)
    else:
        power = supplementary_power(link, slant_distance_to_J(link, r_ext), cfg.beta, cap)
    if not meets_requirement(link, power):
        problems.append(f"received power {power:.3e} W at the coverage edge below rho_rx")

    # HAPs sit over the cluster centers
    if len(topo.haps) != k:
        problems.append(f"{len(topo.haps)} HAPs for {k} clusters")
    for h, c in zip(topo.haps, clusters):
        if (h.x, h.y) != c.center:
            problems.append(f"HAP {h.id} is not over its cluster center")

    # links
    xy = {h.id: (h.x, h.y) for h in topo.haps}
    edges = {}
    degree = Counter()
    for ln in topo.links:
        key = (min(ln.a, ln.b), max(ln.a, ln.b))
        if ln.a == ln.b or ln.a not in xy or ln.b not in xy:
            problems.append(f"bad link {ln.a}-{ln.b}")
            continue
        if key in edges:
            problems.append(f"duplicate link {key}")
        edges[key] = ln
        degree[ln.a] += 1
        degree[ln.b] += 1
        length = math.dist(xy[ln.a], xy[ln.b])
        if length > l_hh * (1 + _REL):
            problems.append(f"link {key} is {length:.1f} m > L_HH {l_hh:.1f}")
        if not math.isclose(length, ln.length, rel_tol=_REL, abs_tol=1e-6):
            problems.append(f"link {key} stored length {ln.length} != {length}")
    for hap, deg in degree.items():
        if deg > plan.v_used:
            problems.append(f"HAP {hap} has {deg} links > V={plan.v_used}")

    # lightpaths: valid routes and per-direction loads
    load = Counter()
    routed = defaultdict(int)
    for lp in topo.lightpaths:
        r = lp.route
        if len(r) < 2 or r[0] != lp.src or r[-1] != lp.dst or len(set(r)) != len(r):
            problems.append(f"bad route {r} for {lp.src}->{lp.dst}")
            continue
        for a, b in zip(r, r[1:]):
            if (min(a, b), max(a, b)) not in edges:
                problems.append(f"route {lp.src}->{lp.dst} uses missing link {a}-{b}")
            load[(a, b)] += lp.count
        routed[(lp.src, lp.dst)] += lp.count
    for key, ln in edges.items():
        used = max(load[key], load[key[::-1]])
        if used > w:
            problems.append(f"link {key} carries {used} lightpaths > W={w}")
        if used != ln.wavelengths_used:
            problems.append(f"link {key} reports {ln.wavelengths_used} wavelengths, carries {used}")

    # conservation against a fresh aggregation of the raw traffic
    home = {node: i for i, c in enumerate(clusters) for node in c.member_ids}
    flow = defaultdict(float)
    for d in scenario.demands:
        if d.src in home and d.dst in home and home[d.src] != home[d.dst]:
            flow[(home[d.src], home[d.dst])] += d.bandwidth
    for pair in set(flow) | set(routed):
        f = flow.get(pair, 0.0)
        need = 0 if f <= 0 else max(1, math.ceil(f / wavelength_capacity - 1e-9))
        if routed.get(pair, 0) != need:
            problems.append(f"HAP pair {pair} routed {routed.get(pair, 0)} of {need} lightpaths")

    # cost
    m = cfg.m
    expect = (k * (cost.amort_hap + (m + 1) * cost.amort_fso + cost.maint_onetime / cost.maint_cycle_days)
              + 2 * len(topo.links) * cost.amort_fso)
    c = plan.cost
    if (c.k, c.m, c.l_inter) != (k, m, len(topo.links)):
        problems.append(f"cost counts {(c.k, c.m, c.l_inter)} != {(k, m, len(topo.links))}")
    if not math.isclose(c.total, expect, rel_tol=1e-12):
        problems.append(f"cost {c.total} != recomputed {expect}")
    return problems


def validate_plan(plan, link: LinkBudgetParams, cost: CostParams, w: int, l_hh: float,
                  wavelength_capacity: float = 1.0,
                  cap: SupplementaryCap = SupplementaryCap.BETA) -> None:
    """Raise InvariantViolation listing every broken invariant of ``plan``."""
    problems = plan_problems(plan, link, cost, w, l_hh, wavelength_capacity, cap)
    if problems:
        shown = "; ".join(problems[:10])
        more = f" (+{len(problems) - 10} more)" if len(problems) > 10 else ""
        raise InvariantViolation(shown + more)
