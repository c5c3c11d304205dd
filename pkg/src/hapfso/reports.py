"""Table and series builders behind the command-line front end.

Each builder returns a header and a list of rows of strings in a fixed
order. Sweep points are evaluated through an executor; ``map`` keeps the
output order independent of completion order.
"""
from __future__ import annotations

import csv
import math
from concurrent.futures import Executor, ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

from .config import RunConfig
from .coverage import MfsoConfig, extended_radius
from .energy import hap_lower_bound
from .errors import HapFsoError, NoFeasibleBetaError
from .link_budget import principal_radius
from .network import NetworkPlan, Scenario, design_network, generate_scenario, validate_plan
from .optimizer import OptimalConfig, alpha_max, beta_max, find_optimal_mfso, m_upper_bound

Rows = list[list[str]]


class SweepPointError(HapFsoError):
    """A module error raised at one sweep point, annotated with that point."""

    def __init__(self, point: str, cause: Exception):
        self.point = point
        self.cause = cause
        super().__init__(f"{point}: {cause}")


def fmt_deg(angle: Optional[float]) -> str:
    if angle is None:
        return "-"
    return f"{math.degrees(angle):.10g}"


def fmt_radius(r: float) -> str:
    """Whole meters, truncated as in the published tables."""
    return str(int(r))


def fmt_cost(c: float) -> str:
    return f"{c:.2f}"


def fmt_num(x: float) -> str:
    return f"{x:.10g}"


def _run(executor: Optional[Executor], fn: Callable, points: Sequence) -> list:
    if executor is None:
        with ThreadPoolExecutor(max_workers=1) as ex:
            return list(ex.map(fn, points))
    return list(executor.map(fn, points))


def _annotate(point: str, fn: Callable, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except HapFsoError as exc:
        if isinstance(exc, SweepPointError):
            raise
        raise SweepPointError(point, exc) from exc


def optimal_row(opt: OptimalConfig) -> list[str]:
    cfg = opt.cfg
    return [fmt_deg(cfg.alpha), str(cfg.m), fmt_deg(cfg.beta if cfg.m else None),
            fmt_radius(opt.r_ext), str(opt.k_hat), fmt_cost(opt.estimated_cost)]


OPTIMAL_HEADER = ["alpha_deg", "m", "beta_deg", "r_ext_m", "k_hat", "est_cost"]


def optimize_report(cfg: RunConfig) -> tuple[list[str], Rows]:
    opt = find_optimal_mfso(cfg.inputs(), cfg.step)
    return OPTIMAL_HEADER, [optimal_row(opt)]


def max_beam_width_table(cfg: RunConfig, executor: Optional[Executor] = None):
    """Widest single principal beam and its footprint radius per receiver aperture."""
    header = ["r_rx_m", "alpha_max_deg", "radius_m"]

    def point(r_rx):
        link = replace(cfg.link, r_rx=r_rx)
        a = _annotate(f"r_rx={r_rx:g}", alpha_max, link, cfg.step)
        return [fmt_num(r_rx), fmt_deg(a), fmt_radius(principal_radius(link, a))]

    return header, _run(executor, point, list(cfg.sweep.r_rx))


def best_extended_radius(link, alpha: float, m_top: int, step: float, cap) -> float:
    """Largest coverage radius at ``alpha`` with at most ``m_top`` supplementary beams."""
    best = principal_radius(link, alpha)
    for m in range(1, m_top + 1):
        try:
            beta = beta_max(link, alpha, m, step, cap)
        except NoFeasibleBetaError:
            continue
        best = max(best, extended_radius(link, MfsoConfig(alpha, m, beta)))
    return best


def max_extended_radius_table(cfg: RunConfig, executor: Optional[Executor] = None):
    """Energy-limited ring size and the widest coverage it buys, per solar level.

    Uses the widest feasible principal beam and V = ``cfg.v_init``; one
    radius column per receiver aperture in the sweep (or the configured one).
    """
    r_rxs = list(cfg.sweep.r_rx) or [cfg.link.r_rx]
    header = ["e_solar_kwh", "max_m"] + [f"r_ext_m_rrx{fmt_num(r)}" for r in r_rxs]

    def point(e_kwh):
        energy = replace(cfg.energy, e_solar=e_kwh * 1000.0)
        m_top = m_upper_bound(energy, cfg.v_init)
        row = [fmt_num(e_kwh), str(m_top)]
        for r_rx in r_rxs:
            link = replace(cfg.link, r_rx=r_rx)
            a = _annotate(f"e_solar={e_kwh:g} kWh, r_rx={r_rx:g}", alpha_max, link, cfg.step)
            row.append(fmt_radius(best_extended_radius(link, a, m_top, cfg.step, cfg.cap)))
        return row

    return header, _run(executor, point, list(cfg.sweep.e_solar_kwh))


def _axis(values: Iterable, default) -> list:
    values = list(values)
    return values if values else [default]


def optimal_configs_table(cfg: RunConfig, executor: Optional[Executor] = None):
    """Optimal configuration per (node count, W, solar level)."""
    header = ["n_nodes", "w", "e_solar_kwh", "v"] + OPTIMAL_HEADER
    points = [(n, w, e)
              for n in _axis(cfg.sweep.n_nodes, cfg.n_nodes)
              for w in _axis(cfg.sweep.w, cfg.w)
              for e in _axis(cfg.sweep.e_solar_kwh, cfg.energy.e_solar / 1000.0)]

    def point(p):
        n, w, e = p
        inputs = cfg.inputs(n_nodes=n, w=w, energy=replace(cfg.energy, e_solar=e * 1000.0))
        opt = _annotate(f"n_nodes={n}, w={w}, e_solar={e:g} kWh",
                        find_optimal_mfso, inputs, cfg.step)
        return [str(n), str(w), fmt_num(e), str(cfg.v_init)] + optimal_row(opt)

    return header, _run(executor, point, points)


@dataclass(frozen=True)
class DesignCase:
    scenario: Scenario
    w: int
    e_solar_kwh: float

    @property
    def name(self) -> str:
        return f"n{self.scenario.n_nodes}_s{self.scenario.seed}_w{self.w}_e{fmt_num(self.e_solar_kwh)}"


SERIES_HEADER = ["n_nodes", "seed", "w", "e_solar_kwh", "v_used", "alpha_deg", "m", "beta_deg",
                 "r_ext_m", "k", "k_hat", "lb", "l_inter", "avg_degree", "cost"]


def design_scenarios(cfg: RunConfig) -> list[Scenario]:
    if cfg.scenario.file:
        return [Scenario.load(cfg.scenario.file)]
    sizes = _axis(cfg.sweep.n_nodes, cfg.n_nodes)
    seeds = list(cfg.sweep.seeds) or [cfg.scenario.seed + i for i in range(len(sizes))]
    return [generate_scenario(n, cfg.area_side, cfg.wavelength_capacity, s,
                              cfg.scenario.demands_per_node)
            for n, s in zip(sizes, seeds)]


def design_cases(cfg: RunConfig, scenarios: Sequence[Scenario]) -> list[DesignCase]:
    return [DesignCase(sc, w, e)
            for sc in scenarios
            for w in _axis(cfg.sweep.w, cfg.w)
            for e in _axis(cfg.sweep.e_solar_kwh, cfg.energy.e_solar / 1000.0)]


def run_design_case(cfg: RunConfig, case: DesignCase) -> NetworkPlan:
    """Design and independently validate one case."""
    sc = case.scenario
    inputs = cfg.inputs(n_nodes=sc.n_nodes, area=sc.area, w=case.w,
                        energy=replace(cfg.energy, e_solar=case.e_solar_kwh * 1000.0))
    plan = _annotate(case.name, design_network, inputs, sc, l_hh=cfg.l_hh,
                     wavelength_capacity=cfg.wavelength_capacity,
                     v_ceiling=cfg.v_ceiling, step=cfg.step)
    validate_plan(plan, inputs.link, inputs.cost, case.w, cfg.l_hh,
                  cfg.wavelength_capacity, cfg.cap)
    return plan


def series_row(case: DesignCase, plan: NetworkPlan) -> list[str]:
    cfg = plan.config.cfg
    return [str(case.scenario.n_nodes), str(case.scenario.seed), str(case.w),
            fmt_num(case.e_solar_kwh), str(plan.v_used), fmt_deg(cfg.alpha), str(cfg.m),
            fmt_deg(cfg.beta if cfg.m else None), fmt_radius(plan.config.r_ext), str(plan.k),
            str(plan.config.k_hat), str(hap_lower_bound(case.scenario.n_nodes, case.w)),
            str(plan.l_inter), f"{plan.avg_degree:.4f}", fmt_cost(plan.cost.total)]


def design_table(cfg: RunConfig, executor: Optional[Executor] = None):
    """All design cases; returns the series header, rows and (case, plan) pairs."""
    cases = design_cases(cfg, design_scenarios(cfg))
    plans = _run(executor, lambda c: run_design_case(cfg, c), cases)
    rows = [series_row(c, p) for c, p in zip(cases, plans)]
    return SERIES_HEADER, rows, list(zip(cases, plans))


def write_csv(path: Path, header: list[str], rows: Rows) -> None:
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(header)
        out.writerows(rows)
