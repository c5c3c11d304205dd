"""Run configuration: JSON file plus command-line overrides.

The file uses degrees, meters and kWh/day; everything is converted to the
internal units (radians, meters, Wh/day) here. Unknown keys are rejected at
every level so typos fail loudly.

Example::

    {
      "link": {"r_rx": 2.0},
      "energy": {"e_solar_kwh": 50},
      "w": 80, "v_init": 10, "step_deg": 1.0,
      "sweep": {"e_solar_kwh": [42, 50, 75], "n_nodes": [480, 1005]}
    }
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Optional

from .energy import CostParams, EnergyParams
from .errors import ConfigError
from .link_budget import LinkBudgetParams, SupplementaryCap
from .optimizer import OptimizerInputs

_LINK_KEYS = {f.name for f in fields(LinkBudgetParams)}
_ENERGY_KEYS = {f.name for f in fields(EnergyParams)} - {"e_solar"} | {"e_solar_kwh"}
_COST_KEYS = {f.name for f in fields(CostParams)}
_SWEEP_KEYS = {"e_solar_kwh", "w", "r_rx", "n_nodes", "seeds"}
_SCENARIO_KEYS = {"file", "seed", "demands_per_node"}
_TOP_KEYS = {"link", "energy", "cost", "w", "v_init", "step_deg", "cap", "n_nodes",
             "area_side", "l_hh", "wavelength_capacity", "v_ceiling", "scenario", "sweep"}


@dataclass(frozen=True)
class Sweep:
    """Axes for table and design sweeps. Energies in kWh/day."""
    e_solar_kwh: tuple[float, ...] = ()
    w: tuple[int, ...] = ()
    r_rx: tuple[float, ...] = ()
    n_nodes: tuple[int, ...] = ()
    seeds: tuple[int, ...] = ()


@dataclass(frozen=True)
class ScenarioSpec:
    """Where design scenarios come from: a JSON file, or the generator."""
    file: Optional[str] = None
    seed: int = 0
    demands_per_node: int = 4


@dataclass(frozen=True)
class RunConfig:
    link: LinkBudgetParams = LinkBudgetParams()
    energy: EnergyParams = EnergyParams()
    cost: CostParams = CostParams()
    w: int = 40
    v_init: int = 10
    step: float = math.radians(1.0)
    cap: SupplementaryCap = SupplementaryCap.BETA
    n_nodes: int = 480
    area_side: float = 100_000.0
    l_hh: float = 88_000.0
    wavelength_capacity: float = 1.0
    v_ceiling: int = 64
    scenario: ScenarioSpec = ScenarioSpec()
    sweep: Sweep = field(default_factory=Sweep)

    def __post_init__(self):
        if not self.step > 0:
            raise ConfigError("step_deg must be > 0")
        if not self.area_side > 0 or not self.l_hh > 0 or not self.wavelength_capacity > 0:
            raise ConfigError("area_side, l_hh and wavelength_capacity must be > 0")
        if self.v_init > self.v_ceiling:
            raise ConfigError("v_init must not exceed v_ceiling")
        if self.n_nodes < 2:
            raise ConfigError("n_nodes must be >= 2")
        # OptimizerInputs carries the remaining range checks
        self.inputs()

    def inputs(self, **overrides: Any) -> OptimizerInputs:
        """Optimizer inputs for this config, with per-sweep-point overrides."""
        base = dict(link=self.link, energy=self.energy, cost=self.cost, v_max=self.v_init,
                    w=self.w, n_nodes=self.n_nodes, area=self.area_side ** 2, cap=self.cap)
        base.update(overrides)
        try:
            return OptimizerInputs(**base)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None


def _check_keys(section: str, data: Any, allowed: set[str]) -> dict:
    if not isinstance(data, dict):
        raise ConfigError(f"{section}: expected an object")
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"{section}: unknown keys {sorted(unknown)}")
    return data


def _build(cls, section: str, data: dict):
    try:
        return cls(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{section}: {exc}") from None


def _tuple(section: str, key: str, values: Any, kind) -> tuple:
    if not isinstance(values, list):
        raise ConfigError(f"{section}.{key}: expected a list")
    try:
        return tuple(kind(v) for v in values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{section}.{key}: {exc}") from None


def config_from_dict(data: dict) -> RunConfig:
    """Parse and validate a configuration mapping.

    Raises:
        ConfigError: unknown keys, wrong types, or out-of-range values.
    """
    data = _check_keys("config", data, _TOP_KEYS)
    kw: dict[str, Any] = {}
    link = _check_keys("link", data.get("link", {}), _LINK_KEYS)
    kw["link"] = _build(LinkBudgetParams, "link", link)
    energy = dict(_check_keys("energy", data.get("energy", {}), _ENERGY_KEYS))
    if "e_solar_kwh" in energy:
        energy["e_solar"] = _as_float("energy.e_solar_kwh", energy.pop("e_solar_kwh")) * 1000.0
    kw["energy"] = _build(EnergyParams, "energy", energy)
    cost = _check_keys("cost", data.get("cost", {}), _COST_KEYS)
    kw["cost"] = _build(CostParams, "cost", cost)

    for key in ("w", "v_init", "n_nodes", "v_ceiling"):
        if key in data:
            kw[key] = _as_int(key, data[key])
    for key in ("area_side", "l_hh", "wavelength_capacity"):
        if key in data:
            kw[key] = _as_float(key, data[key])
    if "step_deg" in data:
        kw["step"] = math.radians(_as_float("step_deg", data["step_deg"]))
    if "cap" in data:
        try:
            kw["cap"] = SupplementaryCap(data["cap"])
        except ValueError:
            raise ConfigError(f"cap: expected one of {[c.value for c in SupplementaryCap]}") from None

    if "scenario" in data:
        sc = _check_keys("scenario", data["scenario"], _SCENARIO_KEYS)
        kw["scenario"] = ScenarioSpec(
            file=sc.get("file"),
            seed=_as_int("scenario.seed", sc.get("seed", 0)),
            demands_per_node=_as_int("scenario.demands_per_node", sc.get("demands_per_node", 4)))
    if "sweep" in data:
        sw = _check_keys("sweep", data["sweep"], _SWEEP_KEYS)
        kw["sweep"] = Sweep(
            e_solar_kwh=_tuple("sweep", "e_solar_kwh", sw.get("e_solar_kwh", []), float),
            w=_tuple("sweep", "w", sw.get("w", []), int),
            r_rx=_tuple("sweep", "r_rx", sw.get("r_rx", []), float),
            n_nodes=_tuple("sweep", "n_nodes", sw.get("n_nodes", []), int),
            seeds=_tuple("sweep", "seeds", sw.get("seeds", []), int))
        if kw["sweep"].seeds and len(kw["sweep"].seeds) != len(kw["sweep"].n_nodes):
            raise ConfigError("sweep.seeds must match sweep.n_nodes in length")
    return RunConfig(**kw)


def _as_int(key: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
        raise ConfigError(f"{key}: expected an integer, got {value!r}")
    return int(value)


def _as_float(key: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    return float(value)


def load_config(path: str | Path | None) -> RunConfig:
    """Read a JSON config file; ``None`` gives the defaults."""
    if path is None:
        return RunConfig()
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {p}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{p}: invalid JSON ({exc})") from None
    return config_from_dict(data)


def with_overrides(cfg: RunConfig, *, w=None, v_init=None, e_solar_kwh=None, r_rx=None,
                   n_nodes=None, step_deg=None, seed=None, scenario_file=None) -> RunConfig:
    """Apply command-line flags on top of a parsed config."""
    kw: dict[str, Any] = {}
    if w is not None:
        kw["w"] = w
    if v_init is not None:
        kw["v_init"] = v_init
        if v_init > cfg.v_ceiling:
            kw["v_ceiling"] = v_init
    if n_nodes is not None:
        kw["n_nodes"] = n_nodes
    if step_deg is not None:
        kw["step"] = math.radians(step_deg)
    try:
        if e_solar_kwh is not None:
            kw["energy"] = replace(cfg.energy, e_solar=e_solar_kwh * 1000.0)
        if r_rx is not None:
            kw["link"] = replace(cfg.link, r_rx=r_rx)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if seed is not None or scenario_file is not None:
        kw["scenario"] = replace(cfg.scenario,
                                 seed=cfg.scenario.seed if seed is None else seed,
                                 file=scenario_file or cfg.scenario.file)
    try:
        return replace(cfg, **kw)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
