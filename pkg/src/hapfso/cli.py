"""Command-line front end.

Subcommands: ``optimize``, ``tables``, ``design`` and ``scenario-gen``.
Exit codes: 0 success, 2 configuration error, 3 infeasible, 4 invariant
violation in a produced plan.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import reports
from .config import RunConfig, load_config, with_overrides
from .energy import solar_feasible
from .errors import (ConfigError, DesignInfeasibleError, GeometryInfeasibleError,
                     InvariantViolation, NoFeasibleAlphaError, NoFeasibleBetaError)
from .network import generate_scenario

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_INVARIANT = 4

log = logging.getLogger("hapfso")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON run configuration")
    p.add_argument("--w", type=int, help="wavelengths per link (and nodes per HAP)")
    p.add_argument("--v", type=int, dest="v_init", help="initial inter-HAP links per HAP")
    p.add_argument("--e-solar", type=float, dest="e_solar_kwh", help="solar energy, kWh/day")
    p.add_argument("--r-rx", type=float, help="receiver aperture radius, m")
    p.add_argument("--n-nodes", type=int, help="number of ground nodes")
    p.add_argument("--step-deg", type=float, help="angle grid step, degrees")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hapfso", description="HAP/FSO network planning")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("optimize", help="cheapest payload configuration as one CSV row")
    _common(p)

    p = sub.add_parser("tables", help="beam-width, extended-radius and optimal-config CSVs")
    _common(p)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("design", help="full network design: series CSV and plan JSONs")
    _common(p)
    p.add_argument("--scenario", dest="scenario_file", help="scenario JSON (overrides config)")
    p.add_argument("--seed", type=int, help="first generator seed")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("scenario-gen", help="write a random scenario JSON")
    p.add_argument("--n-nodes", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--area-side", type=float, default=100_000.0, help="m")
    p.add_argument("--capacity", type=float, default=1.0, help="wavelength capacity, Gbps")
    p.add_argument("--demands-per-node", type=int, default=4)
    p.add_argument("--out", required=True, help="output JSON file")
    return parser


def _resolve(args) -> RunConfig:
    cfg = load_config(args.config)
    return with_overrides(cfg, w=args.w, v_init=args.v_init, e_solar_kwh=args.e_solar_kwh,
                          r_rx=args.r_rx, n_nodes=args.n_nodes, step_deg=args.step_deg,
                          seed=getattr(args, "seed", None),
                          scenario_file=getattr(args, "scenario_file", None))


def _outdir(path: str) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_optimize(args) -> int:
    cfg = _resolve(args)
    header, rows = reports.optimize_report(cfg)
    m = int(rows[0][1])
    if not solar_feasible(cfg.energy, m + 1, cfg.v_init):
        print(f"error: solar budget cannot power a HAP with V={cfg.v_init}", file=sys.stderr)
        return EXIT_INFEASIBLE
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return EXIT_OK


def cmd_tables(args) -> int:
    cfg = _resolve(args)
    out = _outdir(args.out)
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as ex:
        for name, build in (("max_beam_width.csv", reports.max_beam_width_table),
                            ("max_extended_radius.csv", reports.max_extended_radius_table),
                            ("optimal_configs.csv", reports.optimal_configs_table)):
            header, rows = build(cfg, ex)
            reports.write_csv(out / name, header, rows)
            log.info("wrote %s (%d rows)", out / name, len(rows))
    return EXIT_OK


def cmd_design(args) -> int:
    cfg = _resolve(args)
    out = _outdir(args.out)
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as ex:
        header, rows, plans = reports.design_table(cfg, ex)
    reports.write_csv(out / "design_series.csv", header, rows)
    plan_dir = _outdir(str(out / "plans"))
    for case, plan in plans:
        (plan_dir / f"plan_{case.name}.json").write_text(json.dumps(plan.to_dict(), indent=1))
    log.info("wrote %d plans to %s", len(plans), plan_dir)
    return EXIT_OK


def cmd_scenario_gen(args) -> int:
    try:
        sc = generate_scenario(args.n_nodes, args.area_side, args.capacity, args.seed,
                               args.demands_per_node)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    path = Path(args.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    sc.dump(path)
    return EXIT_OK


_COMMANDS = {"optimize": cmd_optimize, "tables": cmd_tables, "design": cmd_design,
             "scenario-gen": cmd_scenario_gen}

_INFEASIBLE = (NoFeasibleAlphaError, NoFeasibleBetaError, GeometryInfeasibleError,
               DesignInfeasibleError)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except reports.SweepPointError as exc:
        if isinstance(exc.cause, DesignInfeasibleError):
            print(f"infeasible at {exc.point}: {exc.cause} (last V={exc.cause.last_v})",
                  file=sys.stderr)
            return EXIT_INFEASIBLE
        if isinstance(exc.cause, _INFEASIBLE):
            print(f"infeasible at {exc.point}: {exc.cause}", file=sys.stderr)
            return EXIT_INFEASIBLE
        if isinstance(exc.cause, ConfigError):
            print(f"config error at {exc.point}: {exc.cause}", file=sys.stderr)
            return EXIT_CONFIG
        raise
    except _INFEASIBLE as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
