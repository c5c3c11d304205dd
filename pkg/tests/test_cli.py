import csv
import json

import pytest

from hapfso.cli import main
from hapfso.config import RunConfig, config_from_dict, load_config, with_overrides
from hapfso.errors import ConfigError
from hapfso.link_budget import SupplementaryCap
from hapfso.network import Scenario


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def _write(tmp_path, data, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


# config

def test_defaults():
    cfg = load_config(None)
    assert cfg == RunConfig()
    assert (cfg.w, cfg.v_init, cfg.n_nodes, cfg.l_hh) == (40, 10, 480, 88_000.0)
    assert cfg.energy.e_solar == 50_000.0


def test_config_sections_parse():
    cfg = config_from_dict({"link": {"r_rx": 4.0}, "energy": {"e_solar_kwh": 75},
                            "w": 80, "step_deg": 0.5, "cap": "half-beta",
                            "sweep": {"n_nodes": [480, 600], "seeds": [1, 2]}})
    assert cfg.link.r_rx == 4.0 and cfg.energy.e_solar == 75_000.0
    assert cfg.cap is SupplementaryCap.HALF_BETA
    assert cfg.inputs().w == 80


@pytest.mark.parametrize("data", [
    {"bogus": 1},
    {"link": {"aperture": 2}},
    {"w": 40.5},
    {"w": True},
    {"link": {"r_rx": -1}},
    {"cap": "quarter"},
    {"sweep": {"n_nodes": [480], "seeds": [1, 2]}},
    {"v_init": 70},
    {"step_deg": 0},
])
def test_config_rejects(data):
    with pytest.raises(ConfigError):
        config_from_dict(data)


def test_overrides():
    cfg = with_overrides(RunConfig(), w=80, v_init=12, e_solar_kwh=42, seed=5)
    assert (cfg.w, cfg.v_init, cfg.energy.e_solar, cfg.scenario.seed) == (80, 12, 42_000.0, 5)
    assert with_overrides(RunConfig(), v_init=80).v_ceiling == 80
    with pytest.raises(ConfigError):
        with_overrides(RunConfig(), r_rx=0.0)


# exit codes

def test_unknown_key_exits_2(tmp_path, capsys):
    assert main(["optimize", "--config", _write(tmp_path, {"wavelengths": 40})]) == 2
    assert "unknown keys" in capsys.readouterr().err


def test_missing_config_exits_2(tmp_path):
    assert main(["optimize", "--config", str(tmp_path / "nope.json")]) == 2


def test_invalid_json_exits_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{")
    assert main(["optimize", "--config", str(path)]) == 2


def test_unpowerable_v_exits_3():
    assert main(["optimize", "--e-solar", "42", "--v", "15"]) == 3


def test_no_feasible_beam_exits_3(tmp_path):
    assert main(["optimize", "--config", _write(tmp_path, {"link": {"rho_rx": 1.0}})]) == 3


# optimize

def test_optimize_wide_grid(capsys):
    assert main(["optimize", "--w", "80"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "alpha_deg,m,beta_deg,r_ext_m,k_hat,est_cost"
    assert lines[1].startswith("37,13,17,11929,36,")


def test_optimize_low_energy(capsys):
    assert main(["optimize", "--e-solar", "42", "--v", "12"]) == 0
    assert capsys.readouterr().out.splitlines()[1].startswith("37,0,-,6691,112,")


# tables

def test_tables(tmp_path):
    cfg = _write(tmp_path, {"sweep": {"r_rx": [2, 4], "e_solar_kwh": [42, 50], "w": [80]}})
    assert main(["tables", "--config", cfg, "--out", str(tmp_path / "t"), "--jobs", "2"]) == 0
    beam = _rows(tmp_path / "t" / "max_beam_width.csv")
    assert beam == [["r_rx_m", "alpha_max_deg", "radius_m"], ["2", "37", "6691"], ["4", "66", "12988"]]
    ext = _rows(tmp_path / "t" / "max_extended_radius.csv")
    assert ext[0] == ["e_solar_kwh", "max_m", "r_ext_m_rrx2", "r_ext_m_rrx4"]
    assert ext[1][:2] == ["42", "6"] and ext[2][:2] == ["50", "16"]
    opt = _rows(tmp_path / "t" / "optimal_configs.csv")
    assert opt[2][:10] == ["480", "80", "50", "10", "37", "13", "17", "11929", "36", "12338.63"]


def test_tables_empty_sweep_header_only(tmp_path):
    assert main(["tables", "--out", str(tmp_path)]) == 0
    assert _rows(tmp_path / "max_beam_width.csv") == [["r_rx_m", "alpha_max_deg", "radius_m"]]
    assert len(_rows(tmp_path / "optimal_configs.csv")) == 2


# scenario-gen and design

def test_scenario_gen_round_trip(tmp_path):
    out = tmp_path / "sc" / "s.json"
    assert main(["scenario-gen", "--n-nodes", "300", "--seed", "7", "--out", str(out)]) == 0
    sc = Scenario.load(out)
    assert sc.n_nodes == 300 and sc.seed == 7
    assert main(["scenario-gen", "--n-nodes", "1", "--out", str(out)]) == 2


def test_design_is_byte_stable(tmp_path):
    cfg = _write(tmp_path, {"sweep": {"n_nodes": [480, 588], "w": [80]}})
    for run, jobs in (("a", "1"), ("b", "2")):
        assert main(["design", "--config", cfg, "--out", str(tmp_path / run), "--jobs", jobs]) == 0
    a = (tmp_path / "a" / "design_series.csv").read_bytes()
    assert a == (tmp_path / "b" / "design_series.csv").read_bytes()
    rows = _rows(tmp_path / "a" / "design_series.csv")
    assert len(rows) == 3 and rows[1][:4] == ["480", "0", "80", "50"] and rows[2][1] == "1"
    plans = sorted(p.name for p in (tmp_path / "a" / "plans").iterdir())
    assert plans == ["plan_n480_s0_w80_e50.json", "plan_n588_s1_w80_e50.json"]
    for name in plans:
        assert (tmp_path / "a" / "plans" / name).read_bytes() == (tmp_path / "b" / "plans" / name).read_bytes()


def test_design_from_scenario_file(tmp_path):
    sc = tmp_path / "s.json"
    assert main(["scenario-gen", "--n-nodes", "480", "--seed", "3", "--out", str(sc)]) == 0
    assert main(["design", "--scenario", str(sc), "--w", "80", "--out", str(tmp_path / "o")]) == 0
    rows = _rows(tmp_path / "o" / "design_series.csv")
    assert rows[1][:3] == ["480", "3", "80"]
    plan = json.loads((tmp_path / "o" / "plans" / "plan_n480_s3_w80_e50.json").read_text())
    assert plan["cost"]["total"] > 0


def test_design_infeasible_exits_3(tmp_path):
    cfg = _write(tmp_path, {"energy": {"e_solar_kwh": 42}, "v_init": 15})
    assert main(["design", "--config", cfg, "--out", str(tmp_path / "o")]) == 3
