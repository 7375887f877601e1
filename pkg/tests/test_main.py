import json
from pathlib import Path

import pandas as pd
import pytest
from click.testing import CliRunner
from pytest_mock import MockerFixture

from feetiers.configs import settings
from feetiers.constants import EFFECTIVE_CONFIG_NAME, EVENT_CSV_COLUMNS
from feetiers.main import cli, main, parse_overrides, parse_sizes


def _read_json(path: Path) -> dict:
    with open(path) as file:
        return json.load(file)


@pytest.fixture
def events_csv(tmp_path: Path, jit_events: pd.DataFrame) -> Path:
    path = tmp_path / "events.csv"
    jit_events[EVENT_CSV_COLUMNS + ["price_after"]].to_csv(path, index=False)
    return path


class TestParsing:
    def test_parse_overrides(self) -> None:
        assert parse_overrides(("Gamma=2.5", "Delta=null", "ell = 0.5")) == {"Gamma": 2.5, "Delta": None, "ell": 0.5}

    def test_parse_sizes(self) -> None:
        assert parse_sizes("1, 10,100") == [1.0, 10.0, 100.0]


class TestExitCodes:
    def test_unknown_subcommand(self, tmp_path: Path) -> None:
        assert main(["--output", str(tmp_path), "nope"]) == 1

    def test_bad_override(self, tmp_path: Path) -> None:
        assert main(["--output", str(tmp_path), "equilibrium", "cycle", "--set", "Gamma"]) == 1

    def test_unknown_parameter(self, tmp_path: Path) -> None:
        assert main(["--output", str(tmp_path), "equilibrium", "cycle", "--set", "gamma=1"]) == 1

    def test_invalid_parameter_value(self, tmp_path: Path) -> None:
        assert main(["--output", str(tmp_path), "equilibrium", "cycle", "--set", "ell=2"]) == 1

    def test_infeasible_model(self, tmp_path: Path) -> None:
        assert main(["--output", str(tmp_path), "equilibrium", "range", "--set", "eta=0.9"]) == 2

    def test_threads_must_be_positive(self, tmp_path: Path) -> None:
        assert main(["--threads", "0", "--output", str(tmp_path), "pool", "demo"]) == 1

    def test_negative_route_size(self, tmp_path: Path) -> None:
        assert main(["--output", str(tmp_path), "route", "--sizes", "1,-2"]) == 1


def test_pool_demo(tmp_path: Path) -> None:
    assert main(["--output", str(tmp_path), "pool", "demo"]) == 0
    assert (tmp_path / "pool_demo.json").exists()
    assert _read_json(tmp_path / EFFECTIVE_CONFIG_NAME)["command"] == "pool"


def test_equilibrium_with_override(tmp_path: Path) -> None:
    assert main(["--output", str(tmp_path), "equilibrium", "cycle", "--set", "Gamma=2.5"]) == 0
    result = _read_json(tmp_path / "equilibrium_cycle.json")
    assert result["equilibrium"]["regime"] == "AllHigh"
    assert _read_json(tmp_path / EFFECTIVE_CONFIG_NAME)["params"]["Gamma"] == 2.5


def test_equilibrium_range(tmp_path: Path) -> None:
    assert main(["--output", str(tmp_path), "equilibrium", "range"]) == 0
    assert _read_json(tmp_path / "equilibrium_range.json")["equilibrium"]["regime"] == "Fragmented"


def test_sweep_cycle_json(tmp_path: Path) -> None:
    args = ["--format", "json", "--output", str(tmp_path), "sweep", "cycle", "--param", "Gamma"]
    assert main(args + ["--min", "0", "--max", "2.7", "--points", "4"]) == 0
    rows = _read_json(tmp_path / "sweep_cycle_Gamma.json")
    assert [row["value"] for row in rows] == pytest.approx([0.0, 0.9, 1.8, 2.7])
    assert rows[-1]["regime"] == "AllHigh"


def test_simulate_cycle(tmp_path: Path) -> None:
    args = ["--output", str(tmp_path), "simulate", "--model", "cycle", "--horizon", "2000", "--replications", "1"]
    assert main(args + ["--seed", "3", "--cycles"]) == 0
    result = _read_json(tmp_path / "simulate_cycle.json")
    assert result["report"]["seed"] == 3
    assert len(result["predictions"]["checks"]) == 4
    cycles = pd.read_csv(tmp_path / "cycles_cycle.csv")
    assert set(cycles["pool"]) == {"low", "high"}


def test_route(tmp_path: Path) -> None:
    assert main(["--output", str(tmp_path), "route", "--sizes", "1,10"]) == 0
    table = pd.read_csv(tmp_path / "route.csv")
    assert list(table["size"]) == [1.0, 10.0]


@pytest.mark.parametrize(
    "kind, outputs",
    [
        ("lvr", ["lvr.csv"]),
        ("il", ["il.csv"]),
        ("jit", ["jit.csv"]),
        ("cycles", ["cycles.csv", "range_flags.csv"]),
        ("panel", ["panel.csv", "gas_benchmarks.csv"]),
    ],
)
def test_analyze(tmp_path: Path, events_csv: Path, kind: str, outputs: list[str]) -> None:
    out = tmp_path / "out"
    assert main(["--output", str(out), "analyze", kind, "--events", str(events_csv)]) == 0
    for name in outputs:
        assert (out / name).exists()


def test_analyze_jit_finds_triple(tmp_path: Path, events_csv: Path) -> None:
    assert main(["--output", str(tmp_path), "analyze", "jit", "--events", str(events_csv)]) == 0
    assert len(pd.read_csv(tmp_path / "jit.csv")) == 1


class TestCliRunner:
    def test_output_dir_from_settings(self, tmp_path: Path, mocker: MockerFixture) -> None:
        mocker.patch.object(settings, "OUTPUT_DIR", str(tmp_path))
        result = CliRunner().invoke(cli, ["pool", "demo"])
        assert result.exit_code == 0
        assert (tmp_path / "pool_demo.json").exists()
        assert '"current_price"' in result.output

    def test_threads_from_settings(self, tmp_path: Path, mocker: MockerFixture) -> None:
        mocker.patch.object(settings, "THREADS", 3)
        result = CliRunner().invoke(cli, ["--output", str(tmp_path), "route", "--sizes", "1"])
        assert result.exit_code == 0
        assert _read_json(tmp_path / EFFECTIVE_CONFIG_NAME)["threads"] == 3

    def test_help_lists_commands(self) -> None:
        result = CliRunner().invoke(cli, ["--help"])
        assert result.exit_code == 0
        for command in ("equilibrium", "sweep", "simulate", "analyze", "route", "pool"):
            assert command in result.output
