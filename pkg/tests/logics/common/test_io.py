import json
from pathlib import Path

import pandas as pd
import pytest

from feetiers.logics.common.io import load_config, round_floats, save_csv, save_json


@pytest.mark.parametrize(
    "name, body",
    [
        ("model.yaml", "Gamma: 2.0\nh: 1.0\n"),
        ("model.json", '{"Gamma": 2.0, "h": 1.0}'),
        ("model.toml", "Gamma = 2.0\nh = 1.0\n"),
    ],
)
def test_load_config(tmp_path: Path, name: str, body: str) -> None:
    path = tmp_path / name
    path.write_text(body)
    assert load_config(path) == {"Gamma": 2.0, "h": 1.0}


def test_load_config_empty_yaml(tmp_path: Path) -> None:
    path = tmp_path / "empty.yaml"
    path.write_text("")
    assert load_config(path) == {}


def test_load_config_unknown_format(tmp_path: Path) -> None:
    path = tmp_path / "model.ini"
    path.write_text("")
    with pytest.raises(ValueError, match="Invalid config format"):
        load_config(path)


def test_round_floats() -> None:
    data = {"a": 1.23456789012345678, "b": [float("nan"), float("inf")], "c": (1, "x"), 3: 0.5}
    assert round_floats(data, digits=4) == {"a": 1.235, "b": [None, None], "c": [1, "x"], "3": 0.5}


def test_save_json_creates_parents(tmp_path: Path) -> None:
    path = tmp_path / "nested" / "out.json"
    save_json(path, {"b": 1.0, "a": float("nan")})
    assert json.loads(path.read_text()) == {"a": None, "b": 1.0}


def test_save_csv(tmp_path: Path) -> None:
    path = tmp_path / "nested" / "out.csv"
    save_csv(path, pd.DataFrame({"x": [1.5, 2.5], "y": ["a", "b"]}))
    assert pd.read_csv(path).to_dict("list") == {"x": [1.5, 2.5], "y": ["a", "b"]}
