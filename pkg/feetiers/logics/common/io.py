import json
import math
import tomllib
from pathlib import Path
from typing import Any

import pandas as pd
import yaml

from feetiers.constants import CSV_FLOAT_FORMAT, FLOAT_SIG_DIGITS


def load_config(file_path: str | Path) -> dict[str, Any]:
    path = Path(file_path)
    suffix = path.suffix.lower()
    if suffix in (".yaml", ".yml"):
        with open(path, "r") as file:
            data = yaml.safe_load(file)
    elif suffix == ".json":
        with open(path, "r") as file:
            data = json.load(file)
    elif suffix == ".toml":
        with open(path, "rb") as file:
            data = tomllib.load(file)
    else:
        raise ValueError(f"Invalid config format: {suffix} (expected .yaml, .yml, .json or .toml)")
    return data or {}


def round_floats(obj: Any, digits: int = FLOAT_SIG_DIGITS) -> Any:
    """Round every float in a nested structure to ``digits`` significant digits."""
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return None
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, dict):
        return {str(k): round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v, digits) for v in obj]
    return obj


def save_json(save_path: str | Path, data: Any) -> None:
    Path(save_path).parent.mkdir(parents=True, exist_ok=True)
    with open(save_path, "w") as file:
        json.dump(round_floats(data), file, indent=2, sort_keys=True)
        file.write("\n")


def save_csv(save_path: str | Path, df: pd.DataFrame) -> None:
    Path(save_path).parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(save_path, index=False, float_format=CSV_FLOAT_FORMAT)
