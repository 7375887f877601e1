from feetiers.logics.common.io import load_config, round_floats, save_csv, save_json
from feetiers.logics.common.numerics import (
    bisect,
    central_difference,
    compensated_mean,
    expand_bracket,
    integrate_pieces,
    maximize_bounded,
    minimize_bounded,
)
from feetiers.logics.common.sweep import run_sweep, update_params

__all__ = [
    "load_config",
    "round_floats",
    "save_csv",
    "save_json",
    "bisect",
    "central_difference",
    "compensated_mean",
    "expand_bracket",
    "integrate_pieces",
    "maximize_bounded",
    "minimize_bounded",
    "run_sweep",
    "update_params",
]
