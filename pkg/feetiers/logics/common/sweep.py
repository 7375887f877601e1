from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, TypeVar

import pandas as pd
from loguru import logger
from pydantic import BaseModel

from feetiers.schema import SweepAxis

ParamsT = TypeVar("ParamsT", bound=BaseModel)


def update_params(params: ParamsT, updates: dict[str, Any]) -> ParamsT:
    """Return a re-validated copy of ``params`` with ``updates`` applied."""
    for key in updates:
        if key not in type(params).model_fields:
            raise ValueError(f"Invalid parameter name: {key}")
    return type(params).model_validate({**params.model_dump(), **updates})


def run_sweep(
    evaluate: Callable[[ParamsT], dict[str, Any]],
    params: ParamsT,
    axis: SweepAxis,
    threads: int = 1,
) -> pd.DataFrame:
    """Evaluate ``evaluate`` at every grid point of ``axis``; row order follows the grid.

    Args:
        evaluate (Callable[[ParamsT], dict[str, Any]]): maps a parameter bundle to one output row.
        params (ParamsT): base parameter bundle.
        axis (SweepAxis): parameter varied and its grid.
        threads (int): worker count.

    Returns:
        pd.DataFrame: one row per grid value, led by the ``param`` and ``value`` columns.
    """
    if axis.param not in type(params).model_fields:
        raise ValueError(f"Invalid sweep param: {axis.param}")
    values = axis.values()

    def _point(value: float) -> dict[str, Any]:
        row = evaluate(update_params(params, {axis.param: value}))
        return {"param": axis.param, "value": value, **row}

    logger.info(f"Sweeping {axis.param} over {axis.points} points with {threads} thread(s)")
    with ThreadPoolExecutor(max_workers=threads) as executor:
        rows = list(executor.map(_point, values))
    return pd.DataFrame(rows)
