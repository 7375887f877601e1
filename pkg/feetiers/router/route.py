from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pandas as pd
from loguru import logger

from feetiers.constants import DEFAULT_BRUTE_FORCE_POINTS, ROUTER_SPLIT_XATOL
from feetiers.exceptions import InsufficientDepthError, ParameterError
from feetiers.logics.common.numerics import minimize_bounded
from feetiers.pool.engine import quote_buy_cost
from feetiers.pool.state import PoolState
from feetiers.schema import RouteResult


class _SplitCost:
    """Total cost of sending a fraction ``s`` of the order to the low-fee pool."""

    def __init__(self, trade_size: float, pool_low: PoolState, pool_high: PoolState, gas_per_pool: float):
        self.trade_size = trade_size
        self.pool_low = pool_low
        self.pool_high = pool_high
        self.gas_per_pool = gas_per_pool

    def legs(self, s: float) -> tuple[float, float]:
        qty_low, qty_high = s * self.trade_size, (1.0 - s) * self.trade_size
        cost_low = quote_buy_cost(self.pool_low, qty_low)
        cost_high = quote_buy_cost(self.pool_high, qty_high)
        if qty_low > 0:
            cost_low += self.gas_per_pool
        if qty_high > 0:
            cost_high += self.gas_per_pool
        return cost_low, cost_high

    def __call__(self, s: float) -> float:
        cost_low, cost_high = self.legs(s)
        return cost_low + cost_high

    def result(self, s: float) -> RouteResult:
        cost_low, cost_high = self.legs(s)
        return RouteResult(
            trade_size=self.trade_size,
            split_low=s,
            cost_total=cost_low + cost_high,
            cost_low=cost_low,
            cost_high=cost_high,
            filled=self.trade_size,
        )


def feasible_split(trade_size: float, pool_low: PoolState, pool_high: PoolState) -> tuple[float, float]:
    """Interval of low-pool fractions that neither pool's posted depth rules out."""
    depth_low, depth_high = pool_low.token_depth_above(), pool_high.token_depth_above()
    if trade_size > depth_low + depth_high:
        raise InsufficientDepthError(requested=trade_size, available=depth_low + depth_high)
    lower = max(0.0, 1.0 - depth_high / trade_size)
    upper = min(1.0, depth_low / trade_size)
    return lower, upper


def _check_size(trade_size: float) -> None:
    if trade_size < 0:
        raise ParameterError("trade_size", "trade_size >= 0", trade_size)


def route(
    trade_size: float, pool_low: PoolState, pool_high: PoolState, gas_per_pool: float = 0.0
) -> RouteResult:
    """Split a token purchase across two pools to minimise price impact plus fees.

    Args:
        trade_size (float): tokens to buy.
        pool_low (PoolState): low-fee pool.
        pool_high (PoolState): high-fee pool.
        gas_per_pool (float): fixed cost added for every pool the order touches.

    Returns:
        RouteResult: optimal split; a zero-size order reports split_low = 1.
    """
    _check_size(trade_size)
    if trade_size == 0:
        return RouteResult(trade_size=0.0, split_low=1.0, cost_total=0.0, cost_low=0.0, cost_high=0.0, filled=0.0)
    lower, upper = feasible_split(trade_size, pool_low, pool_high)
    cost = _SplitCost(trade_size, pool_low, pool_high, gas_per_pool)
    s = minimize_bounded(cost, lower, upper, xatol=ROUTER_SPLIT_XATOL)
    result = cost.result(s)
    logger.debug(f"Routed {trade_size}: split_low={s:.6f}, cost={result.cost_total:.6f}")
    return result


def route_brute_force(
    trade_size: float,
    pool_low: PoolState,
    pool_high: PoolState,
    points: int = DEFAULT_BRUTE_FORCE_POINTS,
    gas_per_pool: float = 0.0,
) -> RouteResult:
    """Best split on an evenly spaced grid over [0, 1], skipping fractions that exceed a pool's depth."""
    _check_size(trade_size)
    if trade_size == 0:
        return route(0.0, pool_low, pool_high)
    lower, upper = feasible_split(trade_size, pool_low, pool_high)
    cost = _SplitCost(trade_size, pool_low, pool_high, gas_per_pool)
    grid = [s for s in np.linspace(0.0, 1.0, points) if lower <= s <= upper] or [lower]
    best = min(grid, key=cost)
    return cost.result(float(best))


def route_sizes(
    sizes: list[float], pool_low: PoolState, pool_high: PoolState, threads: int = 1, gas_per_pool: float = 0.0
) -> pd.DataFrame:
    def _row(size: float) -> dict[str, float]:
        result = route(size, pool_low, pool_high, gas_per_pool)
        return {
            "size": size,
            "split_low": result.split_low,
            "cost_total": result.cost_total,
            "cost_low": result.cost_low,
            "cost_high": result.cost_high,
        }

    with ThreadPoolExecutor(max_workers=threads) as executor:
        rows = list(executor.map(_row, sizes))
    return pd.DataFrame(rows)
