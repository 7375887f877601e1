import numpy as np
import pandas as pd
from loguru import logger

from feetiers.constants import (
    BASIS_POINTS,
    BENCHMARK_STALENESS_SECONDS,
    LAGGED_BENCHMARK_SECONDS,
    SECONDS_PER_HOUR,
    WINSOR_LOWER_QUANTILE,
    WINSOR_UPPER_QUANTILE,
)
from feetiers.exceptions import ParameterError
from feetiers.schema import EventKind, MarketEvent


def lvr_swap(event: MarketEvent, benchmark_price: float) -> float:
    """Loss of the pool against trading the same quantity at ``benchmark_price``.

    d * dx * (p_swap - p') with p_swap = -dy/dx and d = +1 for a buy (dx < 0), -1 for a sell.
    """
    if event.kind != EventKind.SWAP:
        raise ParameterError("kind", "kind == Swap", event.kind.value)
    return float(lvr_swaps(np.array([event.amount0]), np.array([event.amount1]), np.array([benchmark_price]))[0])


def lvr_swaps(amount0: np.ndarray, amount1: np.ndarray, benchmark: np.ndarray) -> np.ndarray:
    if np.any(amount0 == 0):
        raise ParameterError("amount0", "amount0 != 0 for every swap")
    price = -amount1 / amount0
    direction = np.where(amount0 < 0, 1.0, -1.0)
    return direction * amount0 * (price - benchmark)


def winsorize(
    values: np.ndarray, lower: float = WINSOR_LOWER_QUANTILE, upper: float = WINSOR_UPPER_QUANTILE
) -> np.ndarray:
    if len(values) == 0:
        return values
    low, high = np.percentile(values, [100.0 * lower, 100.0 * upper])
    return np.clip(values, low, high)


def lvr_daily(values: np.ndarray, tvl_end: float) -> float | None:
    """Winsorised sum of per-swap LVR over one pool-day, in basis points of ``tvl_end``; None when TVL <= 0."""
    if not tvl_end > 0:
        return None
    return float(winsorize(np.asarray(values, dtype=float)).sum() / tvl_end * BASIS_POINTS)


def instant_benchmark(swaps: pd.DataFrame) -> pd.Series:
    """Pool price right after each swap; the next swap's execution price in the same pool when not recorded."""
    next_price = swaps.groupby("pool_id", sort=False)["price"].shift(-1)
    if "price_after" in swaps.columns:
        return swaps["price_after"].astype(float).fillna(next_price)
    return next_price


def forward_price(
    swaps: pd.DataFrame,
    targets: pd.DataFrame,
    lag: int = LAGGED_BENCHMARK_SECONDS,
    staleness: int = BENCHMARK_STALENESS_SECONDS,
) -> pd.Series:
    """First execution price in ``targets.pool_id`` at or after ``timestamp + lag``, within ``staleness`` seconds.

    Args:
        swaps (pd.DataFrame): swap table with ``pool_id``, ``timestamp`` and ``price``.
        targets (pd.DataFrame): rows with ``pool_id`` and ``timestamp``; the index is preserved.
        lag (int): look-ahead in seconds.
        staleness (int): largest accepted gap beyond the target time.

    Returns:
        pd.Series: price per target row, NaN when no observation qualifies.
    """
    left = targets[["pool_id", "timestamp"]].copy()
    left["target"] = left["timestamp"] + lag
    left["_row"] = np.arange(len(left))
    right = swaps[["pool_id", "timestamp", "price"]].rename(columns={"timestamp": "target"})
    merged = pd.merge_asof(
        left.sort_values("target", kind="stable"),
        right.sort_values("target", kind="stable"),
        on="target",
        by="pool_id",
        direction="forward",
        tolerance=staleness,
    )
    prices = merged.sort_values("_row")["price"].to_numpy()
    return pd.Series(prices, index=targets.index)


def _tvl_at(hourly_tvl: pd.DataFrame, pool: str, hours: np.ndarray) -> np.ndarray:
    """Latest end-of-hour TVL of ``pool`` at or before each of ``hours``; zero before the first record."""
    series = hourly_tvl[hourly_tvl["pool_id"] == pool].sort_values("hour")
    if series.empty:
        return np.zeros(len(hours))
    idx = np.searchsorted(series["hour"].to_numpy(), hours, side="right") - 1
    values = np.clip(series["tvl"].to_numpy(dtype=float), 0.0, None)
    return np.where(idx >= 0, values[np.maximum(idx, 0)], 0.0)


def lagged_benchmark(
    swaps: pd.DataFrame,
    hourly_tvl: pd.DataFrame,
    lag: int = LAGGED_BENCHMARK_SECONDS,
    staleness: int = BENCHMARK_STALENESS_SECONDS,
) -> pd.Series:
    """TVL-weighted cross-pool price of the swap's pair one hour after each swap.

    Each pool of the pair contributes its first price at or after the target time; weights are the pools'
    TVL at the end of the target hour, equal when every weight is zero.
    """
    pools_by_pair = swaps.groupby("pair_id")["pool_id"].unique()
    numerator = pd.Series(0.0, index=swaps.index)
    weights = pd.Series(0.0, index=swaps.index)
    available = pd.Series(0, index=swaps.index)
    equal_sum = pd.Series(0.0, index=swaps.index)
    for pair_id, pools in pools_by_pair.items():
        pair_rows = swaps[swaps["pair_id"] == pair_id]
        for pool in pools:
            targets = pair_rows.assign(pool_id=pool)
            price = forward_price(swaps, targets, lag, staleness)
            hours = ((targets["timestamp"] + lag) // SECONDS_PER_HOUR).to_numpy()
            weight = _tvl_at(hourly_tvl, pool, hours)
            ok = price.notna().to_numpy()
            idx = pair_rows.index[ok]
            numerator.loc[idx] += price.to_numpy()[ok] * weight[ok]
            weights.loc[idx] += weight[ok]
            equal_sum.loc[idx] += price.to_numpy()[ok]
            available.loc[idx] += 1
    benchmark = numerator / weights.where(weights > 0)
    fallback = equal_sum / available.where(available > 0)
    benchmark = benchmark.fillna(fallback)
    missing = int(benchmark.isna().sum())
    if missing:
        logger.warning(f"{missing} swap(s) have no lagged benchmark within {staleness}s and are excluded")
    return benchmark
