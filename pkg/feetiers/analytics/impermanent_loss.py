import pandas as pd

from feetiers.analytics.lvr import forward_price
from feetiers.constants import BASIS_POINTS, BENCHMARK_STALENESS_SECONDS, IL_DEFAULT_ALPHA, IL_DEFAULT_HORIZON_SECONDS
from feetiers.exceptions import ParameterError
from feetiers.pool.liquidity import deposit_amounts


def impermanent_loss(liquidity: float, p_lo: float, p_hi: float, p0: float, p1: float) -> float:
    """Relative shortfall of a position against holding its initial reserves, (V_hold - V_pos) / V_hold."""
    if p0 <= 0 or p1 <= 0:
        raise ParameterError("price", "p0 > 0 and p1 > 0", (p0, p1))
    x0, y0 = deposit_amounts(liquidity, p_lo, p_hi, p0)
    x1, y1 = deposit_amounts(liquidity, p_lo, p_hi, p1)
    hold = p1 * x0 + y0
    if hold == 0:
        return 0.0
    return (hold - (p1 * x1 + y1)) / hold


def symmetric_impermanent_loss(p0: float, p1: float, alpha: float = IL_DEFAULT_ALPHA) -> float:
    """Impermanent loss of a unit position on [p0/alpha, alpha*p0]."""
    if not alpha > 1.0:
        raise ParameterError("alpha", "alpha > 1", alpha)
    return impermanent_loss(1.0, p0 / alpha, alpha * p0, p0, p1)


def impermanent_loss_series(
    swaps: pd.DataFrame,
    alpha: float = IL_DEFAULT_ALPHA,
    horizon: int = IL_DEFAULT_HORIZON_SECONDS,
    staleness: int = BENCHMARK_STALENESS_SECONDS,
) -> pd.Series:
    """Per-swap impermanent loss in basis points of a symmetric position opened at the swap price.

    The closing price is the pool's first execution price at least ``horizon`` seconds later; swaps without one
    get NaN.
    """
    later = forward_price(swaps, swaps, lag=horizon, staleness=staleness)
    values = [
        symmetric_impermanent_loss(p0, p1, alpha) * BASIS_POINTS if pd.notna(p1) else float("nan")
        for p0, p1 in zip(swaps["price"], later)
    ]
    return pd.Series(values, index=swaps.index, dtype=float)
