import math

import numpy as np

from feetiers.constants import DEFAULT_N_LOWEST_GAS
from feetiers.exceptions import ParameterError


def liquidity_yield_daily(volume: float, tvl_prev: float, fee_bps: float) -> float | None:
    """Fee revenue over the previous day's TVL in basis points; None when ``tvl_prev`` <= 0."""
    if not tvl_prev > 0:
        return None
    return fee_bps * volume / tvl_prev


def range_volatility(high: float, low: float) -> float:
    if not low > 0:
        raise ParameterError("low", "low > 0", low)
    if high < low:
        raise ParameterError("high", "high >= low", high)
    return math.log(high / low) / (2.0 * math.sqrt(math.log(2.0)))


def gas_benchmark(gas_bids: list[float] | np.ndarray, n_lowest: int = DEFAULT_N_LOWEST_GAS) -> float | None:
    """Mean of the ``n_lowest`` smallest gas bids; None for an empty day."""
    if n_lowest < 1:
        raise ParameterError("n_lowest", "n_lowest >= 1", n_lowest)
    bids = np.sort(np.asarray(gas_bids, dtype=float), kind="stable")
    if len(bids) == 0:
        return None
    return float(bids[:n_lowest].mean())
