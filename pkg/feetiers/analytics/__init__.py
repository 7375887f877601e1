from feetiers.analytics.cycles import LiquidityCycles, liquidity_cycles, out_of_range
from feetiers.analytics.events import events_frame, events_from_receipts, load_events, pool_price_path, swaps_only
from feetiers.analytics.impermanent_loss import (
    impermanent_loss,
    impermanent_loss_series,
    symmetric_impermanent_loss,
)
from feetiers.analytics.jit import jit_detect
from feetiers.analytics.lvr import (
    forward_price,
    instant_benchmark,
    lagged_benchmark,
    lvr_daily,
    lvr_swap,
    lvr_swaps,
    winsorize,
)
from feetiers.analytics.metrics import gas_benchmark, liquidity_yield_daily, range_volatility
from feetiers.analytics.panel import build_panel, gas_benchmarks, hourly_tvl, mark_prices, running_balances

__all__ = [
    "LiquidityCycles",
    "build_panel",
    "events_frame",
    "events_from_receipts",
    "forward_price",
    "gas_benchmark",
    "gas_benchmarks",
    "hourly_tvl",
    "impermanent_loss",
    "impermanent_loss_series",
    "instant_benchmark",
    "jit_detect",
    "lagged_benchmark",
    "liquidity_cycles",
    "liquidity_yield_daily",
    "load_events",
    "lvr_daily",
    "lvr_swap",
    "lvr_swaps",
    "mark_prices",
    "out_of_range",
    "pool_price_path",
    "range_volatility",
    "running_balances",
    "swaps_only",
    "symmetric_impermanent_loss",
    "winsorize",
]
