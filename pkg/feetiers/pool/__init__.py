from feetiers.pool.demo import PoolDemoReport, run_pool_demo
from feetiers.pool.engine import quote_buy_cost, swap_buy_token, swap_sell_token
from feetiers.pool.liquidity import (
    deposit_amounts,
    liquidity_for_capital,
    price_after_buy_within_tick,
    virtual_reserves,
)
from feetiers.pool.state import PoolState, Position, SwapReceipt, TickFill
from feetiers.pool.tick import (
    TickGrid,
    price_of_tick,
    price_to_tick,
    tick_spacing_for_fee,
    tick_to_price,
)

__all__ = [
    "PoolDemoReport",
    "run_pool_demo",
    "quote_buy_cost",
    "swap_buy_token",
    "swap_sell_token",
    "deposit_amounts",
    "liquidity_for_capital",
    "price_after_buy_within_tick",
    "virtual_reserves",
    "PoolState",
    "Position",
    "SwapReceipt",
    "TickFill",
    "TickGrid",
    "price_of_tick",
    "price_to_tick",
    "tick_spacing_for_fee",
    "tick_to_price",
]
