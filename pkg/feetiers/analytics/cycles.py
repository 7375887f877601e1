from typing import Any

import pandas as pd
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from feetiers.analytics.events import pool_price_path
from feetiers.constants import SECONDS_PER_HOUR
from feetiers.pool.tick import tick_to_price
from feetiers.schema import EventKind

TRANSITIONS = {
    (EventKind.MINT.value, EventKind.BURN.value): "mint_to_burn",
    (EventKind.BURN.value, EventKind.MINT.value): "burn_to_mint",
}


class LiquidityCycles(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    durations: Any = Field(..., description="One row per consecutive opposite-kind pair of a wallet on a pool.")
    range_flags: Any = Field(..., description="Out-of-range flag of every mint and burn.")
    excluded_burns: int = Field(default=0, description="Zero-withdrawal burns left out.")

    @property
    def durations_frame(self) -> pd.DataFrame:
        return self.durations

    @property
    def range_flags_frame(self) -> pd.DataFrame:
        return self.range_flags


def out_of_range(price: float, tick_lower: int, tick_upper: int) -> bool | None:
    """Whether ``price`` lies outside the open interval spanned by the position; None without a price."""
    if pd.isna(price):
        return None
    return not tick_to_price(tick_lower) < price < tick_to_price(tick_upper)


def _next_opposite(liquidity: pd.DataFrame, first_kind: str, second_kind: str, name: str) -> pd.DataFrame:
    """Pair every ``first_kind`` event with the next ``second_kind`` event of the same wallet on the same pool."""
    first = liquidity.loc[liquidity["kind"] == first_kind, ["wallet", "pool_id", "fee_bps", "event_id", "timestamp"]]
    first = first.rename(columns={"event_id": "first_event_id", "timestamp": "first_timestamp"})
    first["order"] = first["first_event_id"]
    second = liquidity.loc[
        liquidity["kind"] == second_kind, ["wallet", "pool_id", "event_id", "timestamp", "day", "out_of_range"]
    ].rename(columns={"event_id": "second_event_id"})
    second["order"] = second["second_event_id"]
    matched = pd.merge_asof(
        first.sort_values("order"),
        second.sort_values("order"),
        on="order",
        by=["wallet", "pool_id"],
        direction="forward",
        allow_exact_matches=False,
    )
    matched = matched[matched["second_event_id"].notna()].copy()
    matched["second_event_id"] = matched["second_event_id"].astype(int)
    matched["cycle"] = name
    return matched


def liquidity_cycles(events: pd.DataFrame) -> LiquidityCycles:
    """Durations from every liquidity event to the next opposite-kind event of its wallet on its pool.

    Durations are in hours and recorded on the day of the second leg. Open positions leave no row.
    """
    prices = pool_price_path(events)
    liquidity = events[events["kind"].isin([EventKind.MINT.value, EventKind.BURN.value])].copy()
    liquidity["pool_price"] = prices.loc[liquidity.index]

    zero_burn = (liquidity["kind"] == EventKind.BURN.value) & (liquidity["amount0"] == 0) & (liquidity["amount1"] == 0)
    excluded = int(zero_burn.sum())
    if excluded:
        logger.warning(f"Excluded {excluded} zero-withdrawal burn(s)")
    liquidity = liquidity[~zero_burn].copy()

    liquidity["out_of_range"] = [
        out_of_range(p, int(lo), int(hi))
        for p, lo, hi in zip(liquidity["pool_price"], liquidity["tick_lower"], liquidity["tick_upper"])
    ]
    flags = liquidity[["event_id", "pool_id", "wallet", "kind", "day", "pool_price", "out_of_range"]].reset_index(
        drop=True
    )

    pairs = pd.concat(
        [_next_opposite(liquidity, first, second, name) for (first, second), name in TRANSITIONS.items()],
        ignore_index=True,
    )
    pairs["hours"] = (pairs["timestamp"] - pairs["first_timestamp"]) / SECONDS_PER_HOUR
    durations = pairs.sort_values(["second_event_id", "first_event_id"], kind="stable")[
        ["wallet", "pool_id", "fee_bps", "cycle", "first_event_id", "second_event_id", "hours", "day", "out_of_range"]
    ].reset_index(drop=True)
    return LiquidityCycles(durations=durations, range_flags=flags, excluded_burns=excluded)
