from datetime import date, timedelta
from typing import Mapping

import numpy as np
import pandas as pd
from loguru import logger

from feetiers.analytics.events import pool_price_path, swaps_only
from feetiers.analytics.impermanent_loss import impermanent_loss_series
from feetiers.analytics.jit import jit_detect
from feetiers.analytics.lvr import instant_benchmark, lagged_benchmark, lvr_daily, lvr_swaps
from feetiers.analytics.metrics import gas_benchmark, liquidity_yield_daily, range_volatility
from feetiers.constants import BALANCE_NEGATIVE_TOL, DEFAULT_N_LOWEST_GAS
from feetiers.pool.tick import tick_to_price
from feetiers.schema import EventKind, PanelRow

NEGATIVE_BALANCE = "negative_balance"
TVL_NONPOSITIVE = "tvl_nonpositive"
MISSING_TVL_PREV = "missing_tvl_prev"
LVR_EXCLUDED = "lvr_excluded"

PANEL_COLUMNS = list(PanelRow.model_fields)


def running_balances(events: pd.DataFrame) -> pd.DataFrame:
    """Pool token and numeraire balances after every event.

    Mints add both legs, burns subtract them and swaps add their signed legs.
    """
    sign = np.where(events["kind"] == EventKind.BURN.value, -1.0, 1.0)
    delta0 = pd.Series(sign * events["amount0"].to_numpy(), index=events.index)
    delta1 = pd.Series(sign * events["amount1"].to_numpy(), index=events.index)
    balances = pd.DataFrame(
        {
            "event_id": events["event_id"],
            "pool_id": events["pool_id"],
            "balance0": delta0.groupby(events["pool_id"], sort=False).cumsum(),
            "balance1": delta1.groupby(events["pool_id"], sort=False).cumsum(),
        }
    )
    balances["negative"] = (balances["balance0"] < -BALANCE_NEGATIVE_TOL) | (
        balances["balance1"] < -BALANCE_NEGATIVE_TOL
    )
    corrupt = int(balances["negative"].sum())
    if corrupt:
        logger.warning(f"{corrupt} event(s) leave a negative running balance")
    return balances


def mark_prices(events: pd.DataFrame, close_prices: Mapping[str, float] | None = None) -> pd.Series:
    """Price used to value a pool at every event.

    The latest swap price of the pool, else the day's close price, else the geometric midpoint of the pool's
    first minted range.
    """
    marks = pool_price_path(events)
    if close_prices:
        marks = marks.fillna(events["day"].map(close_prices))
    mints = events[events["kind"] == EventKind.MINT.value].drop_duplicates("pool_id")
    midpoints = {
        pool: tick_to_price((int(lo) + int(hi)) / 2.0)
        for pool, lo, hi in zip(mints["pool_id"], mints["tick_lower"], mints["tick_upper"])
    }
    return marks.fillna(events["pool_id"].map(midpoints)).astype(float)


def hourly_tvl(events: pd.DataFrame, close_prices: Mapping[str, float] | None = None) -> pd.DataFrame:
    """End-of-hour marked value of every pool, one row per (pool_id, hour) with events."""
    balances = running_balances(events)
    frame = balances.assign(hour=events["hour"], mark=mark_prices(events, close_prices))
    last = frame.groupby(["pool_id", "hour"], sort=True).last().reset_index()
    last["tvl"] = last["balance0"] * last["mark"] + last["balance1"]
    return last[["pool_id", "hour", "tvl"]]


def gas_benchmarks(events: pd.DataFrame, n_lowest: int = DEFAULT_N_LOWEST_GAS) -> pd.DataFrame:
    """Mean of the lowest ``n_lowest`` positive mint and burn gas bids of every day."""
    liquidity = events[events["kind"].isin([EventKind.MINT.value, EventKind.BURN.value])]
    bids = liquidity[liquidity["gas_bid"] > 0]
    rows = [
        {"day": day, "gas_benchmark": gas_benchmark(group["gas_bid"].to_numpy(), n_lowest)}
        for day, group in bids.groupby("day", sort=True)
    ]
    return pd.DataFrame(rows, columns=["day", "gas_benchmark"])


def _previous_day(day: str) -> str:
    return (date.fromisoformat(day) - timedelta(days=1)).isoformat()


def _daily_lvr(swaps: pd.DataFrame, benchmark: pd.Series) -> pd.Series:
    ok = benchmark.notna()
    values = pd.Series(np.nan, index=swaps.index)
    if ok.any():
        values[ok] = lvr_swaps(
            swaps.loc[ok, "amount0"].to_numpy(), swaps.loc[ok, "amount1"].to_numpy(), benchmark[ok].to_numpy()
        )
    return values


def build_panel(
    events: pd.DataFrame,
    close_prices: Mapping[str, float] | None = None,
) -> pd.DataFrame:
    """Pool-day panel from a sorted event table.

    Args:
        events (pd.DataFrame): output of ``load_events`` or ``events_frame``.
        close_prices (Mapping[str, float] | None): close price per UTC day, used before a pool's first swap.

    Returns:
        pd.DataFrame: one validated ``PanelRow`` per pool and day with events.
    """
    if events.empty:
        return pd.DataFrame(columns=PANEL_COLUMNS)

    balances = running_balances(events)
    marks = mark_prices(events, close_prices)
    frame = events.assign(
        balance0=balances["balance0"], balance1=balances["balance1"], negative=balances["negative"], mark=marks
    )

    swaps = swaps_only(events)
    swaps["volume"] = swaps["amount1"].abs()
    swaps["lvr_instant"] = _daily_lvr(swaps, instant_benchmark(swaps))
    swaps["lvr_1h"] = _daily_lvr(swaps, lagged_benchmark(swaps, hourly_tvl(events, close_prices)))
    swaps["il"] = impermanent_loss_series(swaps)

    jit_mints = set(jit_detect(events)["mint_id"])
    mints = frame[(frame["kind"] == EventKind.MINT.value) & ~frame["event_id"].isin(jit_mints)]
    mint_value = mints["amount0"] * mints["mark"] + mints["amount1"]

    rows: list[dict] = []
    for (pool_id, day), group in frame.groupby(["pool_id", "day"], sort=True):
        last = group.iloc[-1]
        tvl_end = float(last["balance0"] * last["mark"] + last["balance1"])
        flags = []
        if group["negative"].any():
            flags.append(NEGATIVE_BALANCE)
        if not tvl_end > 0:
            flags.append(TVL_NONPOSITIVE)

        day_swaps = swaps[(swaps["pool_id"] == pool_id) & (swaps["day"] == day)]
        day_mints = mint_value[(mints["pool_id"] == pool_id) & (mints["day"] == day)]
        liquidity_events = group[group["kind"] != EventKind.SWAP.value]
        if day_swaps[["lvr_instant", "lvr_1h"]].isna().any().any():
            flags.append(LVR_EXCLUDED)

        row = {
            "pool_id": pool_id,
            "day": day,
            "fee_bps": int(last["fee_bps"]),
            "pair_id": last["pair_id"],
            "tvl_end": tvl_end,
            "volume": float(day_swaps["volume"].sum()),
            "trade_count": len(day_swaps),
            "median_trade": float(day_swaps["volume"].median()) if len(day_swaps) else None,
            "median_mint": float(day_mints.median()) if len(day_mints) else None,
            "lp_wallets": int(liquidity_events["wallet"].nunique()),
            "lvr_instant": lvr_daily(day_swaps["lvr_instant"].dropna().to_numpy(), tvl_end),
            "lvr_1h": lvr_daily(day_swaps["lvr_1h"].dropna().to_numpy(), tvl_end),
            "il_5pct": float(day_swaps["il"].mean()) if day_swaps["il"].notna().any() else None,
            "volatility": (
                range_volatility(float(day_swaps["price"].max()), float(day_swaps["price"].min()))
                if len(day_swaps)
                else None
            ),
            "flags": flags,
        }
        rows.append(row)

    panel = pd.DataFrame(rows)
    tvl_by_key = {(r["pool_id"], r["day"]): r["tvl_end"] for r in rows}
    panel["tvl_prev"] = [tvl_by_key.get((p, _previous_day(d))) for p, d in zip(panel["pool_id"], panel["day"])]

    pair_day = panel.groupby(["pair_id", "day"], sort=False)
    positive_tvl = panel["tvl_end"].where(panel["tvl_end"] > 0, 0.0)
    tvl_total = positive_tvl.groupby([panel["pair_id"], panel["day"]]).transform("sum")
    volume_total = pair_day["volume"].transform("sum")
    panel["liquidity_share"] = (positive_tvl / tvl_total).where((tvl_total > 0) & (panel["tvl_end"] > 0))
    panel["volume_share"] = (panel["volume"] / volume_total).where(volume_total > 0)

    records = []
    for record in panel.to_dict("records"):
        tvl_prev = record.pop("tvl_prev")
        if tvl_prev is None or pd.isna(tvl_prev):
            record["flags"].append(MISSING_TVL_PREV)
            record["liq_yield"] = None
        else:
            record["liq_yield"] = liquidity_yield_daily(record["volume"], tvl_prev, record["fee_bps"])
        for key in ("liquidity_share", "volume_share"):
            if pd.isna(record[key]):
                record[key] = None
            else:
                record[key] = min(float(record[key]), 1.0)
        records.append(PanelRow.model_validate(record).model_dump())

    logger.info(f"Built panel with {len(records)} pool-day row(s)")
    return pd.DataFrame(records, columns=PANEL_COLUMNS)
