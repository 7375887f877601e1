import math
from pathlib import Path

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import ValidationError

from feetiers.constants import EVENT_CSV_COLUMNS, SECONDS_PER_DAY, SECONDS_PER_HOUR
from feetiers.exceptions import ParameterError
from feetiers.pool.state import SwapReceipt
from feetiers.schema import EventKind, MarketEvent

DEFAULT_PAIR_ID = "pair"
OPTIONAL_COLUMNS = ["price_after", "pair_id"]


def _clean(record: dict) -> dict:
    return {k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in record.items()}


def events_frame(events: list[MarketEvent]) -> pd.DataFrame:
    """Event table sorted stably by (block, position), with ``event_id``, ``day`` and ``hour`` columns."""
    columns = EVENT_CSV_COLUMNS + OPTIONAL_COLUMNS
    df = pd.DataFrame([e.model_dump(mode="json") for e in events], columns=columns)
    df["pair_id"] = df["pair_id"].fillna(DEFAULT_PAIR_ID)
    df["price_after"] = df["price_after"].astype(float)
    for col in ("amount0", "amount1", "gas_bid"):
        df[col] = df[col].astype(float)
    df = df.sort_values(["block", "position"], kind="stable").reset_index(drop=True)
    df.insert(0, "event_id", np.arange(len(df), dtype=int))
    df["day"] = pd.to_datetime(df["timestamp"] // SECONDS_PER_DAY * SECONDS_PER_DAY, unit="s", utc=True).dt.strftime(
        "%Y-%m-%d"
    )
    df["hour"] = df["timestamp"] // SECONDS_PER_HOUR
    return df


def load_events(file_path: str | Path) -> pd.DataFrame:
    """Read and validate an event CSV.

    Required columns are ``EVENT_CSV_COLUMNS``; ``price_after`` and ``pair_id`` are optional.
    """
    raw = pd.read_csv(file_path, dtype={"tx_hash": str, "pool_id": str, "wallet": str, "kind": str})
    missing = [c for c in EVENT_CSV_COLUMNS if c not in raw.columns]
    if missing:
        raise ParameterError("events", f"CSV header contains {EVENT_CSV_COLUMNS}", missing)
    for col in OPTIONAL_COLUMNS:
        if col not in raw.columns:
            raw[col] = None
    events = []
    for i, record in enumerate(raw[EVENT_CSV_COLUMNS + OPTIONAL_COLUMNS].to_dict("records")):
        try:
            events.append(MarketEvent.model_validate(_clean(record)))
        except ValidationError as e:
            first = e.errors()[0]
            field = ".".join(str(part) for part in first["loc"]) or "row"
            raise ParameterError(f"events[{i}].{field}", first["msg"]) from e
    logger.info(f"Loaded {len(events)} events from {file_path}")
    return events_frame(events)


def swaps_only(df: pd.DataFrame) -> pd.DataFrame:
    swaps = df[df["kind"] == EventKind.SWAP.value].copy()
    swaps["price"] = -swaps["amount1"] / swaps["amount0"]
    return swaps


def events_from_receipts(
    receipts: list[SwapReceipt],
    pool_id: str,
    fee_bps: int,
    wallet: str = "trader",
    start_block: int = 0,
    start_time: int = 0,
    block_time: int = 12,
) -> list[MarketEvent]:
    """Turn engine receipts into swap events in pool-side sign convention, one block per receipt."""
    events = []
    for i, receipt in enumerate(receipts):
        if receipt.side == "buy":
            amount0, amount1 = -receipt.amount_out, receipt.amount_in
        else:
            amount0, amount1 = receipt.amount_in, -receipt.amount_out
        events.append(
            MarketEvent(
                block=start_block + i,
                position=0,
                tx_hash=f"{pool_id}-{i}",
                timestamp=start_time + i * block_time,
                pool_id=pool_id,
                fee_bps=fee_bps,
                kind=EventKind.SWAP,
                wallet=wallet,
                amount0=amount0,
                amount1=amount1,
                price_after=receipt.end_price,
            )
        )
    return events


def pool_price_path(df: pd.DataFrame) -> pd.Series:
    """Latest known pool price at every event: the post-swap price of the pool's most recent swap."""
    is_swap = df["kind"] == EventKind.SWAP.value
    execution = (-df["amount1"] / df["amount0"]).where(is_swap)
    post = df["price_after"].astype(float).where(is_swap).fillna(execution)
    return post.groupby(df["pool_id"], sort=False).ffill()
