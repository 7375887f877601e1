import pandas as pd
import pytest

from feetiers.analytics.events import events_frame
from feetiers.schema import CycleModelParams, EventKind, MarketEvent, RangeModelParams


@pytest.fixture(scope="module")
def range_params() -> RangeModelParams:
    return RangeModelParams(v=1.0, eta=0.1, lambda_endow=1.0, ell=1.0, h=2.0, r=0.001, Delta=None, Gamma=20.0)


@pytest.fixture(scope="module")
def cycle_params() -> CycleModelParams:
    return CycleModelParams(
        Q=3.0, theta_rate=0.66, lambda_rate=0.5, Theta_big=2.0, ell=0.75, h=1.0, Gamma=1.0, Delta_gft=1.0
    )


def make_event(
    block: int,
    position: int,
    kind: EventKind,
    amount0: float,
    amount1: float,
    pool_id: str = "pool_5",
    fee_bps: int = 5,
    wallet: str = "w0",
    timestamp: int | None = None,
    tick_lower: int | None = None,
    tick_upper: int | None = None,
    gas_bid: float = 0.0,
    price_after: float | None = None,
    pair_id: str | None = None,
) -> MarketEvent:
    if kind != EventKind.SWAP and tick_lower is None:
        tick_lower, tick_upper = 0, 60
    return MarketEvent(
        block=block,
        position=position,
        tx_hash=f"0x{block:06d}{position:04d}",
        timestamp=block * 12 if timestamp is None else timestamp,
        pool_id=pool_id,
        fee_bps=fee_bps,
        kind=kind,
        wallet=wallet,
        amount0=amount0,
        amount1=amount1,
        tick_lower=tick_lower,
        tick_upper=tick_upper,
        gas_bid=gas_bid,
        price_after=price_after,
        pair_id=pair_id,
    )


@pytest.fixture(scope="function")
def jit_events() -> pd.DataFrame:
    """A JIT triple in block 10 next to a near miss in block 11 whose burn comes one position late."""
    events = [
        make_event(10, 0, EventKind.MINT, 5.0, 500.0, wallet="jit"),
        make_event(10, 1, EventKind.SWAP, -1.0, 101.0, wallet="taker", price_after=102.0),
        make_event(10, 2, EventKind.BURN, 4.0, 601.0, wallet="jit"),
        make_event(11, 0, EventKind.MINT, 5.0, 500.0, wallet="slow"),
        make_event(11, 1, EventKind.SWAP, 1.0, -99.0, wallet="taker", price_after=98.0),
        make_event(11, 2, EventKind.SWAP, 1.0, -97.0, wallet="taker", price_after=96.0),
        make_event(11, 3, EventKind.BURN, 6.0, 305.0, wallet="slow"),
    ]
    return events_frame(events)
