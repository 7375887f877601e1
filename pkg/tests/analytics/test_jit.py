import pandas as pd

from feetiers.analytics.jit import JIT_COLUMNS, jit_detect
from feetiers.analytics.events import events_frame
from feetiers.schema import EventKind
from tests.conftest import make_event


def test_detects_single_triple(jit_events: pd.DataFrame) -> None:
    triples = jit_detect(jit_events)
    assert list(triples.columns) == JIT_COLUMNS
    assert len(triples) == 1
    row = triples.iloc[0]
    assert (row["mint_id"], row["swap_id"], row["burn_id"]) == (0, 1, 2)
    assert row["wallet"] == "jit"
    assert row["block"] == 10


def test_burn_from_another_wallet_is_not_jit() -> None:
    events = events_frame(
        [
            make_event(5, 0, EventKind.MINT, 1.0, 1.0, wallet="a"),
            make_event(5, 1, EventKind.SWAP, -0.5, 0.6, wallet="taker"),
            make_event(5, 2, EventKind.BURN, 0.5, 1.6, wallet="b"),
        ]
    )
    assert jit_detect(events).empty
