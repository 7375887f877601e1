import pandas as pd
from loguru import logger

from feetiers.schema import EventKind

JIT_COLUMNS = ["mint_id", "swap_id", "burn_id", "block", "pool_id", "wallet"]


def jit_detect(events: pd.DataFrame) -> pd.DataFrame:
    """Mint at position k, swap at k+1 and burn at k+2 in one block and pool, mint and burn from one wallet."""
    keys = ["block", "pool_id"]
    mints = events.loc[events["kind"] == EventKind.MINT.value, ["event_id", "block", "position", "pool_id", "wallet"]]
    swaps = events.loc[events["kind"] == EventKind.SWAP.value, ["event_id", "block", "position", "pool_id"]]
    burns = events.loc[events["kind"] == EventKind.BURN.value, ["event_id", "block", "position", "pool_id", "wallet"]]

    mints = mints.rename(columns={"event_id": "mint_id"}).assign(swap_position=mints["position"] + 1)
    mints["burn_position"] = mints["position"] + 2
    triples = mints.merge(
        burns.rename(columns={"event_id": "burn_id", "position": "burn_position"}),
        on=keys + ["wallet", "burn_position"],
    ).merge(
        swaps.rename(columns={"event_id": "swap_id", "position": "swap_position"}),
        on=keys + ["swap_position"],
    )
    triples = triples[JIT_COLUMNS].sort_values("mint_id", kind="stable").reset_index(drop=True)
    logger.info(f"Flagged {len(triples)} JIT triple(s)")
    return triples
