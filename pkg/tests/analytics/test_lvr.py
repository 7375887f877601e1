import numpy as np
import pandas as pd
import pytest

from feetiers.analytics.events import events_frame, swaps_only
from feetiers.analytics.lvr import (
    forward_price,
    instant_benchmark,
    lagged_benchmark,
    lvr_daily,
    lvr_swap,
    lvr_swaps,
    winsorize,
)
from feetiers.exceptions import ParameterError
from feetiers.schema import EventKind
from tests.conftest import make_event


class TestLvrSwap:
    def test_buy(self) -> None:
        assert lvr_swap(make_event(1, 0, EventKind.SWAP, -1.0, 100.0), 101.0) == pytest.approx(1.0)

    def test_sell(self) -> None:
        assert lvr_swap(make_event(1, 0, EventKind.SWAP, 2.0, -190.0), 100.0) == pytest.approx(10.0)

    def test_not_a_swap(self) -> None:
        with pytest.raises(ParameterError):
            lvr_swap(make_event(1, 0, EventKind.MINT, 1.0, 1.0), 100.0)

    def test_zero_token_leg(self) -> None:
        with pytest.raises(ParameterError):
            lvr_swaps(np.array([0.0]), np.array([1.0]), np.array([1.0]))


def test_winsorize_clips_tails() -> None:
    values = np.concatenate([np.zeros(998), [1e6, -1e6]])
    clipped = winsorize(values)
    assert clipped.max() < 1e6
    assert clipped.min() > -1e6
    assert len(winsorize(np.array([]))) == 0


def test_lvr_daily() -> None:
    assert lvr_daily(np.array([1.0, 2.0]), 300.0) == pytest.approx(100.0)
    assert lvr_daily(np.array([1.0]), 0.0) is None


@pytest.fixture
def two_pool_swaps() -> pd.DataFrame:
    events = [
        make_event(1, 0, EventKind.SWAP, -1.0, 100.0, timestamp=0, price_after=100.5),
        make_event(2, 0, EventKind.SWAP, -1.0, 101.0, timestamp=600),
        make_event(3, 0, EventKind.SWAP, -1.0, 104.0, timestamp=3_700),
        make_event(4, 0, EventKind.SWAP, -1.0, 106.0, pool_id="pool_30", fee_bps=30, timestamp=3_800),
    ]
    return swaps_only(events_frame(events))


def test_instant_benchmark(two_pool_swaps: pd.DataFrame) -> None:
    benchmark = instant_benchmark(two_pool_swaps)
    assert list(benchmark.iloc[:2]) == [100.5, 104.0]
    assert pd.isna(benchmark.iloc[2])
    assert pd.isna(benchmark.iloc[3])


def test_forward_price_respects_staleness(two_pool_swaps: pd.DataFrame) -> None:
    prices = forward_price(two_pool_swaps, two_pool_swaps)
    assert prices.iloc[0] == pytest.approx(104.0)
    assert pd.isna(prices.iloc[1])
    assert pd.isna(prices.iloc[3])


def test_lagged_benchmark_weights_by_tvl(two_pool_swaps: pd.DataFrame) -> None:
    hourly = pd.DataFrame({"pool_id": ["pool_5", "pool_30"], "hour": [0, 0], "tvl": [300.0, 100.0]})
    benchmark = lagged_benchmark(two_pool_swaps, hourly)
    assert benchmark.iloc[0] == pytest.approx((104.0 * 300.0 + 106.0 * 100.0) / 400.0)
    assert pd.isna(benchmark.iloc[1])


def test_lagged_benchmark_equal_weights_without_tvl(two_pool_swaps: pd.DataFrame) -> None:
    hourly = pd.DataFrame(columns=["pool_id", "hour", "tvl"])
    assert lagged_benchmark(two_pool_swaps, hourly).iloc[0] == pytest.approx(105.0)
