import numpy as np
import pytest

from feetiers.logics.range_model.equilibrium import solve_equilibrium
from feetiers.schema import RangeModelParams
from feetiers.sim.range import simulate_range


@pytest.fixture(scope="module")
def trace(range_params: RangeModelParams):  # type: ignore[no-untyped-def]
    return simulate_range(range_params, solve_equilibrium(range_params), 5_000, np.random.default_rng(7))


def test_news_share(trace, range_params: RangeModelParams) -> None:  # type: ignore[no-untyped-def]
    assert trace.news.mean() == pytest.approx(range_params.eta, abs=0.03)


def test_rebalancing_only_on_news(trace) -> None:  # type: ignore[no-untyped-def]
    for pool in (trace.low, trace.high):
        assert not np.any(pool.rebalanced & ~trace.news)
        assert np.all(pool.tokens >= 0.0)
        assert np.all(pool.tokens <= pool.supply + 1e-12)


def test_gains_only_on_private_shocks(trace) -> None:  # type: ignore[no-untyped-def]
    assert np.all(trace.gains[trace.news] == 0.0)
    assert np.all(trace.gains >= 0.0)


def test_private_shocks_pay_fees(trace) -> None:  # type: ignore[no-untyped-def]
    private = ~trace.news
    assert np.all(trace.low.lp_profit[private] >= 0.0)
