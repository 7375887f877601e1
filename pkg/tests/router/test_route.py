import pytest

from feetiers.constants import ROUTE_POOL_HIGH_PATH, ROUTE_POOL_LOW_PATH
from feetiers.exceptions import InsufficientDepthError, ParameterError
from feetiers.logics.common.io import load_config
from feetiers.pool.engine import quote_buy_cost
from feetiers.pool.state import PoolState
from feetiers.router import feasible_split, route, route_brute_force, route_sizes


@pytest.fixture(scope="module")
def pools() -> tuple[PoolState, PoolState]:
    return PoolState.from_snapshot(load_config(ROUTE_POOL_LOW_PATH)), PoolState.from_snapshot(
        load_config(ROUTE_POOL_HIGH_PATH)
    )


def test_small_order_goes_to_low_fee_pool(pools: tuple[PoolState, PoolState]) -> None:
    result = route(1.0, *pools)
    assert result.split_low == pytest.approx(1.0)
    assert result.cost_total == pytest.approx(quote_buy_cost(pools[0], 1.0))


def test_large_order_is_split(pools: tuple[PoolState, PoolState]) -> None:
    result = route(1_000.0, *pools)
    assert 0.0 < result.split_low < 1.0
    assert result.split_high == pytest.approx(1.0 - result.split_low)
    assert result.cost_total == pytest.approx(result.cost_low + result.cost_high)
    assert result.filled == 1_000.0


@pytest.mark.parametrize("size", [10.0, 500.0, 2_000.0])
def test_matches_brute_force(pools: tuple[PoolState, PoolState], size: float) -> None:
    optimum = route(size, *pools)
    grid = route_brute_force(size, *pools)
    assert optimum.cost_total <= grid.cost_total * (1.0 + 1e-9)
    assert optimum.split_low == pytest.approx(grid.split_low, abs=2e-3)


def test_gas_favours_a_single_pool(pools: tuple[PoolState, PoolState]) -> None:
    gas = 1e6
    result = route(100.0, *pools, gas_per_pool=gas)
    assert result.split_low in (0.0, 1.0)
    assert 0.0 in (result.cost_low, result.cost_high)
    cheapest = min(quote_buy_cost(pools[0], 100.0), quote_buy_cost(pools[1], 100.0)) + gas
    assert result.cost_total == pytest.approx(cheapest, rel=1e-12)


def test_feasible_split(pools: tuple[PoolState, PoolState]) -> None:
    depth_low = pools[0].token_depth_above()
    lower, upper = feasible_split(2_000.0, *pools)
    assert lower == 0.0
    assert upper == pytest.approx(depth_low / 2_000.0)


def test_zero_and_invalid_sizes(pools: tuple[PoolState, PoolState]) -> None:
    empty = route(0.0, *pools)
    assert (empty.split_low, empty.cost_total) == (1.0, 0.0)
    with pytest.raises(ParameterError):
        route(-1.0, *pools)
    with pytest.raises(InsufficientDepthError):
        route(1e6, *pools)


def test_route_sizes(pools: tuple[PoolState, PoolState]) -> None:
    df = route_sizes([1.0, 10.0, 100.0], *pools, threads=2)
    assert list(df["size"]) == [1.0, 10.0, 100.0]
    assert df["cost_total"].is_monotonic_increasing
