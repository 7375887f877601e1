import pytest

from feetiers.logics.cycle_model.equilibrium import solve_cycle_equilibrium
from feetiers.logics.range_model.equilibrium import solve_equilibrium
from feetiers.schema import CycleModelParams, PredictionStatus, RangeModelParams, SimConfig, SimModel
from feetiers.sim import prediction_checks, simulate
from feetiers.sim.predictions import REBALANCING, TRADE_SIZE, VOLUME, VOLUME_SHARE


def test_defaults_pass(cycle_params: CycleModelParams) -> None:
    config = SimConfig(model=SimModel.CYCLE, params=cycle_params, horizon=20_000, seed=17, replications=2)
    ledger = prediction_checks(simulate(config), solve_cycle_equilibrium(cycle_params))
    for name in (TRADE_SIZE, VOLUME_SHARE, VOLUME, REBALANCING):
        assert ledger.status_of(name) == PredictionStatus.PASS
    assert ledger.failed == []


def test_single_pool_not_applicable(cycle_params: CycleModelParams) -> None:
    params = cycle_params.model_copy(update={"Gamma": 0.0})
    config = SimConfig(model=SimModel.CYCLE, params=params, horizon=1_000, seed=17)
    ledger = prediction_checks(simulate(config), solve_cycle_equilibrium(params))
    assert {c.status for c in ledger.checks} == {PredictionStatus.NOT_APPLICABLE}


def test_range_scores_rebalancing_only(range_params: RangeModelParams) -> None:
    config = SimConfig(model=SimModel.RANGE, params=range_params, horizon=2_000, seed=17)
    ledger = prediction_checks(simulate(config), solve_equilibrium(range_params))
    assert ledger.status_of(TRADE_SIZE) == PredictionStatus.NOT_APPLICABLE
    assert ledger.status_of(REBALANCING) != PredictionStatus.NOT_APPLICABLE


def test_unknown_prediction(cycle_params: CycleModelParams) -> None:
    config = SimConfig(model=SimModel.CYCLE, params=cycle_params, horizon=100, seed=1)
    ledger = prediction_checks(simulate(config), solve_cycle_equilibrium(cycle_params))
    with pytest.raises(ValueError):
        ledger.status_of("nope")
