import pytest
from pytest_mock import MockerFixture

from feetiers.logics import EquilibriumModelContext, ModelType, StrategyFactory
from feetiers.logics.cycle_model import CycleModelStrategy
from feetiers.logics.range_model import RangeModelStrategy
from feetiers.schema import CycleModelParams, RangeModelParams, SweepAxis


class TestStrategyFactory:
    def test_create_range(self, range_params: RangeModelParams) -> None:
        assert isinstance(StrategyFactory.create_strategy(ModelType.RANGE, params=range_params), RangeModelStrategy)

    def test_create_cycle(self, cycle_params: CycleModelParams) -> None:
        assert isinstance(StrategyFactory.create_strategy(ModelType.CYCLE, params=cycle_params), CycleModelStrategy)

    def test_unknown_type(self) -> None:
        with pytest.raises(ValueError):
            StrategyFactory.create_strategy("bogus")  # type: ignore[arg-type]


def test_model_type_from_name() -> None:
    assert ModelType.from_name("Range") == ModelType.RANGE
    with pytest.raises(ValueError):
        ModelType.from_name("orderbook")


class TestEquilibriumModelContext:
    def test_experiment_skipped_when_validation_fails(
        self, range_params: RangeModelParams, mocker: MockerFixture
    ) -> None:
        context = EquilibriumModelContext(ModelType.RANGE, params=range_params)
        mocker.patch.object(RangeModelStrategy, "validate", return_value=False)
        run = mocker.spy(RangeModelStrategy, "execute_experiment")
        assert context.execute_experiment(SweepAxis(param="Gamma", min=0.0, max=1.0, points=2)) is None
        run.assert_not_called()

    def test_switch_strategy(self, range_params: RangeModelParams, cycle_params: CycleModelParams) -> None:
        context = EquilibriumModelContext(ModelType.RANGE, params=range_params)
        context.set_strategy(ModelType.CYCLE, params=cycle_params)
        result = context.execute_baseline()
        assert result["equilibrium"]["regime"] == "Fragmented"
