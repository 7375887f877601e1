from typing import Any

import pandas as pd
from loguru import logger

from feetiers.logics.base import EquilibriumStrategy, ModelType
from feetiers.schema import SweepAxis


class StrategyFactory:
    @classmethod
    def create_strategy(cls, model_type: ModelType, **kwargs: Any) -> EquilibriumStrategy:
        if model_type == ModelType.RANGE:
            from feetiers.logics.range_model import RangeModelStrategy

            return RangeModelStrategy(**kwargs)
        elif model_type == ModelType.CYCLE:
            from feetiers.logics.cycle_model import CycleModelStrategy

            return CycleModelStrategy(**kwargs)
        else:
            raise ValueError(f"Unknown strategy type: {model_type}")


class EquilibriumModelContext:
    def __init__(self, model_type: ModelType, **strategy_kwargs: Any) -> None:
        self._strategy = StrategyFactory.create_strategy(model_type, **strategy_kwargs)

    def set_strategy(self, model_type: ModelType, **strategy_kwargs: Any) -> None:
        self._strategy = StrategyFactory.create_strategy(model_type, **strategy_kwargs)

    def execute_baseline(self, *args: Any, **kwargs: Any) -> dict[str, Any]:
        return self._strategy.execute_baseline(*args, **kwargs)

    def execute_experiment(self, axis: SweepAxis, threads: int = 1) -> pd.DataFrame | None:
        if self._strategy.validate():
            return self._strategy.execute_experiment(axis, threads)
        logger.warning("Strategy validation failed; sweep skipped")
        return None
