from abc import ABC, abstractmethod
from enum import Enum, auto
from typing import Any

import pandas as pd

from feetiers.schema import SweepAxis


class ModelType(Enum):
    RANGE = auto()
    CYCLE = auto()

    @classmethod
    def from_name(cls, name: str) -> "ModelType":
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError(f"Invalid model type: {name} (expected one of {[m.name.lower() for m in cls]})")


class EquilibriumStrategy(ABC):
    @abstractmethod
    def execute_baseline(self, *args: Any, **kwargs: Any) -> dict[str, Any]:
        pass

    @abstractmethod
    def execute_experiment(self, axis: SweepAxis, threads: int = 1) -> pd.DataFrame:
        pass

    @abstractmethod
    def validate(self) -> bool:
        pass
