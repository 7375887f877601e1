from feetiers.logics.base import EquilibriumStrategy, ModelType
from feetiers.logics.strategies import EquilibriumModelContext, StrategyFactory

__all__ = ["EquilibriumStrategy", "ModelType", "EquilibriumModelContext", "StrategyFactory"]
