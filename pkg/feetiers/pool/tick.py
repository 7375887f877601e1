import math

from pydantic import BaseModel, ConfigDict, Field

from feetiers.constants import FEE_TIER_TICK_SPACING, TICK_BASE, TICK_INDEX_ROUNDING_TOL
from feetiers.exceptions import ParameterError

_LOG_TICK_BASE = math.log(TICK_BASE)


def tick_to_price(tick: int | float) -> float:
    """Convert a raw basis-point tick to its price, 1.0001**tick."""
    return TICK_BASE**tick


def price_to_tick(price: float) -> int:
    """Convert a price to the raw tick at or below it."""
    if price <= 0:
        raise ParameterError("price", "price > 0", price)
    exact = math.log(price) / _LOG_TICK_BASE
    nearest = round(exact)
    if abs(exact - nearest) < TICK_INDEX_ROUNDING_TOL:
        return int(nearest)
    return math.floor(exact)


def tick_spacing_for_fee(fee_bps: int, overrides: dict[int, int] | None = None) -> int:
    mapping = {**FEE_TIER_TICK_SPACING, **(overrides or {})}
    if fee_bps not in mapping:
        raise ValueError(f"Invalid fee tier: {fee_bps} (known tiers: {sorted(mapping)})")
    return mapping[fee_bps]


class TickGrid(BaseModel):
    """Log-linear price grid.

    Grid index ``i`` maps to the raw tick ``spacing_ticks * i`` and the price ``1.0001**(spacing_ticks * i)``.
    A price that sits exactly on a grid point belongs to the interval that starts there.

    Attributes:
        spacing_ticks (int): basis-point ticks per grid step.
        base (float): tick base, fixed at 1.0001.
    """

    model_config = ConfigDict(frozen=True)

    spacing_ticks: int = Field(..., gt=0, description="Basis-point ticks per grid step.")
    base: float = Field(default=TICK_BASE, description="Tick base of the log-linear grid.")

    def price_of(self, i: int) -> float:
        return tick_to_price(self.spacing_ticks * i)

    def index_of(self, price: float) -> int:
        """Grid index of the half-open interval [p_i, p_{i+1}) that contains the price."""
        if price <= 0:
            raise ParameterError("price", "price > 0", price)
        exact = math.log(price) / (_LOG_TICK_BASE * self.spacing_ticks)
        nearest = round(exact)
        if abs(exact - nearest) < TICK_INDEX_ROUNDING_TOL:
            return int(nearest)
        return math.floor(exact)

    def is_aligned(self, tick: int) -> bool:
        return tick % self.spacing_ticks == 0

    def interval_of_tick(self, tick: int) -> tuple[int, int]:
        lower = tick // self.spacing_ticks * self.spacing_ticks
        return lower, lower + self.spacing_ticks


def price_of_tick(i: int, grid: TickGrid) -> float:
    return grid.price_of(i)
