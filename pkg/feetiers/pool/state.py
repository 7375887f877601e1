import math
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from feetiers.constants import BASIS_POINTS
from feetiers.exceptions import ParameterError
from feetiers.pool.liquidity import deposit_amounts, liquidity_for_capital
from feetiers.pool.tick import TickGrid, tick_spacing_for_fee, tick_to_price


class Position(BaseModel):
    """Liquidity position over the raw tick range [lower_tick, upper_tick).

    Fees are held outside the pool and accrue to ``fees_owed_token`` and ``fees_owed_numeraire``.
    """

    model_config = ConfigDict(frozen=True)

    owner: str = Field(..., description="Opaque owner identifier.")
    lower_tick: int = Field(..., description="Raw lower tick of the range.")
    upper_tick: int = Field(..., description="Raw upper tick of the range.")
    liquidity: float = Field(..., ge=0.0, description="Position liquidity L.")
    fees_owed_token: float = Field(default=0.0, ge=0.0, description="Accrued fees in token units.")
    fees_owed_numeraire: float = Field(default=0.0, ge=0.0, description="Accrued fees in numeraire units.")

    @model_validator(mode="after")
    def check_tick_order(self) -> "Position":
        if self.lower_tick >= self.upper_tick:
            raise ValueError(
                f"Invalid upper_tick: must satisfy lower_tick < upper_tick (got {self.lower_tick}, {self.upper_tick})"
            )
        return self

    @property
    def price_lower(self) -> float:
        return tick_to_price(self.lower_tick)

    @property
    def price_upper(self) -> float:
        return tick_to_price(self.upper_tick)

    def amounts(self, price: float) -> tuple[float, float]:
        return deposit_amounts(self.liquidity, self.price_lower, self.price_upper, price)


class PoolState(BaseModel):
    """Concentrated-liquidity pool as a plain value.

    Every operation that changes the pool returns a new instance. Per-tick liquidity is derived from
    ``positions`` so it always equals the sum of the overlapping positions.

    Attributes:
        grid (TickGrid): price grid of the pool.
        fee_fraction (float): proportional fee charged on the numeraire leg.
        current_price (float): marginal price of the token in numeraire.
        positions (list[Position]): active positions.
    """

    model_config = ConfigDict(frozen=True)

    grid: TickGrid = Field(..., description="Price grid of the pool.")
    fee_fraction: float = Field(..., ge=0.0, lt=1.0, description="Fee charged on the numeraire leg.")
    current_price: float = Field(..., gt=0.0, description="Current marginal price.")
    positions: tuple[Position, ...] = Field(default=(), description="Positions providing liquidity.")

    @model_validator(mode="after")
    def check_alignment(self) -> "PoolState":
        for position in self.positions:
            if not (self.grid.is_aligned(position.lower_tick) and self.grid.is_aligned(position.upper_tick)):
                raise ValueError(
                    f"Invalid position ticks: must be multiples of spacing {self.grid.spacing_ticks} "
                    f"(got {position.lower_tick}, {position.upper_tick})"
                )
        if not math.isfinite(self.current_price):
            raise ValueError(f"Invalid current_price: must be finite (got {self.current_price})")
        return self

    @property
    def fee_bps(self) -> float:
        return self.fee_fraction * BASIS_POINTS

    @classmethod
    def from_fee_tier(
        cls,
        fee_bps: int,
        current_price: float,
        tick_spacing: int | None = None,
        spacing_overrides: dict[int, int] | None = None,
    ) -> "PoolState":
        spacing = tick_spacing if tick_spacing is not None else tick_spacing_for_fee(fee_bps, spacing_overrides)
        return cls(
            grid=TickGrid(spacing_ticks=spacing),
            fee_fraction=fee_bps / BASIS_POINTS,
            current_price=current_price,
        )

    def boundary_ticks(self) -> list[int]:
        ticks = {p.lower_tick for p in self.positions if p.liquidity > 0}
        ticks |= {p.upper_tick for p in self.positions if p.liquidity > 0}
        return sorted(ticks)

    def liquidity_at(self, price: float, upward: bool = True) -> float:
        """Aggregate liquidity that trades at ``price``.

        Moving upward the ranges are half-open on the right, moving downward on the left.
        """
        total = 0.0
        for position in self.positions:
            lower, upper = position.price_lower, position.price_upper
            if upward and lower <= price < upper:
                total += position.liquidity
            elif not upward and lower < price <= upper:
                total += position.liquidity
        return total

    def per_tick_liquidity(self) -> dict[tuple[int, int], float]:
        """Aggregate L on every grid interval spanned by at least one position."""
        if not self.positions:
            return {}
        spacing = self.grid.spacing_ticks
        lowest = min(p.lower_tick for p in self.positions)
        highest = max(p.upper_tick for p in self.positions)
        result: dict[tuple[int, int], float] = {}
        for lower in range(lowest, highest, spacing):
            upper = lower + spacing
            total = sum(p.liquidity for p in self.positions if p.lower_tick <= lower and upper <= p.upper_tick)
            if total > 0:
                result[(lower, upper)] = total
        return result

    def token_depth_above(self) -> float:
        """Token quantity a buyer can take before every range above the price is exhausted."""
        return sum(p.amounts(self.current_price)[0] for p in self.positions)

    def numeraire_depth_below(self) -> float:
        return sum(p.amounts(self.current_price)[1] for p in self.positions)

    def reserves(self) -> tuple[float, float]:
        return self.token_depth_above(), self.numeraire_depth_below()

    def add_position(self, position: Position) -> "PoolState":
        return self.model_copy(update={"positions": (*self.positions, position)})

    def mint_capital(
        self,
        owner: str,
        lower_tick: int,
        upper_tick: int,
        capital: float,
        token_value: float | None = None,
    ) -> tuple["PoolState", Position]:
        """Add a position worth ``capital`` numeraire at the current price."""
        if lower_tick >= upper_tick:
            raise ParameterError("upper_tick", "lower_tick < upper_tick", (lower_tick, upper_tick))
        value = token_value if token_value is not None else self.current_price
        liquidity = liquidity_for_capital(
            capital, tick_to_price(lower_tick), tick_to_price(upper_tick), self.current_price, value
        )
        position = Position(owner=owner, lower_tick=lower_tick, upper_tick=upper_tick, liquidity=liquidity)
        return self.add_position(position), position

    def to_snapshot(self) -> dict[str, Any]:
        return {
            "fee_bps": self.fee_bps,
            "tick_spacing": self.grid.spacing_ticks,
            "current_price": self.current_price,
            "positions": [
                {
                    "owner": p.owner,
                    "lower_tick": p.lower_tick,
                    "upper_tick": p.upper_tick,
                    "liquidity": p.liquidity,
                }
                for p in self.positions
            ],
        }

    @classmethod
    def from_snapshot(cls, snapshot: dict[str, Any]) -> "PoolState":
        for key in ("fee_bps", "current_price"):
            if key not in snapshot:
                raise ParameterError(key, f"pool snapshot contains '{key}'")
        fee_bps = snapshot["fee_bps"]
        spacing = snapshot.get("tick_spacing")
        if spacing is None:
            spacing = tick_spacing_for_fee(int(fee_bps))
        return cls(
            grid=TickGrid(spacing_ticks=int(spacing)),
            fee_fraction=float(fee_bps) / BASIS_POINTS,
            current_price=float(snapshot["current_price"]),
            positions=tuple(Position(**p) for p in snapshot.get("positions", [])),
        )


class TickFill(BaseModel):
    """Part of a swap executed at constant liquidity."""

    start_price: float = Field(..., description="Price at the start of the fill.")
    end_price: float = Field(..., description="Price at the end of the fill.")
    liquidity: float = Field(..., description="Aggregate liquidity of the fill.")
    token_amount: float = Field(..., description="Token quantity exchanged.")
    numeraire_amount: float = Field(..., description="Numeraire quantity exchanged before fees.")
    fee: float = Field(..., description="Fee charged on the fill.")


class SwapReceipt(BaseModel):
    """Outcome of a swap.

    For a buy, ``amount_in`` is the numeraire deposited into the pool and ``amount_out`` the token removed.
    For a sell, ``amount_in`` is the token deposited and ``amount_out`` the numeraire paid to the seller after fees.
    ``fee_paid`` is ``fee_fraction`` times the numeraire that crossed the pool.
    """

    side: Literal["buy", "sell"] = Field(..., description="Direction of the trade from the taker's side.")
    amount_in: float = Field(..., description="Amount deposited into the pool.")
    amount_out: float = Field(..., description="Amount removed from the pool.")
    fee_paid: float = Field(..., description="Fee charged on the numeraire leg.")
    ticks_crossed: int = Field(..., ge=0, description="Number of grid boundaries crossed.")
    start_price: float = Field(..., description="Pool price before the swap.")
    end_price: float = Field(..., description="Pool price after the swap.")
    per_provider_fees: dict[str, float] = Field(default_factory=dict, description="Fee share per owner.")
    fills: list[TickFill] = Field(default_factory=list, description="Constant-liquidity fills in execution order.")

    @property
    def total_cost(self) -> float:
        """Numeraire paid by a buyer including fees."""
        return self.amount_in + self.fee_paid if self.side == "buy" else 0.0

    @property
    def average_price(self) -> float:
        token = self.amount_out if self.side == "buy" else self.amount_in
        numeraire = self.amount_in if self.side == "buy" else self.amount_out + self.fee_paid
        return numeraire / token if token > 0 else self.start_price
