import math
from enum import Enum
from typing import Any, Literal

from pydantic import BaseModel, Field, field_validator, model_validator

from feetiers.constants import DEFAULT_BATCH_NUM, DEFAULT_REPLICATIONS, DEFAULT_SIM_HORIZON, DEFAULT_SIM_SEED


class PoolSide(str, Enum):
    LOW = "low"
    HIGH = "high"


class RangeRegime(str, Enum):
    ALL_HIGH = "AllHigh"
    FRAGMENTED = "Fragmented"


class CycleRegime(str, Enum):
    ALL_LOW = "AllLow"
    ALL_HIGH = "AllHigh"
    FRAGMENTED = "Fragmented"


class RangeModelParams(BaseModel):
    """Exogenous parameters of the range-order model.

    ``Delta`` defaults to ``1.1 * (1 + r) * sqrt(1 + h)`` when omitted.
    """

    v: float = Field(default=1.0, gt=0.0, description="Token value in numeraire.")
    eta: float = Field(default=0.1, gt=0.0, lt=1.0, description="Probability that a shock is common-value news.")
    lambda_endow: float = Field(default=1.0, gt=0.0, description="Scale of the exponential LP endowment.")
    ell: float = Field(default=1.0, ge=0.0, description="Fee of the low-fee pool.")
    h: float = Field(default=2.0, gt=0.0, description="Fee of the high-fee pool.")
    r: float = Field(default=0.001, ge=0.0, description="Half-width of the price band.")
    Delta: float = Field(default=0.0, description="Shock scale; sqrt(1+delta) has support up to Delta.")
    Gamma: float = Field(default=20.0, ge=0.0, description="Gas cost per rebalancing interaction.")

    @model_validator(mode="before")
    @classmethod
    def fill_delta(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("Delta") is None:
            r = float(data.get("r", 0.001))
            h = float(data.get("h", 2.0))
            data = {**data, "Delta": 1.1 * (1.0 + r) * math.sqrt(1.0 + h)}
        return data

    @model_validator(mode="after")
    def check_fees(self) -> "RangeModelParams":
        if not self.ell < self.h:
            raise ValueError(f"Invalid ell: must satisfy 0 <= ell < h (got ell={self.ell}, h={self.h})")
        if not self.Delta > 1.0:
            raise ValueError(f"Invalid Delta: must satisfy Delta > 1 (got {self.Delta})")
        return self


class RangeEquilibrium(BaseModel):
    regime: RangeRegime = Field(..., description="Equilibrium regime.")
    q_t: float | None = Field(..., description="Marginal LP endowment; absent when all LPs choose pool H.")
    q_lo_h: float = Field(..., description="Participation threshold of pool H.")
    q_lo_l: float = Field(..., description="Participation threshold of pool L.")
    w_low: float = Field(..., ge=0.0, le=1.0, description="Liquidity market share of pool L.")
    pool_supply_low: float = Field(..., ge=0.0, description="Expected token supply on pool L.")
    pool_supply_high: float = Field(..., ge=0.0, description="Expected token supply on pool H.")
    lp_mass_low: float = Field(..., ge=0.0, description="Probability mass of LPs on pool L.")
    lp_mass_high: float = Field(..., ge=0.0, description="Probability mass of LPs on pool H.")
    eta_threshold: float = Field(..., description="News intensity above which pool L attracts no liquidity.")
    yield_threshold: float = Field(..., description="Fee that maximises the liquidity yield.")
    low_fee_above_threshold: bool = Field(..., description="Whether ell exceeds the yield-maximising fee.")
    high_fee_above_threshold: bool = Field(..., description="Whether h exceeds the yield-maximising fee.")


class CycleModelParams(BaseModel):
    Q: float = Field(default=3.0, gt=1.0, description="Upper bound of the truncated Pareto endowment.")
    theta_rate: float = Field(default=0.66, gt=0.0, description="Arrival rate of small liquidity takers.")
    lambda_rate: float = Field(default=0.5, gt=0.0, description="Poisson rate of large liquidity takers.")
    Theta_big: float = Field(default=2.0, gt=0.0, description="Liquidity demand of a large trader.")
    ell: float = Field(default=0.75, ge=0.0, description="Fee of the low-fee pool.")
    h: float = Field(default=1.0, gt=0.0, description="Fee of the high-fee pool.")
    Gamma: float = Field(default=1.0, ge=0.0, description="Gas cost per liquidity interaction.")
    Delta_gft: float = Field(default=1.0, gt=0.0, description="Per-unit gains from trade of the large trader.")

    @property
    def aggregate_supply(self) -> float:
        return self.Q / (self.Q - 1.0) * math.log(self.Q)

    @property
    def exponent(self) -> float:
        return self.lambda_rate / self.theta_rate * self.Q / (self.Q - 1.0)

    @model_validator(mode="after")
    def check_invariants(self) -> "CycleModelParams":
        if not self.ell < self.h:
            raise ValueError(f"Invalid ell: must satisfy 0 <= ell < h (got ell={self.ell}, h={self.h})")
        if not self.Theta_big > self.aggregate_supply:
            raise ValueError(
                f"Invalid Theta_big: must satisfy Theta_big > S = Q/(Q-1)*log(Q) = {self.aggregate_supply} "
                f"(got {self.Theta_big})"
            )
        return self


class CycleEquilibrium(BaseModel):
    regime: CycleRegime = Field(..., description="Equilibrium regime.")
    q_t: float = Field(..., description="Marginal LP endowment.")
    q_lo: float = Field(..., description="Participation threshold max(Gamma/h, 1) clamped to Q.")
    q_r: float | None = Field(default=None, description="Root of f1 when it lies in [1, Q).")
    L_low: float = Field(..., ge=0.0, description="Pool L size at the start of a cycle.")
    L_high: float = Field(..., ge=0.0, description="Pool H size at the start of a cycle.")
    w_low: float = Field(..., ge=0.0, le=1.0, description="Liquidity share of pool L.")
    d_low: float = Field(..., ge=0.0, description="Expected cycle duration on pool L.")
    d_high: float = Field(..., ge=0.0, description="Expected cycle duration on pool H.")
    boundary_flag: bool = Field(default=False, description="Whether the point lies on a regime boundary.")
    candidate_regimes: list[CycleRegime] = Field(default_factory=list, description="Regimes consistent at a tie.")


class SweepAxis(BaseModel):
    param: str = Field(..., description="Name of the parameter varied.")
    min: float = Field(..., description="First grid value.")
    max: float = Field(..., description="Last grid value.")
    points: int = Field(..., ge=2, description="Number of grid points.")

    def values(self) -> list[float]:
        step = (self.max - self.min) / (self.points - 1)
        return [self.min + i * step for i in range(self.points)]


class SimModel(str, Enum):
    CYCLE = "cycle"
    RANGE = "range"


class SimConfig(BaseModel):
    model: SimModel = Field(..., description="Which model's event process to simulate.")
    params: RangeModelParams | CycleModelParams = Field(..., description="Parameters of the simulated model.")
    horizon: int = Field(default=DEFAULT_SIM_HORIZON, gt=0, description="Large-trader arrivals or shock events.")
    seed: int = Field(default=DEFAULT_SIM_SEED, ge=0, lt=2**64, description="Master seed.")
    dt: float | None = Field(default=None, gt=0.0, description="Time step of the small flow; None is event driven.")
    discrete_small_trades: bool = Field(default=False, description="Simulate small trades as unit arrivals.")
    replications: int = Field(default=DEFAULT_REPLICATIONS, ge=1, description="Independent replications.")
    batches: int = Field(default=DEFAULT_BATCH_NUM, ge=2, description="Batches per replication for batch-mean SEs.")

    @model_validator(mode="before")
    @classmethod
    def parse_params(cls, data: Any) -> Any:
        if isinstance(data, dict) and isinstance(data.get("params"), dict):
            model = SimModel(data.get("model"))
            params_cls = CycleModelParams if model == SimModel.CYCLE else RangeModelParams
            data = {**data, "params": params_cls(**data["params"])}
        return data

    @model_validator(mode="after")
    def check_params_type(self) -> "SimConfig":
        expected = CycleModelParams if self.model == SimModel.CYCLE else RangeModelParams
        if not isinstance(self.params, expected):
            raise ValueError(f"Invalid params: must be {expected.__name__} for model '{self.model.value}'")
        return self


class Estimate(BaseModel):
    mean: float = Field(..., description="Point estimate.")
    se: float = Field(..., description="Standard error (sample std / sqrt(n)); NaN with fewer than two batches.")
    n: int = Field(..., ge=0, description="Number of observations behind the estimate.")


class ReplicationSummary(BaseModel):
    replication: int = Field(..., description="Replication index.")
    elapsed_time: float = Field(..., description="Simulated time.")
    cycles: dict[str, int] = Field(..., description="Completed cycles or trades per pool.")
    volume: dict[str, float] = Field(..., description="Token volume per pool.")


class SimReport(BaseModel):
    model: SimModel = Field(..., description="Simulated model.")
    seed: int = Field(..., description="Master seed.")
    horizon: int = Field(..., description="Horizon per replication.")
    replications: int = Field(..., description="Number of replications.")
    regime: str = Field(..., description="Regime of the underlying equilibrium.")
    mean_cycle_duration: dict[str, Estimate] = Field(default_factory=dict, description="Cycle duration per pool.")
    volume_rate: dict[str, Estimate] = Field(default_factory=dict, description="Token volume per unit time.")
    volume_share: dict[str, Estimate] = Field(default_factory=dict, description="Share of total volume.")
    liquidity_share: dict[str, float] = Field(default_factory=dict, description="Share of liquidity at refill.")
    mean_trade_size: dict[str, Estimate] = Field(default_factory=dict, description="Mean trade size per pool.")
    trade_count: dict[str, float] = Field(default_factory=dict, description="Number of trades per pool.")
    rebalancing_events: dict[str, int] = Field(default_factory=dict, description="Depleting news events.")
    rebalancing_frequency: dict[str, Estimate] = Field(default_factory=dict, description="Rebalances per event.")
    lp_profit_per_unit: dict[str, Estimate] = Field(default_factory=dict, description="LP profit per unit L.")
    lp_net_profit_per_unit: dict[str, Estimate] = Field(
        default_factory=dict, description="LP profit per unit L after rebalancing gas."
    )
    gft_realized: Estimate | None = Field(default=None, description="Gains from trade per private-value event.")
    conservation_error: float = Field(default=0.0, description="Tokens sold by LPs minus tokens bought.")
    per_replication: list[ReplicationSummary] = Field(default_factory=list, description="Per-replication series.")

    @field_validator("liquidity_share")
    @classmethod
    def check_shares(cls, value: dict[str, float]) -> dict[str, float]:
        for side, share in value.items():
            if not 0.0 <= share <= 1.0:
                raise ValueError(f"Invalid liquidity_share[{side}]: must lie in [0, 1] (got {share})")
        return value


class PredictionStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not_applicable"
    INSUFFICIENT = "insufficient_samples"


class PredictionCheck(BaseModel):
    name: str = Field(..., description="Prediction under test.")
    status: PredictionStatus = Field(..., description="Outcome of the significance gate.")
    statistic: float | None = Field(default=None, description="Difference being tested.")
    se: float | None = Field(default=None, description="Standard error of the difference.")
    detail: str = Field(default="", description="Human-readable explanation.")


class PredictionLedger(BaseModel):
    checks: list[PredictionCheck] = Field(default_factory=list, description="Evaluated predictions.")

    @property
    def failed(self) -> list[PredictionCheck]:
        return [c for c in self.checks if c.status == PredictionStatus.FAIL]

    def status_of(self, name: str) -> PredictionStatus:
        for check in self.checks:
            if check.name == name:
                return check.status
        raise ValueError(f"Invalid prediction name: {name}")


class EventKind(str, Enum):
    SWAP = "Swap"
    MINT = "Mint"
    BURN = "Burn"


class MarketEvent(BaseModel):
    """One swap, mint or burn against a pool.

    Swap amounts are pool-side deltas. Mint and burn amounts are the nonnegative quantities deposited or withdrawn.
    """

    block: int = Field(..., ge=0, description="Block ordinal.")
    position: int = Field(..., ge=0, description="Position of the transaction within the block.")
    tx_hash: str = Field(..., description="Transaction identifier.")
    timestamp: int = Field(..., description="Unix timestamp in seconds.")
    pool_id: str = Field(..., description="Pool identifier.")
    fee_bps: int = Field(..., ge=0, description="Pool fee in basis points.")
    kind: EventKind = Field(..., description="Swap, Mint or Burn.")
    wallet: str = Field(..., description="Wallet that sent the transaction.")
    amount0: float = Field(..., description="Token leg.")
    amount1: float = Field(..., description="Numeraire leg.")
    tick_lower: int | None = Field(default=None, description="Lower tick of a mint or burn.")
    tick_upper: int | None = Field(default=None, description="Upper tick of a mint or burn.")
    gas_bid: float = Field(default=0.0, ge=0.0, description="Gas price bid.")
    price_after: float | None = Field(default=None, description="Pool price right after a swap, when known.")
    pair_id: str | None = Field(default=None, description="Pair grouping of pools.")

    @model_validator(mode="after")
    def check_kind(self) -> "MarketEvent":
        if self.kind == EventKind.SWAP:
            if not self.amount0 * self.amount1 < 0:
                raise ValueError(
                    f"Invalid amount0/amount1: swap must satisfy amount0*amount1 < 0 "
                    f"(got {self.amount0}, {self.amount1}; tx {self.tx_hash})"
                )
        else:
            if self.tick_lower is None or self.tick_upper is None or not self.tick_lower < self.tick_upper:
                raise ValueError(
                    f"Invalid tick_lower/tick_upper: {self.kind.value} must satisfy tick_lower < tick_upper "
                    f"(got {self.tick_lower}, {self.tick_upper}; tx {self.tx_hash})"
                )
        return self


class PanelRow(BaseModel):
    pool_id: str = Field(..., description="Pool identifier.")
    day: str = Field(..., description="UTC day (YYYY-MM-DD).")
    tvl_end: float = Field(..., description="End-of-day marked value of pool reserves.")
    volume: float = Field(..., ge=0.0, description="Numeraire volume.")
    trade_count: int = Field(..., ge=0, description="Number of swaps.")
    median_trade: float | None = Field(default=None, description="Median numeraire trade size.")
    median_mint: float | None = Field(default=None, description="Median mint value excluding JIT mints.")
    lp_wallets: int = Field(..., ge=0, description="Distinct wallets minting or burning.")
    liquidity_share: float | None = Field(default=None, ge=0.0, le=1.0, description="TVL share in the pair.")
    volume_share: float | None = Field(default=None, ge=0.0, le=1.0, description="Volume share in the pair.")
    lvr_1h: float | None = Field(default=None, description="LVR against the lagged benchmark, bps of TVL.")
    lvr_instant: float | None = Field(default=None, description="LVR against the post-swap price, bps of TVL.")
    il_5pct: float | None = Field(default=None, description="Impermanent loss of a 5% symmetric position, bps.")
    liq_yield: float | None = Field(default=None, description="Fee revenue over lagged TVL, bps.")
    volatility: float | None = Field(default=None, description="Range-based volatility.")
    flags: list[str] = Field(default_factory=list, description="Data-quality flags.")


class RouteResult(BaseModel):
    trade_size: float = Field(..., ge=0.0, description="Requested token quantity.")
    split_low: float = Field(..., ge=0.0, le=1.0, description="Fraction routed to the low-fee pool.")
    cost_total: float = Field(..., description="Total numeraire cost.")
    cost_low: float = Field(..., description="Cost on the low-fee pool.")
    cost_high: float = Field(..., description="Cost on the high-fee pool.")
    filled: float = Field(..., ge=0.0, description="Token quantity filled.")

    @property
    def split_high(self) -> float:
        return 1.0 - self.split_low


class RunConfig(BaseModel):
    command: Literal["equilibrium", "sweep", "simulate", "analyze", "route", "pool"] = Field(
        ..., description="Subcommand."
    )
    target: str | None = Field(default=None, description="Model type or analysis kind.")
    config_path: str | None = Field(default=None, description="Input configuration file.")
    inputs: list[str] = Field(default_factory=list, description="Input files.")
    params: dict[str, Any] = Field(default_factory=dict, description="Effective parameters.")
    sweep: SweepAxis | None = Field(default=None, description="Sweep axis.")
    seed: int | None = Field(default=None, description="Master seed.")
    threads: int = Field(default=1, ge=1, description="Worker count.")
    output: str | None = Field(default=None, description="Output path.")
    output_format: Literal["csv", "json"] = Field(default="csv", description="Output format.")
