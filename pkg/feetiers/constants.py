from pathlib import Path

MODULE_HOME: Path = Path(__file__).resolve().parents[1]
MODULE_SRC: Path = Path(__file__).resolve().parents[0]
CURRENT_WORKING_DIR: Path = Path.cwd()

MODEL_TYPE_PLACEHOLDER = "--MODEL_TYPE_PLACEHOLDER--"
RANGE_MODEL_TYPE = "range"
CYCLE_MODEL_TYPE = "cycle"

CONFIG_DIRC = f"{MODULE_HOME}/configs"
BASE_CONFIG_PATH = f"{CONFIG_DIRC}/base/{MODEL_TYPE_PLACEHOLDER}/model.yaml"
SIMULATE_CONFIG_PATH = f"{CONFIG_DIRC}/base/simulate/{MODEL_TYPE_PLACEHOLDER}.yaml"
ROUTE_POOL_LOW_PATH = f"{CONFIG_DIRC}/base/route/pool_low.json"
ROUTE_POOL_HIGH_PATH = f"{CONFIG_DIRC}/base/route/pool_high.json"
EFFECTIVE_CONFIG_NAME = "effective_config.json"
DEFAULT_OUTPUT_DIRC = f"{CURRENT_WORKING_DIR}/outputs"
DEFAULT_ROUTE_SIZES = "1,10,100"

# tick arithmetic
TICK_BASE = 1.0001
FEE_TIER_TICK_SPACING: dict[int, int] = {1: 1, 5: 10, 30: 60, 100: 200}
TICK_INDEX_ROUNDING_TOL = 1e-9
DEPTH_EXHAUSTION_RTOL = 1e-12

# root finding and optimisation
DEFAULT_BISECTION_XTOL = 1e-12
DEFAULT_BISECTION_MAX_ITER = 500
DEFAULT_BRACKET_MAX_EXPANSION = 200
CYCLE_BRACKET_EPS = 1e-9
DEFAULT_MINIMIZE_XATOL = 1e-12
ROUTER_SPLIT_XATOL = 1e-6
DEFAULT_BRUTE_FORCE_POINTS = 1001
DEFAULT_QUAD_EPSREL = 1e-12
FINITE_DIFFERENCE_STEP = 1e-6
LAMBERT_MATCH_RTOL = 1e-6

# simulation
DEFAULT_SIM_HORIZON = 100_000
DEFAULT_SIM_SEED = 20240601
DEFAULT_REPLICATIONS = 1
DEFAULT_BATCH_NUM = 20
SIGNIFICANCE_SE_GATE = 4.0
MIN_SAMPLES_FOR_CHECK = 30

# analytics
DEFAULT_N_LOWEST_GAS = 1000
WINSOR_LOWER_QUANTILE = 0.005
WINSOR_UPPER_QUANTILE = 0.995
LAGGED_BENCHMARK_SECONDS = 3600
BENCHMARK_STALENESS_SECONDS = 900
IL_DEFAULT_ALPHA = 1.05
IL_DEFAULT_HORIZON_SECONDS = 3600
SECONDS_PER_DAY = 86400
SECONDS_PER_HOUR = 3600
BASIS_POINTS = 10_000.0
BALANCE_NEGATIVE_TOL = 1e-9
EVENT_CSV_COLUMNS = [
    "block",
    "position",
    "tx_hash",
    "timestamp",
    "pool_id",
    "fee_bps",
    "kind",
    "wallet",
    "amount0",
    "amount1",
    "tick_lower",
    "tick_upper",
    "gas_bid",
]

# output
FLOAT_SIG_DIGITS = 12
CSV_FLOAT_FORMAT = "%.12g"
