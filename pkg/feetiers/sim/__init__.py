from feetiers.sim.predictions import prediction_checks
from feetiers.sim.simulate import replication_rngs, run_simulation, simulate

__all__ = ["prediction_checks", "replication_rngs", "run_simulation", "simulate"]
