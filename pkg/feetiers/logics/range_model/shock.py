import math

import numpy as np

from feetiers.exceptions import ParameterError


def _check_delta(Delta: float) -> None:
    if not Delta > 1.0:
        raise ParameterError("Delta", "Delta > 1", Delta)


def shock_pdf(delta: float, Delta: float) -> float:
    """Continuous part of the shock density, 1/(2*Delta*sqrt(1+delta)) on [0, Delta**2 - 1]."""
    _check_delta(Delta)
    if delta < 0.0 or delta > Delta**2 - 1.0:
        return 0.0
    return 1.0 / (2.0 * Delta * math.sqrt(1.0 + delta))


def shock_atom(Delta: float) -> float:
    """Probability that no tradeable innovation arrives (delta = 0)."""
    _check_delta(Delta)
    return 1.0 / Delta


def shock_mean(Delta: float) -> float:
    """E[delta] = integral of delta * pdf, (Delta**3 - 3*Delta + 2) / (3*Delta)."""
    _check_delta(Delta)
    return (Delta**3 - 3.0 * Delta + 2.0) / (3.0 * Delta)


def shock_sample(rng: np.random.Generator, Delta: float, size: int | None = None) -> np.ndarray | float:
    """Draw shocks with sqrt(1 + delta) = max(U, 1), U uniform on [0, Delta]."""
    _check_delta(Delta)
    root = np.maximum(rng.uniform(0.0, Delta, size=size), 1.0)
    draws = root * root - 1.0
    return float(draws) if size is None else draws
