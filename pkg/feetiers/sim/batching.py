import math

import numpy as np

from feetiers.schema import Estimate


def batch_ratios(numerator: np.ndarray, denominator: np.ndarray, batches: int) -> list[float]:
    """Ratio of sums over each of ``batches`` contiguous blocks; blocks with an empty denominator are dropped."""
    ratios = []
    for num, den in zip(np.array_split(numerator, batches), np.array_split(denominator, batches)):
        total = math.fsum(den)
        if total > 0:
            ratios.append(math.fsum(num) / total)
    return ratios


def estimate(values: list[float]) -> Estimate:
    """Mean with SE = sample std / sqrt(n) over independent batch statistics."""
    n = len(values)
    if n == 0:
        return Estimate(mean=math.nan, se=math.nan, n=0)
    mean = math.fsum(values) / n
    if n == 1:
        return Estimate(mean=mean, se=math.nan, n=1)
    return Estimate(mean=mean, se=float(np.std(values, ddof=1)) / math.sqrt(n), n=n)


def difference_se(a: Estimate, b: Estimate | None = None) -> float:
    se_b = 0.0 if b is None else b.se
    return math.sqrt(a.se**2 + se_b**2)
